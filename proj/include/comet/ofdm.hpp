// Crest factor of M-PSK OFDM symbols on an oversampled FFT grid, the four
// concentration bounds around it, and the Monte Carlo validation report.
#ifndef COMET_OFDM_HPP
#define COMET_OFDM_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace comet {

struct OfdmSpec {
  int n = 64;           // subcarriers
  int psk_order = 4;    // M
  int oversample = 16;  // time-grid oversampling factor
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
};

/// Peak amplitude of the unit-power OFDM symbol built from the unit-modulus
/// symbol vector, evaluated on a zero-padded FFT grid of at least
/// oversample * n points. Rejects inputs that are not unit modulus.
double crest_factor(std::span<const std::complex<double>> x, int oversample);

struct CfBounds {
  double azuma = 0.0;             // 2 exp(-alpha^2/8)
  double refined = 0.0;           // exact finite-n small-deviation bound
  double talagrand_median = 0.0;  // 4 exp(-alpha^2/16), around a median
  double mcdiarmid = 0.0;         // 2 exp(-alpha^2/2)
};

CfBounds cf_bounds(int n, double alpha);

struct CfAlphaRow {
  double alpha = 0.0;
  double empirical_mean_exceed = 0.0;    // P(|CF - mean| >= alpha)
  double empirical_median_exceed = 0.0;  // P(|CF - median| >= alpha)
  double wilson_low_mean = 0.0;          // 99% Wilson lower edge
  double wilson_low_median = 0.0;
  CfBounds bounds;
  bool dominated = true;
};

struct CfMonteCarloReport {
  OfdmSpec spec;
  double mean = 0.0;
  double median = 0.0;
  double mean_power_error = 0.0;  // max |grid power - 1| over trials
  double increment_max = 0.0;     // max |CF - CF(resampled coordinate)|
  double increment_limit = 0.0;   // 2 / sqrt(n)
  double cond_var_estimate = 0.0;
  double cond_var_limit = 0.0;    // 2 / n
  double cond_var_rel_stderr = 0.0;
  std::vector<CfAlphaRow> rows;
  std::vector<double> cdf_grid;   // CF values at percentile grid
  bool dominance_ok = true;
  bool increments_ok = true;
};

CfMonteCarloReport cf_monte_carlo(const OfdmSpec& spec,
                                  std::span<const double> alphas,
                                  int threads = 0);

}  // namespace comet

#endif
