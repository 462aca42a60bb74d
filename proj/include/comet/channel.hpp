// Binary-input AWGN closed forms, Volterra-channel martingale parameters by
// exhaustive enumeration, the two achievable-rate bounds, channel capacity,
// and output-distribution converse bounds.
#ifndef COMET_CHANNEL_HPP
#define COMET_CHANNEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "comet/info_measures.hpp"

namespace comet {

/// Random-coding achievable rate of the binary-input AWGN channel with
/// symmetric inputs: snr/4 - ln cosh(snr/4), in nats per channel use.
double biawgn_rate(double snr);

struct SeriesValue {
  double value = 0.0;
  double remainder_bound = 0.0;  // magnitude of the first omitted term
};

/// Symmetric-input mutual information of the binary-input AWGN channel via
/// its alternating series, truncated after `terms` terms; evaluated in
/// log-space to survive the exp(2i(i+1) snr) growth.
SeriesValue biawgn_capacity(double snr, int terms);

/// Magnitude of the i-th series term (i >= 1), used by the remainder checks.
double biawgn_capacity_term(double snr, int i);

struct VolterraKernel {
  int order = 1;   // L <= 3
  int memory = 0;  // q
  double h0 = 0.0;
  std::map<int, double> h1;
  std::map<std::pair<int, int>, double> h2;
  std::map<std::tuple<int, int, int>, double> h3;

  void validate() const;
  /// Output sample given the input window u[t-q..t]; window.back() is u_t
  /// and earlier taps come before it.
  double output(std::span<const double> window) const;
};

/// Deterministic part of the channel on a finite input sequence; inputs
/// before the start are treated as zero.
std::vector<double> volterra_apply(const VolterraKernel& kernel,
                                   std::span<const double> u);

struct VolterraParams {
  double D_v = 0.0;            // steady-state var([D u]_k)
  double d = 0.0;              // a.s. upper bound on the martingale jumps
  double sigma2 = 0.0;         // max conditional variance of the jumps
  std::vector<double> gamma;   // gamma[0] = gamma_2, ..., up to order m
  std::vector<double> edge_variance;  // var([D u]_k) for k = 1..q
};

inline constexpr int kVolterraMemoryCap = 4;

/// Exact enumeration of the jump bound, conditional moments and signal
/// variance for binary +-A inputs with P(+A) = alpha_plus. Enumerates all
/// 2^{2(2q+1)} relevant input combinations (cap q <= 4).
VolterraParams volterra_martingale_params(const VolterraKernel& kernel, double A,
                                          double alpha_plus, int m);

/// Third-order kernel set with memory 2 used by the rate sweeps and tests.
VolterraKernel reference_third_order_kernel();

struct AchievableRates {
  double R1 = 0.0;  // variance-only bound (closed form)
  double R2 = 0.0;  // higher-moment bound, even order m
  bool opt_ok = true;
};

AchievableRates achievable_rates(const VolterraParams& params, double sigma_nu2,
                                 int m);

/// Closed two-branch form of R1 and its independent rho-optimized route,
/// exposed separately for cross-checks.
double r1_closed_form(double D_v, double d, double gamma2, double sigma_nu2);
double r1_rho_optimized(double D_v, double d, double gamma2, double sigma_nu2);

struct ChannelMatrix {
  size_t nx = 0, ny = 0;
  std::vector<double> t;  // row-major, rows sum to 1

  double at(size_t x, size_t y) const { return t[x * ny + y]; }
  void validate(double tol = 1e-12) const;
  bool strictly_positive() const;
  static ChannelMatrix bsc(double p);
};

struct CapacityResult {
  double C = 0.0;  // nats
  FiniteDistribution caod;
  FiniteDistribution input;
  bool converged = true;
  int iterations = 0;
};

/// Channel capacity and capacity-achieving output distribution by
/// alternating maximization to the requested tolerance.
CapacityResult dmc_capacity(const ChannelMatrix& T, double tol = 1e-10,
                            int max_iters = 200000);

/// 2 max_x max_{y,y'} |ln T(y|x)/T(y'|x)|; +infinity with zero entries.
double channel_span_constant(const ChannelMatrix& T);

/// a = c(T) sqrt(ln(1/(1-2 eps)) / 2), the sqrt(n) coefficient in the
/// output-distribution converse for codes with maximal error eps < 1/2.
double good_code_constant(const ChannelMatrix& T, double eps);

struct ConverseBounds {
  std::optional<double> pv1;  // needs strictly positive T and eps < 1/2
  double pv2 = 0.0;
  double cT = 0.0;
};

/// Upper bounds on D(P_{Y^n} || P*_{Y^n}) for an (n, M, eps) code with
/// deterministic encoding and maximal error criterion.
ConverseBounds converse_output_bounds(std::int64_t n, double ln_M, double eps,
                                      const ChannelMatrix& T);

}  // namespace comet

#endif
