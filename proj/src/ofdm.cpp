#include "comet/ofdm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "comet/rng.hpp"
#include "comet/simulate.hpp"
#include "comet/tail_bounds.hpp"

namespace comet {

namespace {
constexpr double kPi = 3.1415926535897932384626434;

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 FFT with sign +1 (synthesis direction), evaluating
// s_k = sum_i x_i exp(+j 2 pi i k / N). Twiddles and the bit-reversal
// permutation are tabulated once per size, since trials reuse the plan.
struct FftPlan {
  size_t n;
  std::vector<size_t> reversed;
  std::vector<std::complex<double>> twiddle;  // n/2 roots of unity

  explicit FftPlan(size_t n_) : n(n_), reversed(n_), twiddle(n_ / 2) {
    size_t j = 0;
    for (size_t i = 0; i < n; ++i) {
      reversed[i] = j;
      size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
    }
    for (size_t k = 0; k < n / 2; ++k) {
      const double ang = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
      twiddle[k] = {std::cos(ang), std::sin(ang)};
    }
  }

  void run(std::vector<std::complex<double>>& a) const {
    for (size_t i = 0; i < n; ++i) {
      if (i < reversed[i]) std::swap(a[i], a[reversed[i]]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
      const size_t stride = n / len;
      const size_t half = len / 2;
      for (size_t i = 0; i < n; i += len) {
        for (size_t j = 0; j < half; ++j) {
          const auto w = twiddle[j * stride];
          const auto u = a[i + j];
          const auto v = a[i + j + half] * w;
          a[i + j] = u + v;
          a[i + j + half] = u - v;
        }
      }
    }
  }
};

struct CfEvaluator {
  size_t n;
  size_t grid;
  FftPlan plan;
  mutable std::vector<std::complex<double>> buf;

  CfEvaluator(size_t n_, int oversample)
      : n(n_), grid(next_pow2(n_ * static_cast<size_t>(oversample))),
        plan(grid), buf(grid) {}

  // Returns the peak magnitude; mean_power receives the grid-average power
  // (equal to 1 for unit-modulus symbols, by orthogonality).
  double peak(std::span<const std::complex<double>> x, double* mean_power) const {
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    std::copy(x.begin(), x.end(), buf.begin());
    plan.run(buf);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    double peak2 = 0.0, power = 0.0;
    for (const auto& s : buf) {
      const double m2 = std::norm(s);
      peak2 = std::max(peak2, m2);
      power += m2;
    }
    if (mean_power) {
      *mean_power = power / static_cast<double>(grid) * scale * scale;
    }
    return std::sqrt(peak2) * scale;
  }
};

std::complex<double> psk_point(int m_order, std::uint64_t index) {
  const double angle = (2.0 * static_cast<double>(index) + 1.0) * kPi /
                       static_cast<double>(m_order);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

double crest_factor(std::span<const std::complex<double>> x, int oversample) {
  if (x.empty()) throw std::invalid_argument("crest_factor: empty symbol");
  if (oversample < 4) throw std::invalid_argument("crest_factor: oversample < 4");
  for (const auto& s : x) {
    if (std::fabs(std::abs(s) - 1.0) > 1e-9) {
      throw std::invalid_argument("crest_factor: symbols must be unit modulus");
    }
  }
  CfEvaluator eval(x.size(), oversample);
  return eval.peak(x, nullptr);
}

CfBounds cf_bounds(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("cf_bounds: n < 1");
  if (alpha < 0.0) throw std::invalid_argument("cf_bounds: alpha < 0");
  CfBounds b;
  b.azuma = 2.0 * std::exp(-alpha * alpha / 8.0);
  // Normalized increments have jumps <= 2 and conditional variance <= 2,
  // so delta = alpha/2 and gamma = 1/2 in the small-deviation regime.
  const MartingaleSpec spec{n, 2.0, 2.0};
  b.refined = small_deviation_bound(spec, alpha).bound;
  b.talagrand_median = 4.0 * std::exp(-alpha * alpha / 16.0);
  b.mcdiarmid = 2.0 * std::exp(-alpha * alpha / 2.0);
  return b;
}

CfMonteCarloReport cf_monte_carlo(const OfdmSpec& spec,
                                  std::span<const double> alphas, int threads) {
  if (spec.n < 1 || spec.psk_order < 2 || spec.oversample < 4 || spec.trials < 1) {
    throw std::invalid_argument("cf_monte_carlo: bad spec");
  }
  const size_t n = static_cast<size_t>(spec.n);
  const std::int64_t trials = spec.trials;

  std::vector<double> cf(static_cast<size_t>(trials));
  std::vector<double> power_err(static_cast<size_t>(trials));
  // Per-trial single-coordinate resamples probe the martingale increment
  // and conditional-variance limits; a subsample keeps the cost flat.
  const std::int64_t probe_stride = std::max<std::int64_t>(1, trials / 20000);
  std::vector<double> probe_sq;
  probe_sq.assign(static_cast<size_t>((trials + probe_stride - 1) / probe_stride), 0.0);
  std::vector<double> probe_abs(probe_sq.size(), 0.0);

  parallel_trials(trials, threads, [&](std::int64_t t0, std::int64_t t1) {
    CfEvaluator eval(n, spec.oversample);
    std::vector<std::complex<double>> x(n);
    for (std::int64_t t = t0; t < t1; ++t) {
      StreamRng rng(spec.seed, static_cast<std::uint64_t>(t));
      for (size_t i = 0; i < n; ++i) {
        x[i] = psk_point(spec.psk_order, rng.below(static_cast<std::uint64_t>(spec.psk_order)));
      }
      double mean_power = 0.0;
      cf[static_cast<size_t>(t)] = eval.peak(x, &mean_power);
      power_err[static_cast<size_t>(t)] = std::fabs(mean_power - 1.0);
      if (t % probe_stride == 0) {
        const size_t i = static_cast<size_t>(rng.below(n));
        const auto saved = x[i];
        x[i] = psk_point(spec.psk_order, rng.below(static_cast<std::uint64_t>(spec.psk_order)));
        const double cf2 = eval.peak(x, nullptr);
        x[i] = saved;
        const double diff = std::fabs(cf2 - cf[static_cast<size_t>(t)]);
        probe_abs[static_cast<size_t>(t / probe_stride)] = diff;
        probe_sq[static_cast<size_t>(t / probe_stride)] = diff * diff;
      }
    }
  });

  CfMonteCarloReport rep;
  rep.spec = spec;
  rep.mean = std::accumulate(cf.begin(), cf.end(), 0.0) / static_cast<double>(trials);
  std::vector<double> sorted = cf;
  std::sort(sorted.begin(), sorted.end());
  rep.median = sorted[sorted.size() / 2];
  rep.mean_power_error = *std::max_element(power_err.begin(), power_err.end());

  rep.increment_limit = 2.0 / std::sqrt(static_cast<double>(n));
  rep.increment_max = *std::max_element(probe_abs.begin(), probe_abs.end());
  const double probes = static_cast<double>(probe_sq.size());
  const double v_mean =
      std::accumulate(probe_sq.begin(), probe_sq.end(), 0.0) / probes;
  double v_var = 0.0;
  for (double v : probe_sq) v_var += (v - v_mean) * (v - v_mean);
  v_var /= probes;
  rep.cond_var_estimate = v_mean;
  rep.cond_var_limit = 2.0 / static_cast<double>(n);
  rep.cond_var_rel_stderr =
      std::sqrt(v_var / probes) / rep.cond_var_limit;
  rep.increments_ok =
      rep.increment_max <= rep.increment_limit + 1e-9 &&
      rep.cond_var_estimate <=
          rep.cond_var_limit * (1.0 + 3.0 * rep.cond_var_rel_stderr);

  for (double alpha : alphas) {
    CfAlphaRow row;
    row.alpha = alpha;
    row.bounds = cf_bounds(spec.n, alpha);
    std::int64_t exceed_mean = 0, exceed_median = 0;
    for (double v : cf) {
      if (std::fabs(v - rep.mean) >= alpha) ++exceed_mean;
      if (std::fabs(v - rep.median) >= alpha) ++exceed_median;
    }
    row.empirical_mean_exceed =
        static_cast<double>(exceed_mean) / static_cast<double>(trials);
    row.empirical_median_exceed =
        static_cast<double>(exceed_median) / static_cast<double>(trials);
    row.wilson_low_mean = wilson_99(exceed_mean, trials).lo;
    row.wilson_low_median = wilson_99(exceed_median, trials).lo;
    row.dominated = row.wilson_low_mean <= std::min(1.0, row.bounds.azuma) &&
                    row.wilson_low_mean <= std::min(1.0, row.bounds.refined) &&
                    row.wilson_low_mean <= std::min(1.0, row.bounds.mcdiarmid) &&
                    row.wilson_low_median <=
                        std::min(1.0, row.bounds.talagrand_median);
    rep.dominance_ok = rep.dominance_ok && row.dominated;
    rep.rows.push_back(row);
  }
  for (int pct = 0; pct <= 100; pct += 5) {
    const size_t idx = std::min(sorted.size() - 1, sorted.size() * pct / 100);
    rep.cdf_grid.push_back(sorted[idx]);
  }
  return rep;
}

}  // namespace comet
