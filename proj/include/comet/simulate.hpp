// Monte Carlo engines for the martingale examples and the empirical
// validation that the analytic bounds dominate observed tails.
#ifndef COMET_SIMULATE_HPP
#define COMET_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace comet {

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// 99% Wilson score interval for a binomial proportion.
WilsonInterval wilson_99(std::int64_t count, std::int64_t trials);

/// Runs body(t0, t1) over disjoint trial ranges on worker threads.
/// threads <= 0 selects the hardware concurrency.
void parallel_trials(std::int64_t trials, int threads,
                     const std::function<void(std::int64_t, std::int64_t)>& body);

struct TailRow {
  double x = 0.0;              // per-step deviation threshold
  double upper_empirical = 0.0;   // P(X_n >= n x)
  double two_sided_empirical = 0.0;
  double upper_wilson_lo = 0.0;
  double two_sided_wilson_lo = 0.0;
  double azuma_upper = 0.0;    // exp(-n x^2 / (2 d^2))
  double refined_upper = 0.0;  // one-sided variance-aware bound
};

struct BernoulliMartingaleTable {
  std::int64_t n = 0;
  double d = 0.0;
  double eps = 0.0;
  std::int64_t trials = 0;
  std::vector<TailRow> rows;
};

/// Martingale with i.i.d. increments +d w.p. eps and -eps d/(1-eps)
/// otherwise (eps = 1/2 gives symmetric +-d steps). Empirical tails on the
/// x grid are paired with the Azuma and variance-aware bounds.
BernoulliMartingaleTable simulate_bernoulli_martingale(std::int64_t n, double d,
                                                       double eps,
                                                       std::int64_t trials,
                                                       std::uint64_t seed,
                                                       std::span<const double> xs,
                                                       int threads = 0);

struct DominanceRow {
  std::string quantity;
  double threshold = 0.0;
  double empirical = 0.0;
  double wilson_lo = 0.0;
  double bound = 0.0;
  bool pass = true;
};

struct ScenarioResult {
  std::string name;
  std::vector<DominanceRow> rows;
  bool pass = true;
};

struct DominanceConfig {
  std::int64_t trials = 100000;
  std::uint64_t seed = 7;
  int threads = 0;
  bool include_ofdm = true;
  std::vector<int> ofdm_sizes = {64, 256};
  std::vector<double> alphas = {0.5, 1.0, 1.5, 2.0, 3.0};
};

struct DominanceReport {
  std::vector<ScenarioResult> scenarios;
  bool all_pass = true;
};

/// Registered analytic-vs-empirical comparisons: the two martingale
/// examples, Hoeffding/Kearns-Saul sums with asymmetric means, McDiarmid on
/// the normalized Hamming weight against the exact binomial tail, and the
/// OFDM crest factor.
DominanceReport bound_dominance_suite(const DominanceConfig& config);

/// Exact P(Bin(n, p) >= k), evaluated through log-space binomial terms.
double binomial_upper_tail(std::int64_t n, double p, std::int64_t k);

}  // namespace comet

#endif
