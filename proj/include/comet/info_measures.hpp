// Divergences, total variation, Wasserstein distances, exponential tilting,
// and Pinsker-type inequalities on finite spaces.
#ifndef COMET_INFO_MEASURES_HPP
#define COMET_INFO_MEASURES_HPP

#include <span>
#include <string>
#include <vector>

namespace comet {

struct FiniteDistribution {
  std::vector<std::string> labels;
  std::vector<double> probs;

  size_t size() const { return probs.size(); }
  void validate(double tol = 1e-12) const;
  bool same_labels(const FiniteDistribution& other) const;

  static FiniteDistribution bernoulli(double p);
  static FiniteDistribution uniform(size_t k);
  // Uses labels "a0", "a1", ... and normalizes the given weights.
  static FiniteDistribution from_weights(std::span<const double> w);
};

struct FiniteMetricSpace {
  size_t k = 0;
  std::vector<double> dist;  // row-major k x k

  double d(size_t i, size_t j) const { return dist[i * k + j]; }
  void validate() const;  // symmetry, zero diagonal, triangle inequality
  static FiniteMetricSpace hamming(size_t k);
};

struct Coupling {
  size_t k = 0;
  std::vector<double> joint;  // row-major k x k; rows ~ P, columns ~ Q

  double at(size_t i, size_t j) const { return joint[i * k + j]; }
  std::vector<double> row_marginal() const;
  std::vector<double> col_marginal() const;
};

struct TiltResult {
  FiniteDistribution dist;
  double log_mgf = 0.0;  // ln E[e^{t f}]
};

/// Exponential tilt: probs_i proportional to mu_i * exp(t f_i).
TiltResult tilt(const FiniteDistribution& mu, std::span<const double> f,
                double t);

/// KL divergence sum P ln(P/Q) in nats; +infinity off-support.
double kl_divergence(const FiniteDistribution& P, const FiniteDistribution& Q);

/// Renyi divergence of order alpha > 0, alpha != 1, with the
/// dominating-measure conventions for zero masses.
double renyi_divergence(const FiniteDistribution& P,
                        const FiniteDistribution& Q, double alpha);

struct TvResult {
  double tv = 0.0;
  Coupling coupling;  // optimal coupling attaining Pr(X != Y) = tv
};

/// Total variation together with the explicit optimal Hamming coupling.
TvResult tv_and_w1_hamming(const FiniteDistribution& P,
                           const FiniteDistribution& Q);

struct WassersteinResult {
  double value = 0.0;
  Coupling coupling;
};

inline constexpr size_t kWassersteinCap = 64;

/// Exact L^p Wasserstein distance by solving the transportation linear
/// program (successive shortest augmenting paths; no approximation).
WassersteinResult wasserstein_p(const FiniteDistribution& P,
                                const FiniteDistribution& Q,
                                const FiniteMetricSpace& space, double p);

struct BalanceCoefficient {
  double value = 0.0;
  bool exact = true;  // exhaustive up to k = 20 atoms, greedy beyond
};

BalanceCoefficient balance_coefficient(const FiniteDistribution& P);

struct PinskerSuite {
  double tv = 0.0;
  double pinsker_rhs = 0.0;  // sqrt(D(Q||P)/2)
  double ow_rhs = 0.0;       // sqrt(D(Q||P)/phi(pi_P))
  double balance = 0.0;      // pi_P
  bool balance_exact = true;
};

PinskerSuite pinsker_suite(const FiniteDistribution& P,
                           const FiniteDistribution& Q);

/// Fano bound on H(X|Y) for list decoding with list size cap and alphabet
/// size |X|, in nats: h(pe) + (1-pe) ln(list_cap) + pe ln(alphabet).
double fano_list_bound(double pe, std::int64_t list_cap, std::int64_t alphabet);

}  // namespace comet

#endif
