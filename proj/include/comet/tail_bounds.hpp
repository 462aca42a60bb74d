// Closed-form tail-probability and MGF bounds for martingales with bounded
// jumps and for sums of independent bounded random variables.
//
// All bounds are returned unclamped (they may exceed 1); presentation-level
// clamping is left to callers so that algebraic identities survive exactly.
#ifndef COMET_TAIL_BOUNDS_HPP
#define COMET_TAIL_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace comet {

// Martingale with n steps, |X_k - X_{k-1}| <= d a.s. and conditional
// variance at most sigma2. gamma = sigma2/d^2 must lie in (0, 1].
struct MartingaleSpec {
  std::int64_t n = 1;
  double d = 1.0;
  double sigma2 = 1.0;

  double gamma() const { return sigma2 / (d * d); }
  double delta(double alpha) const { return alpha / d; }
  void validate() const;
};

struct BoundedInterval {
  double a = 0.0;
  double b = 1.0;
  std::optional<double> mean;  // required for the Kearns-Saul part
};

// Conditional moment bounds mu_l for l = 2..m (m even) of a martingale
// difference bounded above by d; gamma(l) = mu_l / d^l.
struct MomentSequence {
  double d = 1.0;
  std::vector<double> mu;  // mu[0] = mu_2, mu[1] = mu_3, ...

  int max_order() const { return static_cast<int>(mu.size()) + 1; }
  double gamma(int l) const;  // l in [2, max_order()]
  void validate() const;
};

enum class TailSide { two_sided, upper_tail };

// 2 exp(-r^2 / (2 sum d_k^2)); returns 0 for a deterministic martingale
// (all d_k = 0) deviating by r > 0.
double azuma_bound(double r, std::span<const double> d_list);

// 2 exp(-2 r^2 / sum c_k^2) under the bounded-difference condition.
double mcdiarmid_bound(double r, std::span<const double> c_list);

struct HoeffdingKearnsSaul {
  double hoeffding = 0.0;
  double kearns_saul = 0.0;
  bool degenerate = false;  // some p_k in {0,1}: the KS sum collapsed
};

// Two-sided Hoeffding bound and its mean-position-aware sharpening with
// c_k = (1-2p_k)/(4 ln((1-p_k)/p_k)), p_k the normalized mean position.
HoeffdingKearnsSaul hoeffding_kearns_saul(double r,
                                          std::span<const BoundedInterval> iv);

// f(delta) = ln2 * (1 - h2((1-delta)/2)) for delta in [0,1], +inf beyond.
double f_delta(double delta);

// d((delta+gamma)/(1+gamma) || gamma/(1+gamma)) in nats.
double refined_exponent(double gamma, double delta);

// Variance-aware bound on P(|X_n - X_0| >= alpha n) (or the upper tail):
// (2 or 1) exp(-n d((delta+gamma)/(1+gamma) || gamma/(1+gamma))) for
// delta < 1, (gamma/(1+gamma))^n at delta = 1, and 0 for delta > 1.
double refined_bound(const MartingaleSpec& spec, double alpha,
                     TailSide side = TailSide::two_sided);

struct SmallDeviation {
  double bound = 0.0;             // exact finite-n bound at deviation alpha*sqrt(n)
  double leading_exponent = 0.0;  // delta^2 / (2 gamma)
};

// Small-deviation regime P(|X_n - X_0| >= alpha sqrt(n)).
SmallDeviation small_deviation_bound(const MartingaleSpec& spec, double alpha);

// Right side of the one-sided MGF bound for a variable with mean xbar,
// variance at most sigma2 and upper bound b. Equality is attained by the
// two-point law on {xbar - sigma2/(b-xbar), b}.
double bennett_mgf_bound(double lambda, double xbar, double b, double sigma2);

struct MgfBounds {
  double gamma_bound = 0.0;   // ((e^{-gamma t d} + gamma e^{t d})/(1+gamma))^n
  double moment_bound = 0.0;  // higher-moment refinement, m even
};

MgfBounds mgf_moment_bounds(double t, std::int64_t n,
                            const MomentSequence& moments);

struct MdpExponents {
  double azuma = 0.0;    // -alpha^2 / (2 d^2)
  double refined = 0.0;  // -alpha^2 / (2 sigma^2)
  double mdp = 0.0;      // moderate-deviations limit, equals refined
};

MdpExponents mdp_compare(double eta, double alpha, double d, double sigma2);

}  // namespace comet

#endif
