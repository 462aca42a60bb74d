// Exact finite-space and quadrature-based verification of the entropy-method
// identities and logarithmic Sobolev inequalities.
#ifndef COMET_ENTROPY_METHOD_HPP
#define COMET_ENTROPY_METHOD_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "comet/density.hpp"
#include "comet/info_measures.hpp"
#include "comet/product_space.hpp"

namespace comet {

// Exponential family mu^{(t f)} generated by tilting a finite base measure;
// all cumulant quantities are exact finite sums.
class TiltedFamily {
 public:
  TiltedFamily(FiniteDistribution base, std::vector<double> f);

  const FiniteDistribution& base() const { return base_; }
  std::span<const double> f() const { return f_; }

  double lmgf(double t) const;        // Lambda(t) = ln E[e^{t f}]
  double lmgf_prime(double t) const;  // tilted mean of f
  double variance(double t) const;    // tilted variance of f
  double divergence(double t) const;  // D(mu^{(t f)} || mu) = t Lambda' - Lambda
  FiniteDistribution tilted(double t) const;

 private:
  FiniteDistribution base_;
  std::vector<double> f_;
};

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool quadrature_converged = true;
};

/// Lambda(lambda) against lambda * int_0^lambda D(P^{(t f)}||P)/t^2 dt.
IdentityCheck herbst_identity_check(const TiltedFamily& family, double lambda,
                                    double tol = 1e-8);

/// D(mu^{(lambda f)}||mu) against the double variance integral
/// int_0^lambda int_t^lambda var^{(s f)}[f] ds dt.
IdentityCheck maurer_identity_check(const TiltedFamily& family, double lambda,
                                    double tol = 1e-8);

struct PairCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// D(Q||P) <= sum of conditional divergences for a product P.
PairCheck tensorization_check(const ProductSpace& sp,
                              const std::vector<std::vector<double>>& p_marginals,
                              const std::vector<double>& Q);

/// Hamming-cube log-Sobolev check for i.i.d. Bernoulli(p) coordinates:
/// D(P^{(f)}||P) <= const(p, c) * E^{(f)}[(Gamma f)^2], with the bit-flip
/// energy Gamma f(x)^2 = sum_i (f(x + e_i) - f(x))^2. For p = 1/2 the
/// constant is 1/8; otherwise p q ((c-1)e^c + 1)/c^2 with c the (supplied or
/// exhaustively computed) bound on single-bit-flip changes of f.
PairCheck discrete_lsi_check(int n, double p, std::span<const double> f,
                             std::optional<double> c_bound = std::nullopt);

/// var_P[f] <= c * E_P[(Gamma f)^2] with the same bit-flip energy; follows
/// from the log-Sobolev constant c in the small-tilt limit.
PairCheck poincare_check(int n, double p, std::span<const double> f, double c);

/// Poisson (or compound-Poisson when a jump law mu on {1,2,...} is given)
/// log-Sobolev check on the truncated support.
PairCheck poisson_lsi_check(double lambda, std::span<const double> f, int trunc,
                            const std::vector<double>* compound_mu = nullptr,
                            double slack = 1e-8);

struct EfronSteinResult {
  double var = 0.0;
  double ess_sum = 0.0;
  bool pass = false;
};

EfronSteinResult efron_stein_check(const ProductSpace& sp,
                                   const std::vector<std::vector<double>>& p_marginals,
                                   const std::vector<double>& f);

struct MassartComparison {
  double divergence = 0.0;    // D(P^{(t f)} || P), exact
  double maurer_rhs = 0.0;    // tensorized per-coordinate divergence sum
  double massart_rhs = 0.0;   // exp(-Lambda) sum_i E[e^{tU} psi(-t(U - U^(i)))]
  double maurer_tail_coeff = 0.0;   // 2 / sum c_i^2
  double massart_tail_coeff = 0.0;  // 1 / (4 sum c_i^2)
  bool pass = false;
  std::string tighter;
};

MassartComparison massart_comparison(const ProductSpace& sp,
                                     const std::vector<std::vector<double>>& p_marginals,
                                     const std::vector<double>& f, double t);

struct SnrCheck {
  double s = 0.0;
  double mmse = 0.0;
  double lmmse = 0.0;
  double van_trees = 0.0;  // 1/(J + s)
};

struct GaussianSuiteReport {
  double entropy = 0.0;
  double entropy_power = 0.0;
  double fisher = 0.0;
  double stam_product = 0.0;  // N * J
  double kl_to_gaussian = 0.0;
  double rel_fisher = 0.0;
  double w2 = 0.0;
  std::vector<SnrCheck> snr;
  bool stam_ok = false;
  bool van_trees_ok = false;
  bool mmse_le_lmmse_ok = false;
  bool hwi_ok = false;
};

GaussianSuiteReport gaussian_quadrature_suite(const DensityGrid& density,
                                              std::span<const double> snr_grid);

/// Output density of the Gaussian smoothing channel with parameter t
/// (contraction toward the standard Gaussian), on the same grid.
DensityGrid ou_evolve(const DensityGrid& density, double t);

struct RenyiContractionCheck {
  double alpha = 0.0, beta = 0.0, t = 0.0;
  double lhs = 0.0, rhs = 0.0;
  bool pass = false;
};

struct OuReport {
  double t = 0.0;
  double kl_before = 0.0;
  double kl_after = 0.0;
  double contraction_rhs = 0.0;  // e^{-2t} kl_before
  bool kl_ok = false;
  std::vector<RenyiContractionCheck> renyi;
  bool renyi_ok = false;
};

OuReport ou_contraction_check(const DensityGrid& density, double t,
                              std::span<const std::pair<double, double>> alpha_beta);

}  // namespace comet

#endif
