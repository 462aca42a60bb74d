// Blow-up sets on product spaces, concentration from T1 inequalities, and
// the converse concentration exponent.
#ifndef COMET_TRANSPORT_HPP
#define COMET_TRANSPORT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "comet/info_measures.hpp"
#include "comet/product_space.hpp"

namespace comet {

// Explicit subset of a small product space with independent coordinates.
struct BlowupSpec {
  std::vector<std::vector<double>> coord_pmf;  // one pmf per coordinate
  std::vector<std::uint32_t> set;              // member state indices

  static BlowupSpec bernoulli_cube(int n, double p,
                                   std::vector<std::uint32_t> set);
};

struct BlowupMasses {
  double mass_A = 0.0;
  double mass_Ar = 0.0;
};

/// Exact masses of A and of its Hamming blowup {x : d(x, A) <= r}
/// (closed-ball convention for integer radii), by breadth-first expansion.
BlowupMasses blowup(const BlowupSpec& spec, int r);

struct ConcentrationProfile {
  double K = 1.0;
  double kappa = 0.0;
  double r0 = 0.0;
};

struct BlowupBound {
  double value = 0.0;
  bool vacuous = false;  // r at or below the mass-dependent threshold
};

/// 1 - exp(-(2/n)(r - sqrt((n/2) ln(1/mass_A)))^2) for r above threshold.
BlowupBound blowup_bound(double mass_A, int n, double r);

struct MartonBound {
  ConcentrationProfile profile;
  double value = 0.0;
};

/// Concentration profile implied by a T1(c) inequality:
/// K = 1, kappa = 1/(2c), r0 = sqrt(2 c ln 2).
MartonBound marton_bound(double c, double r);

struct ConcentrationExponent {
  double upper = 0.0;                // closed-form upper bound on R_c
  std::optional<double> exact_tail;  // ln p, available for delta >= 1-p
  double brute = 0.0;                // grid + coordinate-descent optimum
};

/// Concentration exponent of the Bernoulli(p) product family at blowup
/// fraction delta; the brute value maximizes D(P_Y||P) + H(Y|X) over 2x2
/// joints with first marginal Bernoulli(p) and Pr(X != Y) <= delta.
ConcentrationExponent concentration_exponent_bernoulli(double delta, double p);

struct BobkovGotzeCheck {
  double c = 0.0;             // transport constant 1/(2 phi(pi_mu)) on Hamming
  double worst_margin = 0.0;  // min over candidates of c t^2/2 - ln E[e^{t fbar}]
  bool pass = false;
};

/// Subgaussian consequence of the T1 inequality on a finite Hamming space:
/// ln E[e^{t (f - E f)}] <= c t^2 / 2 for 1-Lipschitz f, with the exact
/// constant from the distribution-dependent Pinsker refinement. The sup
/// over all 1-Lipschitz functions is probed by a candidate family only
/// (random range-1 functions plus the indicator extreme points).
BobkovGotzeCheck bobkov_gotze_check(const FiniteDistribution& mu,
                                    int candidates, std::uint64_t seed);

struct RateFunctionResult {
  double value = 0.0;
  bool converged = true;
};

/// Single-letter rate function: inf over kernels with first marginal P and
/// E[d] <= delta of I(X;Y) + E[ln M(Y)]. The distortion constraint is
/// scalarized with a multiplier sweep plus golden refinement; d defaults to
/// the Hamming cost on the label set.
RateFunctionResult rate_function(const FiniteDistribution& P,
                                 std::span<const double> mass, double delta,
                                 const std::vector<double>* cost = nullptr);

}  // namespace comet

#endif
