// Scalar special functions shared by every bound: binary entropy and its
// inverse, the binary divergence, the Gaussian tail Q with its exponential
// envelope, and the refined-Pinsker coefficient phi.
#ifndef COMET_SPECIAL_FUNCTIONS_HPP
#define COMET_SPECIAL_FUNCTIONS_HPP

#include <limits>

namespace comet {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class LogBase { nat, two };

/// Binary entropy -x log x - (1-x) log(1-x) in the chosen base, with the
/// convention 0 log 0 = 0. Throws std::domain_error outside [0,1].
double binary_entropy(double x, LogBase base = LogBase::nat);

/// Inverse of the base-2 binary entropy on [0, 1/2]: the unique x in
/// [0, 1/2] with h2(x) = y, found by bracketed bisection to 1e-12.
double binary_entropy_inv(double y);

/// Bernoulli divergence d(p||q) = p ln(p/q) + (1-p) ln((1-p)/(1-q)) in nats.
/// Returns +infinity when q is degenerate and p disagrees; never throws for
/// p, q in [0,1].
double binary_divergence(double p, double q);

struct GaussianTail {
  double value;  // Q(x), complementary standard normal CDF
  double lower;  // x/(sqrt(2*pi)(1+x^2)) * exp(-x^2/2), valid for x > 0
  double upper;  // exp(-x^2/2)/(sqrt(2*pi) x), valid for x > 0
};

/// Q(x) together with its exponential envelope. For x <= 0 the envelope is
/// undefined; lower is reported as 0 and upper as +infinity.
GaussianTail gaussian_q(double x);

/// ln Q(x), stable for large x (uses an asymptotic expansion beyond the
/// range where erfc underflows).
double log_gaussian_q(double x);

/// Coefficient phi(p) = ln((1-p)/p)/(1-2p) on [0, 1/2], continuously
/// extended to 2 at p = 1/2 and +infinity at p = 0. Throws for p > 1/2.
double ow_phi(double p);

/// ln cosh(x) without overflow for large |x|.
double log_cosh(double x);

}  // namespace comet

#endif
