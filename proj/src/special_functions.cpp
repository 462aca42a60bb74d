#include "comet/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace comet {

namespace {
constexpr double kLn2 = 0.6931471805599453094172321;
constexpr double kSqrt2Pi = 2.5066282746310005024157653;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
}  // namespace

double binary_entropy(double x, LogBase base) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("binary_entropy: argument outside [0,1]");
  }
  const double h = -xlogx(x) - xlogx(1.0 - x);
  return base == LogBase::nat ? h : h / kLn2;
}

double binary_entropy_inv(double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw std::domain_error("binary_entropy_inv: argument outside [0,1]");
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  // h2 is strictly increasing on [0, 1/2]; bisection is bracket-safe even
  // near 0 where the derivative blows up.
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid, LogBase::two) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double binary_divergence(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("binary_divergence: arguments outside [0,1]");
  }
  double d = 0.0;
  if (p > 0.0) {
    if (q == 0.0) return kInf;
    d += p * std::log(p / q);
  }
  if (p < 1.0) {
    if (q == 1.0) return kInf;
    d += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  }
  return d;
}

GaussianTail gaussian_q(double x) {
  GaussianTail t;
  t.value = 0.5 * std::erfc(x / std::sqrt(2.0));
  if (x > 0.0) {
    const double e = std::exp(-0.5 * x * x);
    t.lower = x / (kSqrt2Pi * (1.0 + x * x)) * e;
    t.upper = e / (kSqrt2Pi * x);
  } else {
    t.lower = 0.0;
    t.upper = kInf;
  }
  return t;
}

double log_gaussian_q(double x) {
  if (x < 30.0) {
    return std::log(0.5 * std::erfc(x / std::sqrt(2.0)));
  }
  // Q(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - ...),
  // truncated where the next term is below double precision for x >= 30.
  const double ix2 = 1.0 / (x * x);
  const double series =
      1.0 + ix2 * (-1.0 + ix2 * (3.0 + ix2 * (-15.0 + ix2 * 105.0)));
  return -0.5 * x * x - std::log(x * kSqrt2Pi) + std::log(series);
}

double ow_phi(double p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::domain_error("ow_phi: argument outside [0, 1/2]");
  }
  if (p == 0.0) return kInf;
  const double u = 0.5 - p;
  if (u < 1e-3) {
    // phi(1/2 - u) = 2*atanh(2u)/(2u); the direct quotient cancels badly
    // here and can dip below the exact floor of 2.
    const double v2 = 4.0 * u * u;
    return 2.0 * (1.0 + v2 * (1.0 / 3.0 + v2 * (1.0 / 5.0 + v2 / 7.0)));
  }
  return std::log((1.0 - p) / p) / (1.0 - 2.0 * p);
}

double log_cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - kLn2;
}

}  // namespace comet
