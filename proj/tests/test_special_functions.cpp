#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "comet/special_functions.hpp"

using namespace comet;

namespace {

// Independent oracle: the power-series route to the base-2 binary entropy,
// h2(x) = 1 - (1/(2 ln 2)) sum_k (1-2x)^{2k} / (k (2k-1)).
double h2_series(double x) {
  const double u = 1.0 - 2.0 * x;
  double sum = 0.0, pw = u * u;
  for (int k = 1; k <= 4000; ++k) {
    sum += pw / (k * (2.0 * k - 1.0));
    pw *= u * u;
    if (pw < 1e-18) break;
  }
  return 1.0 - sum / (2.0 * std::log(2.0));
}

// Independent oracle: Q by trapezoid integration of the normal density.
double q_by_integration(double x) {
  const double hi = 12.0;
  const int steps = 400000;
  const double h = (hi - x) / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = x + h * i;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    acc += w * std::exp(-0.5 * t * t);
  }
  return acc * h / std::sqrt(2.0 * 3.14159265358979323846);
}

}  // namespace

TEST_CASE("binary entropy pinned values") {
  CHECK(binary_entropy(0.5, LogBase::two) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(binary_entropy(0.0, LogBase::two) == 0.0);
  CHECK(binary_entropy(1.0, LogBase::two) == 0.0);
  CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.1), std::domain_error);
}

TEST_CASE("binary entropy agrees with the series oracle") {
  for (double x : {0.01, 0.091464, 0.2, 0.33, 0.499, 0.5, 0.77}) {
    CHECK(binary_entropy(x, LogBase::two) ==
          doctest::Approx(h2_series(x)).epsilon(1e-10));
  }
}

TEST_CASE("binary entropy is concave on sampled pairs") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(gen), y = u(gen);
    const double mid = binary_entropy(0.5 * (x + y));
    CHECK(mid >= 0.5 * (binary_entropy(x) + binary_entropy(y)) - 1e-12);
  }
}

TEST_CASE("inverse binary entropy") {
  CHECK(binary_entropy_inv(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(binary_entropy_inv(0.0) == 0.0);
  for (double y : {0.1, 0.25, 0.5, 0.9, 0.999}) {
    CHECK(binary_entropy(binary_entropy_inv(y), LogBase::two) ==
          doctest::Approx(y).epsilon(1e-10));
  }
}

TEST_CASE("binary divergence conventions and identities") {
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double p = u(gen);
    CHECK(binary_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-14));
    // d(p || 1/2) = ln 2 (1 - h2(p))
    CHECK(binary_divergence(p, 0.5) ==
          doctest::Approx(std::log(2.0) *
                          (1.0 - binary_entropy(p, LogBase::two)))
              .epsilon(1e-12));
  }
  const long double exact = 0.3L * std::log(0.3L / 0.7L) + 0.7L * std::log(0.7L / 0.3L);
  CHECK(binary_divergence(0.3, 0.7) ==
        doctest::Approx(static_cast<double>(exact)).epsilon(1e-15));
  CHECK(binary_divergence(0.3, 0.0) == kInf);
  CHECK(binary_divergence(0.3, 1.0) == kInf);
  CHECK(binary_divergence(0.0, 0.0) == 0.0);
  CHECK(binary_divergence(1.0, 1.0) == 0.0);
}

TEST_CASE("binary divergence dominates the quadratic lower bound") {
  for (int ip = 0; ip <= 50; ++ip) {
    for (int iq = 1; iq < 50; ++iq) {
      const double p = ip / 50.0, q = iq / 50.0;
      CHECK(binary_divergence(p, q) >= 2.0 * (p - q) * (p - q) - 1e-12);
    }
  }
}

TEST_CASE("gaussian tail value and envelope") {
  CHECK(gaussian_q(0.0).value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(gaussian_q(1.6449).value == doctest::Approx(0.05).epsilon(2e-3));
  CHECK(gaussian_q(1.6449).value == doctest::Approx(q_by_integration(1.6449)).epsilon(1e-9));
  for (double x = 0.01; x <= 10.0; x += 0.07) {
    const auto t = gaussian_q(x);
    CHECK(t.lower < t.value);
    CHECK(t.value < t.upper);
  }
  const auto neg = gaussian_q(-1.0);
  CHECK(neg.lower == 0.0);
  CHECK(neg.upper == kInf);
}

TEST_CASE("log gaussian tail is stable across regimes") {
  for (double x : {0.5, 3.0, 10.0, 29.9, 30.1, 50.0, 200.0}) {
    const double lq = log_gaussian_q(x);
    CHECK(std::isfinite(lq));
    if (x < 35.0) {
      CHECK(lq == doctest::Approx(std::log(gaussian_q(x).value)).epsilon(1e-9));
    }
  }
  // The asymptotic branch agrees with the erfc branch where both apply.
  for (double x : {28.0, 30.0, 33.0, 36.0}) {
    const double ix2 = 1.0 / (x * x);
    const double series =
        1.0 + ix2 * (-1.0 + ix2 * (3.0 + ix2 * (-15.0 + ix2 * 105.0)));
    const double asym = -0.5 * x * x -
                        std::log(x * std::sqrt(2.0 * 3.14159265358979323846)) +
                        std::log(series);
    CHECK(log_gaussian_q(x) == doctest::Approx(asym).epsilon(1e-10));
  }
}

TEST_CASE("refined-Pinsker coefficient") {
  CHECK(ow_phi(0.5) == 2.0);
  CHECK(ow_phi(0.1) == doctest::Approx(std::log(9.0) / 0.8).epsilon(1e-14));
  CHECK(ow_phi(0.5 - 1e-9) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ow_phi(0.0) == kInf);
  CHECK_THROWS_AS(ow_phi(0.6), std::domain_error);
  double prev = kInf;
  for (double p = 0.01; p <= 0.5; p += 0.01) {
    const double v = ow_phi(p);
    CHECK(v <= prev + 1e-12);
    CHECK(v >= 2.0 - 1e-12);
    prev = v;
  }
}

TEST_CASE("log cosh") {
  CHECK(log_cosh(0.0) == doctest::Approx(0.0));
  CHECK(log_cosh(1.0) == doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-14));
  CHECK(log_cosh(800.0) == doctest::Approx(800.0 - std::log(2.0)).epsilon(1e-14));
}
