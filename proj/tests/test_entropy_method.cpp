#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "comet/entropy_method.hpp"
#include "comet/special_functions.hpp"

using namespace comet;

namespace {

std::vector<double> random_f(std::mt19937& gen, size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> f(n);
  for (auto& v : f) v = u(gen);
  return f;
}

FiniteDistribution random_dist(std::mt19937& gen, size_t k) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(k);
  for (auto& v : w) v = u(gen);
  return FiniteDistribution::from_weights(w);
}

}  // namespace

TEST_CASE("tilted family cumulants are exact") {
  std::mt19937 gen(31);
  for (int i = 0; i < 100; ++i) {
    TiltedFamily fam(random_dist(gen, 4), random_f(gen, 4, -1.0, 1.0));
    const double t = 0.2 + 0.01 * i;
    // D(mu^{(t f)} || mu) = t Lambda'(t) - Lambda(t), exactly.
    const double direct = kl_divergence(fam.tilted(t), fam.base());
    CHECK(direct == doctest::Approx(fam.divergence(t)).epsilon(1e-10));
    // Lambda'(0) = E[f] by finite differences.
    const double fd = (fam.lmgf(1e-6) - fam.lmgf(-1e-6)) / 2e-6;
    CHECK(fd == doctest::Approx(fam.lmgf_prime(0.0)).epsilon(1e-6));
    CHECK(fam.lmgf(0.0) == doctest::Approx(0.0));
  }
}

TEST_CASE("herbst integral identity") {
  std::mt19937 gen(37);
  // Constant f: both sides vanish (the tilt is shift-invariant and the
  // cumulant side is centered).
  {
    TiltedFamily fam(random_dist(gen, 3), {0.7, 0.7, 0.7});
    const auto chk = herbst_identity_check(fam, 1.3);
    CHECK(chk.lhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(chk.rhs == doctest::Approx(0.0).epsilon(1e-10));
  }
  // Small-lambda limit Lambda(lambda)/lambda -> 0 for centered f.
  {
    auto base = random_dist(gen, 4);
    auto f = random_f(gen, 4, -1.0, 1.0);
    double mean = 0.0;
    for (size_t i = 0; i < 4; ++i) mean += base.probs[i] * f[i];
    for (auto& v : f) v -= mean;
    TiltedFamily fam(base, f);
    CHECK(std::fabs(fam.lmgf(1e-5) / 1e-5) < 1e-4);
  }
  for (int i = 0; i < 50; ++i) {
    TiltedFamily fam(random_dist(gen, 4), random_f(gen, 4, -1.0, 1.0));
    const auto chk = herbst_identity_check(fam, 2.0);
    CHECK(chk.quadrature_converged);
    CHECK(chk.gap < 1e-6);
  }
}

TEST_CASE("maurer double-integral identity") {
  std::mt19937 gen(41);
  // Bernoulli tilt closed form as the oracle.
  {
    const double theta = 0.3;
    TiltedFamily fam(FiniteDistribution::bernoulli(theta), {0.0, 1.0});
    const double lambda = 1.7;
    const double lmgf = std::log(1.0 - theta + theta * std::exp(lambda));
    CHECK(fam.lmgf(lambda) == doctest::Approx(lmgf).epsilon(1e-12));
    const auto chk = maurer_identity_check(fam, lambda);
    CHECK(chk.gap < 1e-6);
  }
  for (int i = 0; i < 50; ++i) {
    TiltedFamily fam(random_dist(gen, 5), random_f(gen, 5, -1.0, 1.0));
    const double lambda = 0.5 + 0.03 * i;
    const auto chk = maurer_identity_check(fam, lambda);
    CHECK(chk.quadrature_converged);
    CHECK(chk.gap < 1e-6);
    // The identity caps divergence growth by the sup of tilted variances.
    double sup_var = 0.0;
    for (double s = 0.0; s <= lambda; s += lambda / 32.0) {
      sup_var = std::max(sup_var, fam.variance(s));
    }
    CHECK(fam.divergence(lambda) <= sup_var * lambda * lambda / 2.0 + 1e-9);
  }
}

TEST_CASE("entropy tensorization over product bases") {
  ProductSpace sp({2, 2});
  std::vector<std::vector<double>> pm = {{0.4, 0.6}, {0.7, 0.3}};
  const auto P = product_measure(sp, pm);
  // Q = P: both sides zero.
  auto chk = tensorization_check(sp, pm, P);
  CHECK(chk.lhs == doctest::Approx(0.0));
  CHECK(chk.pass);
  // Product Q: chain rule is exact.
  std::vector<std::vector<double>> qm = {{0.2, 0.8}, {0.5, 0.5}};
  const auto Q = product_measure(sp, qm);
  chk = tensorization_check(sp, pm, Q);
  CHECK(chk.lhs == doctest::Approx(chk.rhs).epsilon(1e-12));
  // Correlated Q: strict inequality.
  std::vector<double> Qc = {0.45, 0.05, 0.05, 0.45};
  chk = tensorization_check(sp, pm, Qc);
  CHECK(chk.pass);
  CHECK(chk.lhs < chk.rhs - 1e-6);
}

TEST_CASE("hamming-cube log-Sobolev checks") {
  std::mt19937 gen(43);
  {
    std::vector<double> constant(1u << 5, 2.2);
    const auto chk = discrete_lsi_check(5, 0.5, constant);
    CHECK(chk.lhs == doctest::Approx(0.0));
    CHECK(chk.rhs == doctest::Approx(0.0));
    CHECK(chk.pass);
  }
  for (int i = 0; i < 200; ++i) {
    const auto f = random_f(gen, 1u << 6, -1.0, 1.0);
    CHECK(discrete_lsi_check(6, 0.5, f).pass);
  }
  // Biased coordinates with an additive test function.
  {
    std::vector<double> f(1u << 6);
    for (size_t x = 0; x < f.size(); ++x) {
      f[x] = 0.4 * static_cast<double>(__builtin_popcountll(x));
    }
    const auto chk = discrete_lsi_check(6, 0.2, f);
    CHECK(chk.pass);
  }
  for (int i = 0; i < 200; ++i) {
    const auto f = random_f(gen, 1u << 6, -1.0, 1.0);
    CHECK(discrete_lsi_check(6, 0.2, f).pass);
  }
}

TEST_CASE("poincare inequality from the log-Sobolev constant") {
  std::mt19937 gen(47);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_f(gen, 1u << 6, -1.0, 1.0);
    CHECK(poincare_check(6, 0.5, f, 0.25).pass);
  }
}

TEST_CASE("binary energy comparison") {
  // (g(0) - g(1))^2 <= (1/4) E_P[e^f (Gamma f)^2] with e^f = g^2 under the
  // symmetric two-point law.
  std::mt19937 gen(53);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double g0 = u(gen), g1 = u(gen);
    const double f0 = 2.0 * std::log(g0), f1 = 2.0 * std::log(g1);
    const double gamma2 = (f0 - f1) * (f0 - f1);
    const double rhs = 0.25 * 0.5 * (std::exp(f0) + std::exp(f1)) * gamma2;
    CHECK((g0 - g1) * (g0 - g1) <= rhs + 1e-12);
  }
}

TEST_CASE("poisson and compound-poisson log-Sobolev checks") {
  std::mt19937 gen(59);
  {
    std::vector<double> constant(61, 1.0);
    const auto chk = poisson_lsi_check(1.0, constant, 60);
    CHECK(chk.lhs == doctest::Approx(0.0));
    CHECK(chk.rhs == doctest::Approx(0.0).epsilon(1e-12));
  }
  {
    std::vector<double> f(61);
    for (size_t x = 0; x < f.size(); ++x) f[x] = std::min<double>(x, 5.0) * 0.2;
    CHECK(poisson_lsi_check(1.0, f, 60).pass);
  }
  // A single unit jump reproduces the plain Poisson law.
  {
    const std::vector<double> unit = {1.0};
    const auto f = random_f(gen, 61, -0.5, 0.5);
    const auto plain = poisson_lsi_check(1.3, f, 60);
    const auto comp = poisson_lsi_check(1.3, f, 60, &unit);
    CHECK(plain.lhs == doctest::Approx(comp.lhs).epsilon(1e-10));
    CHECK(plain.rhs == doctest::Approx(comp.rhs).epsilon(1e-10));
  }
  const std::vector<double> mu = {0.5, 0.3, 0.2};
  for (int i = 0; i < 100; ++i) {
    const auto f = random_f(gen, 91, -0.8, 0.8);
    CHECK(poisson_lsi_check(1.0, f, 90, &mu).pass);
  }
  // Refusal on insufficient truncation: Poisson(40) mass beyond 50 is fat.
  std::vector<double> f(51, 0.0);
  CHECK_THROWS_AS(poisson_lsi_check(40.0, f, 50), std::invalid_argument);
}

TEST_CASE("efron-stein-steele") {
  ProductSpace cube({2, 2, 2});
  std::vector<std::vector<double>> uniform = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}};
  // Additive function: equality.
  std::vector<double> additive(8);
  for (size_t x = 0; x < 8; ++x) {
    additive[x] = static_cast<double>(__builtin_popcountll(x));
  }
  auto chk = efron_stein_check(cube, uniform, additive);
  CHECK(chk.var == doctest::Approx(chk.ess_sum).epsilon(1e-12));
  // Parity: var 1/4 against coordinate sum 3/4.
  std::vector<double> parity(8);
  for (size_t x = 0; x < 8; ++x) parity[x] = __builtin_popcountll(x) % 2 ? 1.0 : 0.0;
  chk = efron_stein_check(cube, uniform, parity);
  CHECK(chk.var == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(chk.ess_sum == doctest::Approx(0.75).epsilon(1e-12));
  // Constant: both zero.
  std::vector<double> c(8, 3.0);
  chk = efron_stein_check(cube, uniform, c);
  CHECK(chk.var == doctest::Approx(0.0));
  CHECK(chk.ess_sum == doctest::Approx(0.0));
}

TEST_CASE("bounded-difference divergence bounds and tail constants") {
  std::mt19937 gen(61);
  ProductSpace sp({2, 2, 2, 2});
  std::vector<std::vector<double>> pm(4, {0.5, 0.5});
  {
    std::vector<double> constant(16, 1.0);
    const auto chk = massart_comparison(sp, pm, constant, 0.8);
    CHECK(chk.divergence == doctest::Approx(0.0));
    CHECK(chk.maurer_rhs == doctest::Approx(0.0));
    CHECK(chk.massart_rhs == doctest::Approx(0.0).epsilon(1e-12));
  }
  for (int i = 0; i < 100; ++i) {
    const auto f = random_f(gen, 16, -1.0, 1.0);
    const auto chk = massart_comparison(sp, pm, f, 0.7);
    CHECK(chk.pass);
    // Tail exponents: the variance route keeps the sharp constant, the
    // psi-route gives one smaller by a factor of 8.
    CHECK(chk.maurer_tail_coeff ==
          doctest::Approx(8.0 * chk.massart_tail_coeff).epsilon(1e-12));
  }
}

TEST_CASE("entropy-power and estimation-theoretic suite") {
  const std::vector<double> snr = {0.25, 1.0, 4.0};
  {
    const auto g = DensityGrid::gaussian(0.0, 1.0, -10.0, 10.0, 4001);
    const auto rep = gaussian_quadrature_suite(g, snr);
    CHECK(rep.stam_product == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(rep.entropy ==
          doctest::Approx(0.5 * std::log(2.0 * 3.14159265358979 * std::exp(1.0)))
              .epsilon(1e-8));
    for (const auto& c : rep.snr) {
      CHECK(c.mmse == doctest::Approx(1.0 / (1.0 + c.s)).epsilon(2e-3));
      CHECK(c.mmse == doctest::Approx(c.van_trees).epsilon(2e-3));
    }
    CHECK(rep.stam_ok);
    CHECK(rep.van_trees_ok);
    CHECK(rep.mmse_le_lmmse_ok);
    CHECK(rep.hwi_ok);
  }
  {
    const auto g = DensityGrid::gaussian_mixture(0.45, -1.1, 0.4, 0.9, 0.7,
                                                 -12.0, 12.0, 4001, true);
    const auto rep = gaussian_quadrature_suite(g, snr);
    CHECK(rep.stam_product > 1.0 + 1e-3);
    CHECK(rep.kl_to_gaussian < rep.w2 * std::sqrt(rep.rel_fisher) - 1e-4);
    for (const auto& c : rep.snr) {
      CHECK(c.mmse > c.van_trees + 1e-5);
      CHECK(c.mmse < c.lmmse - 1e-5);
    }
    CHECK(rep.stam_ok);
    CHECK(rep.van_trees_ok);
    CHECK(rep.mmse_le_lmmse_ok);
    CHECK(rep.hwi_ok);
    // Quadratic transport inequality of the standard Gaussian, through the
    // quantile coupling: W2(P, G) <= sqrt(2 D(P||G)).
    CHECK(rep.w2 <= std::sqrt(2.0 * rep.kl_to_gaussian) + 1e-6);
  }
  // The same quadratic transport inequality on shifted/scaled inputs.
  for (double m : {0.5, 1.5}) {
    const auto g = DensityGrid::gaussian(m, 0.7, -12.0, 12.0, 3001);
    const double w2 = w2_to_std_gaussian(g);
    CHECK(w2 <= std::sqrt(2.0 * g.kl_to_std_gaussian()) + 1e-6);
  }
}

TEST_CASE("smoothing-channel contraction") {
  const std::vector<std::pair<double, double>> ab = {{3.0, 1.5}, {4.0, 2.0}};
  // Gaussian input is a fixed point.
  {
    const auto g = DensityGrid::gaussian(0.0, 1.0, -10.0, 10.0, 2001);
    const auto rep = ou_contraction_check(g, 0.7, ab);
    CHECK(rep.kl_before == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(rep.kl_after == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(rep.kl_ok);
  }
  // Shifted Gaussian contracts exactly like e^{-2t} m^2 / 2.
  {
    const double m = 0.8;
    const auto g = DensityGrid::gaussian(m, 1.0, -12.0, 12.0, 3001);
    for (double t : {0.3, 0.8, 1.5}) {
      const auto rep = ou_contraction_check(g, t, {});
      CHECK(rep.kl_after ==
            doctest::Approx(std::exp(-2.0 * t) * m * m / 2.0).epsilon(1e-5));
      CHECK(rep.kl_ok);
    }
  }
  // Mixture input: contraction and Renyi-order checks, monotone in t.
  {
    const auto g = DensityGrid::gaussian_mixture(0.5, -1.0, 0.4, 1.4, 0.7, -12.0,
                                                 12.0, 3001, false);
    double prev = kInf;
    for (double t : {0.2, 0.5, 1.0, 2.0, 3.0}) {
      const auto rep = ou_contraction_check(g, t, ab);
      CHECK(rep.kl_ok);
      CHECK(rep.renyi_ok);
      CHECK(rep.kl_after <= prev + 1e-10);
      prev = rep.kl_after;
    }
  }
}
