#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "comet/rng.hpp"
#include "comet/special_functions.hpp"
#include "comet/tail_bounds.hpp"

using namespace comet;

TEST_CASE("azuma endpoints and closed form") {
  std::vector<double> ones = {1.0};
  CHECK(azuma_bound(0.0, ones) == doctest::Approx(2.0));
  CHECK(azuma_bound(1.0, ones) == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-14));
  // r = alpha sqrt(n), d_k = d collapses to 2 exp(-alpha^2 / (2 d^2)).
  const double alpha = 0.7, d = 1.3;
  const int n = 37;
  std::vector<double> ds(n, d);
  CHECK(azuma_bound(alpha * std::sqrt(n), ds) ==
        doctest::Approx(2.0 * std::exp(-alpha * alpha / (2.0 * d * d))).epsilon(1e-13));
  std::vector<double> zeros(5, 0.0);
  CHECK(azuma_bound(0.3, zeros) == 0.0);
  CHECK(azuma_bound(0.0, zeros) == 2.0);
}

TEST_CASE("mcdiarmid improves azuma by four in the exponent") {
  std::vector<double> cs = {0.3, 0.5, 0.7};
  const double r = 0.4;
  const double az = azuma_bound(r, cs) / 2.0;
  const double mc = mcdiarmid_bound(r, cs) / 2.0;
  CHECK(std::log(mc) == doctest::Approx(4.0 * std::log(az)).epsilon(1e-12));
  // Coordinate sensitivity 2/sqrt(n) gives 2 exp(-r^2/2) for every n.
  for (int n : {4, 64, 999}) {
    std::vector<double> ofdm(static_cast<size_t>(n), 2.0 / std::sqrt(n));
    CHECK(mcdiarmid_bound(r, ofdm) ==
          doctest::Approx(2.0 * std::exp(-r * r / 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("hoeffding and kearns-saul") {
  std::vector<BoundedInterval> symmetric(4, BoundedInterval{0.0, 1.0, 0.5});
  const auto both = hoeffding_kearns_saul(0.8, symmetric);
  CHECK(both.kearns_saul == doctest::Approx(both.hoeffding).epsilon(1e-13));

  std::vector<BoundedInterval> skew(4, BoundedInterval{0.0, 1.0, 0.2});
  const auto sk = hoeffding_kearns_saul(0.8, skew);
  CHECK(sk.kearns_saul < sk.hoeffding);

  // Single interval [0,1], mean 0.25, r = 0.3: direct coefficient route.
  std::vector<BoundedInterval> one = {{0.0, 1.0, 0.25}};
  const double p = 0.25;
  const double ck = (1.0 - 2.0 * p) / (4.0 * std::log((1.0 - p) / p));
  const double expected = 2.0 * std::exp(-0.3 * 0.3 / (4.0 * ck));
  CHECK(hoeffding_kearns_saul(0.3, one).kearns_saul ==
        doctest::Approx(expected).epsilon(1e-13));

  // Coefficient is continuous through p = 1/2.
  std::vector<BoundedInterval> near = {{0.0, 1.0, 0.5 + 1e-7}};
  std::vector<BoundedInterval> at = {{0.0, 1.0, 0.5}};
  CHECK(hoeffding_kearns_saul(0.3, near).kearns_saul ==
        doctest::Approx(hoeffding_kearns_saul(0.3, at).kearns_saul).epsilon(1e-5));

  std::vector<BoundedInterval> hard = {{0.0, 1.0, 0.0}};
  const auto deg = hoeffding_kearns_saul(0.5, hard);
  CHECK(deg.degenerate);
  CHECK(deg.kearns_saul == 0.0);
}

TEST_CASE("refined bound branches") {
  MartingaleSpec spec{10, 1.0, 0.25};
  CHECK(refined_bound(spec, 1.5) == 0.0);
  // delta = 1 collapses to (gamma/(1+gamma))^n.
  const double g = spec.gamma();
  CHECK(refined_bound(spec, 1.0) ==
        doctest::Approx(std::pow(g / (1.0 + g), 10)).epsilon(1e-12));
  // gamma = 1 exponent equals the jump-only exponent f(delta).
  MartingaleSpec full{5, 1.0, 1.0};
  for (double delta : {0.1, 0.4, 0.9}) {
    CHECK(refined_bound(full, delta) ==
          doctest::Approx(2.0 * std::exp(-5.0 * f_delta(delta))).epsilon(1e-12));
  }
  CHECK(refined_bound(full, 0.3, TailSide::upper_tail) ==
        doctest::Approx(0.5 * refined_bound(full, 0.3)).epsilon(1e-13));
}

TEST_CASE("refined bound monotonicity") {
  MartingaleSpec spec{50, 1.0, 0.5};
  double prev = kInf;
  for (double alpha = 0.0; alpha <= 1.0; alpha += 0.02) {
    const double b = refined_bound(spec, alpha);
    CHECK(b <= prev + 1e-12);
    prev = b;
  }
  for (double alpha : {0.1, 0.3, 0.6}) {
    double prev_g = 0.0;
    for (double s2 = 0.1; s2 <= 1.0; s2 += 0.1) {
      const double b = refined_bound(MartingaleSpec{50, 1.0, s2}, alpha);
      CHECK(b >= prev_g - 1e-12);
      prev_g = b;
    }
  }
}

TEST_CASE("jump-only exponent beats the quadratic everywhere") {
  for (int i = 1; i <= 1000; ++i) {
    const double delta = i / 1000.0;
    CHECK(f_delta(delta) > delta * delta / 2.0);
  }
}

TEST_CASE("optimized MGF parameter reproduces the refined exponent") {
  // exp(-delta x) (gamma e^{(1) x ...}) at the optimizer matches
  // exp(-d((delta+gamma)/(1+gamma) || gamma/(1+gamma))) exactly.
  for (double gamma : {0.125, 0.4, 1.0}) {
    for (double delta : {0.05, 0.3, 0.8}) {
      const double x =
          std::log((gamma + delta) / (gamma * (1.0 - delta))) / (1.0 + gamma);
      const double base =
          (gamma * std::exp((1.0 - delta) * x) + std::exp(-(gamma + delta) * x)) /
          (1.0 + gamma);
      CHECK(std::log(base) ==
            doctest::Approx(-refined_exponent(gamma, delta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("small deviations approach the leading-order form") {
  MartingaleSpec base{1, 2.0, 1.0};
  const double alpha = 1.2;
  double prev_err = kInf;
  for (std::int64_t n : {100, 10000, 1000000}) {
    MartingaleSpec spec{n, base.d, base.sigma2};
    const auto sd = small_deviation_bound(spec, alpha);
    const double ratio = sd.bound / (2.0 * std::exp(-sd.leading_exponent));
    const double err = std::fabs(ratio - 1.0);
    CHECK(err < prev_err + 1e-12);
    prev_err = err;
  }
  {
    MartingaleSpec spec{1000000, base.d, base.sigma2};
    const auto sd = small_deviation_bound(spec, alpha);
    CHECK(sd.bound / (2.0 * std::exp(-sd.leading_exponent)) ==
          doctest::Approx(1.0).epsilon(1e-2));
  }
  // gamma = 1 leading exponent reduces to the Azuma exponent.
  const auto sd1 = small_deviation_bound(MartingaleSpec{50, 1.5, 2.25}, alpha);
  CHECK(sd1.leading_exponent ==
        doctest::Approx(alpha * alpha / (2.0 * 1.5 * 1.5)).epsilon(1e-13));
  // Crest-factor parameters: delta = alpha/2, gamma = 1/2, exponent alpha^2/4.
  const auto sd2 = small_deviation_bound(MartingaleSpec{256, 2.0, 2.0}, alpha);
  CHECK(sd2.leading_exponent == doctest::Approx(alpha * alpha / 4.0).epsilon(1e-13));
}

TEST_CASE("bennett MGF bound") {
  CHECK(bennett_mgf_bound(0.0, 0.3, 1.0, 0.5) == doctest::Approx(1.0));
  CHECK(bennett_mgf_bound(0.7, 0.3, 0.3, 0.5) ==
        doctest::Approx(std::exp(0.7 * 0.3)).epsilon(1e-13));
  // The two-point law at {-sigma^2/b, b} attains the bound with equality.
  const double b = 1.4, s2 = 0.6, lambda = 0.9;
  const double p_hi = s2 / (b * b + s2);
  const double exact =
      (1.0 - p_hi) * std::exp(-lambda * s2 / b) + p_hi * std::exp(lambda * b);
  CHECK(bennett_mgf_bound(lambda, 0.0, b, s2) == doctest::Approx(exact).epsilon(1e-13));
  // Any zero-mean sample bounded above by b with variance <= s2 stays below.
  StreamRng rng(99, 0);
  double mgf = 0.0;
  const int trials = 200000;
  for (int i = 0; i < trials; ++i) {
    double v = rng.gaussian() * std::sqrt(s2);
    while (v > b) v = rng.gaussian() * std::sqrt(s2);  // truncate the upper tail
    mgf += std::exp(lambda * v);
  }
  mgf /= trials;
  // Truncation only reduces both the mean shift and the MGF.
  CHECK(mgf <= bennett_mgf_bound(lambda, 0.0, b, s2) * (1.0 + 1e-2));
}

TEST_CASE("moment-sequence MGF bounds") {
  // gamma = 1 collapses to cosh^n.
  MomentSequence unit{1.0, {1.0}};
  const auto mb = mgf_moment_bounds(0.8, 7, unit);
  CHECK(mb.gamma_bound == doctest::Approx(std::pow(std::cosh(0.8), 7)).epsilon(1e-12));
  // m = 2 leaves only the exponential-remainder term.
  MomentSequence m2{2.0, {1.5}};
  const double td = 0.3 * 2.0;
  const double g2 = 1.5 / 4.0;
  const auto mb2 = mgf_moment_bounds(0.3, 3, m2);
  CHECK(mb2.moment_bound ==
        doctest::Approx(std::pow(1.0 + g2 * (std::exp(td) - 1.0 - td), 3)).epsilon(1e-12));
  // Alternating parity moments approach cosh^n as the order grows.
  std::vector<double> mus;
  for (int l = 2; l <= 40; ++l) mus.push_back(l % 2 == 0 ? 1.0 : 0.0);
  MomentSequence par{1.0, mus};
  const auto mb3 = mgf_moment_bounds(0.6, 4, par);
  CHECK(mb3.moment_bound == doctest::Approx(std::pow(std::cosh(0.6), 4)).epsilon(1e-9));
}

TEST_CASE("moderate-deviation exponents") {
  const auto same = mdp_compare(0.75, 1.0, 2.0, 4.0);
  CHECK(same.azuma == doctest::Approx(same.refined));
  CHECK(same.refined == doctest::Approx(same.mdp));
  const auto improved = mdp_compare(0.75, 1.0, 2.0, 1.0);
  CHECK(improved.refined < improved.azuma);
  CHECK(mdp_compare(0.8, 1.0, 1.0, 0.25).mdp == doctest::Approx(-2.0));
}

TEST_CASE("bounds vary continuously in their parameters") {
  const double h = 1e-7;
  MartingaleSpec spec{20, 1.0, 0.5};
  const double b0 = refined_bound(spec, 0.4);
  CHECK(std::fabs(refined_bound(spec, 0.4 + h) - b0) < 1e-5);
  MartingaleSpec spec2{20, 1.0, 0.5 + h};
  CHECK(std::fabs(refined_bound(spec2, 0.4) - b0) < 1e-5);
  std::vector<double> ds = {1.0, 2.0};
  const double a0 = azuma_bound(0.5, ds);
  std::vector<double> ds2 = {1.0 + h, 2.0};
  CHECK(std::fabs(azuma_bound(0.5, ds2) - a0) < 1e-5);
}
