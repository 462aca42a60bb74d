#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "comet/rng.hpp"
#include "comet/simulate.hpp"
#include "comet/special_functions.hpp"

using namespace comet;

TEST_CASE("stream rng statistics and independence of scheduling") {
  StreamRng a(42, 0), b(42, 0), c(42, 1);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    all_equal = all_equal && va == b.next_u64();
    any_diff = any_diff || va != c.next_u64();
  }
  CHECK(all_equal);
  CHECK(any_diff);
  StreamRng g(7, 3);
  double mean = 0.0, var = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = g.gaussian();
    mean += z;
    var += z * z;
  }
  mean /= n;
  var = var / n - mean * mean;
  CHECK(std::fabs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("wilson interval sanity") {
  const auto w = wilson_99(50, 1000);
  CHECK(w.lo < 0.05);
  CHECK(w.hi > 0.05);
  CHECK(wilson_99(0, 1000).lo == 0.0);
  CHECK(wilson_99(1000, 1000).hi > 0.99);
  CHECK(wilson_99(1000, 1000).lo < 1.0);
}

TEST_CASE("exact binomial tail") {
  // Reference by direct summation with long doubles on a tiny case.
  long double t = 0.0L;
  for (int i = 7; i <= 10; ++i) {
    long double c = 1.0L;
    for (int j = 0; j < i; ++j) c = c * (10 - j) / (j + 1);
    t += c * std::pow(0.3L, i) * std::pow(0.7L, 10 - i);
  }
  CHECK(binomial_upper_tail(10, 0.3, 7) ==
        doctest::Approx(static_cast<double>(t)).epsilon(1e-12));
  CHECK(binomial_upper_tail(10, 0.3, 0) == 1.0);
  CHECK(binomial_upper_tail(10, 0.3, 11) == 0.0);
}

TEST_CASE("martingale simulation against bounds and the normal limit") {
  const std::vector<double> xs = {0.05, 0.1, 0.2, 0.4};
  const auto table = simulate_bernoulli_martingale(100, 1.0, 0.5, 200000, 5, xs);
  for (const auto& row : table.rows) {
    CHECK(row.upper_wilson_lo <= std::min(1.0, row.azuma_upper) + 1e-12);
    CHECK(row.upper_wilson_lo <= std::min(1.0, row.refined_upper) + 1e-12);
  }
  // Tails shrink as the threshold grows.
  for (size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].upper_empirical <= table.rows[i - 1].upper_empirical + 1e-12);
  }
  // Symmetric steps approach the two-sided normal tail at the sqrt(n) scale.
  {
    const std::int64_t n = 10000;
    const double alpha = 1.0;  // threshold alpha sqrt(n) d, x = alpha/sqrt(n)
    const std::vector<double> grid = {alpha / std::sqrt(static_cast<double>(n))};
    const auto clt = simulate_bernoulli_martingale(n, 1.0, 0.5, 200000, 11, grid);
    const double limit = 2.0 * gaussian_q(alpha).value;
    CHECK(clt.rows[0].two_sided_empirical == doctest::Approx(limit).epsilon(0.05));
  }
  // Reproducibility is bit-exact for a fixed seed.
  const auto again = simulate_bernoulli_martingale(100, 1.0, 0.5, 200000, 5, xs);
  for (size_t i = 0; i < xs.size(); ++i) {
    CHECK(again.rows[i].upper_empirical == table.rows[i].upper_empirical);
  }
}

TEST_CASE("vanishing-probability steps separate the two bounds") {
  // As the up-step probability vanishes, the variance-aware bound vanishes
  // while the jump-only bound stays fixed.
  const std::vector<double> xs = {0.3};
  const auto rare = simulate_bernoulli_martingale(50, 1.0, 0.01, 20000, 3, xs);
  const auto half = simulate_bernoulli_martingale(50, 1.0, 0.5, 20000, 3, xs);
  CHECK(rare.rows[0].azuma_upper == doctest::Approx(half.rows[0].azuma_upper));
  CHECK(rare.rows[0].refined_upper < 1e-4 * half.rows[0].refined_upper);
  CHECK(rare.rows[0].upper_wilson_lo <= rare.rows[0].refined_upper + 1e-12);
}

TEST_CASE("dominance suite passes at reduced scale") {
  DominanceConfig cfg;
  cfg.trials = 30000;
  cfg.seed = 17;
  cfg.include_ofdm = true;
  cfg.ofdm_sizes = {64};
  const auto rep = bound_dominance_suite(cfg);
  CHECK(rep.all_pass);
  bool saw_exact_binomial = false, saw_degenerate = false;
  for (const auto& s : rep.scenarios) {
    CHECK(s.pass);
    if (s.name == "mcdiarmid_hamming_weight_exact") saw_exact_binomial = true;
    if (s.name == "degenerate_zero_jump") saw_degenerate = true;
  }
  CHECK(saw_exact_binomial);
  CHECK(saw_degenerate);
}
