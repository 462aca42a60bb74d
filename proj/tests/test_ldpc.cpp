#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "comet/io.hpp"
#include "comet/ldpc.hpp"
#include "comet/special_functions.hpp"

using namespace comet;

TEST_CASE("degree statistics for the (2,20)-regular ensemble") {
  const auto dd = DegreeDistribution::regular(2, 20);
  const auto st = degree_stats(dd);
  CHECK(st.R_d == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(st.a_R == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(st.Gamma.at(20) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(st.identity_check < 1e-12);
}

TEST_CASE("degree-sum identity on random ensembles") {
  std::mt19937 gen(73);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    DegreeDistribution dd;
    double sl = 0.0, sr = 0.0;
    for (int j = 0; j < 3; ++j) {
      dd.lambda[2 + static_cast<int>(gen() % 10)] += u(gen);
      dd.rho[3 + static_cast<int>(gen() % 15)] += u(gen);
    }
    for (auto& [i, v] : dd.lambda) sl += v;
    for (auto& [i, v] : dd.rho) sr += v;
    for (auto& [i, v] : dd.lambda) v /= sl;
    for (auto& [i, v] : dd.rho) v /= sr;
    CHECK(degree_stats(dd).identity_check < 1e-10);
  }
}

TEST_CASE("minimum-distance interval") {
  const auto vac = min_distance_interval(100, 0.5, 0.0);
  CHECK(vac.vacuous);
  CHECK(vac.confidence == doctest::Approx(-1.0));
  CHECK(vac.lo == doctest::Approx(vac.hi));
  const auto near_one = min_distance_interval(1000, 0.999999, 1.0);
  CHECK(0.5 * (near_one.lo + near_one.hi) < 1.0);
  const auto iv = min_distance_interval(1000, 0.5, 3.0);
  const double center = 1000.0 * binary_entropy_inv(0.5);
  CHECK(iv.lo == doctest::Approx(center - 3.0 * std::sqrt(1000.0)).epsilon(1e-12));
  CHECK(iv.hi == doctest::Approx(center + 3.0 * std::sqrt(1000.0)).epsilon(1e-12));
  CHECK(iv.confidence == doctest::Approx(1.0 - 2.0 * std::exp(-4.5)).epsilon(1e-12));
}

TEST_CASE("cycle-count concentration") {
  const auto dd = DegreeDistribution::regular(3, 6);
  const auto big = cycles_bound(dd, 10.0);
  CHECK(big.zero);
  CHECK(big.probability_at(100) == 0.0);
  const auto zero = cycles_bound(dd, 0.0);
  CHECK(zero.probability_at(1000) == doctest::Approx(2.0));
  // Exponents approach the quadratic one from above as eta shrinks.
  double prev_ratio = kInf;
  for (double alpha : {1.2, 0.6, 0.3, 0.15, 0.075}) {
    const auto cb = cycles_bound(dd, alpha);
    CHECK(cb.exponent_nats >= cb.azuma_exponent_nats);
    const double ratio = cb.exponent_nats / cb.azuma_exponent_nats;
    CHECK(ratio <= prev_ratio + 1e-12);
    prev_ratio = ratio;
  }
  CHECK(prev_ratio == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("parity-bit entropy bounds") {
  for (int r : {1, 2, 7}) {
    CHECK(parity_entropy_bound(r, 1.0, BinaryInputChannel::MBIOS) ==
          doctest::Approx(0.0));
    CHECK(parity_entropy_bound(r, 1.0, BinaryInputChannel::BSC) ==
          doctest::Approx(0.0));
    CHECK(parity_entropy_bound(r, 1.0, BinaryInputChannel::BEC) ==
          doctest::Approx(0.0));
  }
  CHECK(parity_entropy_bound(1, 0.73, BinaryInputChannel::BEC) ==
        doctest::Approx(1.0 - 0.73).epsilon(1e-14));
  for (int r : {1, 2, 5, 10}) {
    for (double C : {0.3, 0.6, 0.9, 0.98}) {
      CHECK(parity_entropy_bound(r, C, BinaryInputChannel::BSC) <=
            parity_entropy_bound(r, C, BinaryInputChannel::MBIOS) + 1e-12);
    }
  }
}

TEST_CASE("conditional-entropy concentration coefficients") {
  const auto dd = DegreeDistribution::regular(2, 20);
  const auto mbios = cond_entropy_concentration(dd, 0.98, BinaryInputChannel::MBIOS);
  CHECK(mbios.B_orig == doctest::Approx(1.0 / 88.2).epsilon(1e-12));
  CHECK(mbios.factor == doctest::Approx(5.134).epsilon(1e-3));
  const auto bec = cond_entropy_concentration(dd, 0.98, BinaryInputChannel::BEC);
  CHECK(bec.factor == doctest::Approx(9.051).epsilon(1e-3));
  CHECK(mbios.B_tight >= mbios.B_orig);
  // Capacity sweep: the refined coefficient only improves with C and blows
  // up toward a perfect channel.
  double prev = 0.0;
  for (double C : {0.5, 0.7, 0.9, 0.99, 1.0 - 1e-6}) {
    const auto r = cond_entropy_concentration(dd, C, BinaryInputChannel::MBIOS);
    CHECK(r.B_tight >= prev - 1e-12);
    prev = r.B_tight;
  }
  CHECK(prev > 1e4);
}

TEST_CASE("truncated heavy-tail weighted sums vanish at capacity one") {
  // Geometric-ish right degrees with finite rho'(1).
  DegreeDistribution dd;
  dd.lambda[2] = 1.0;
  double total = 0.0;
  for (int i = 2; i <= 40; ++i) {
    dd.rho[i] = std::pow(0.7, i);
    total += dd.rho[i];
  }
  for (auto& [i, v] : dd.rho) v /= total;
  double prev = kInf;
  for (double C : {0.9, 0.99, 0.999, 1.0 - 1e-6}) {
    double weighted = 0.0;
    for (const auto& [i, g] : dd.check_node_fractions()) {
      const double h = parity_entropy_bound(i, C, BinaryInputChannel::MBIOS);
      weighted += (i + 1.0) * (i + 1.0) * g * h * h;
    }
    CHECK(weighted <= prev + 1e-12);
    prev = weighted;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("erasure-channel BP threshold") {
  const auto th = bec_bp_threshold(DegreeDistribution::regular(2, 20));
  CHECK(th.p_bp == doctest::Approx(0.0531).epsilon(2e-3));
  CHECK(th.capacity == doctest::Approx(0.9469).epsilon(2e-4));
  // The (3,6) ensemble has its optimum in the interior.
  const auto th36 = bec_bp_threshold(DegreeDistribution::regular(3, 6));
  CHECK(th36.p_bp == doctest::Approx(0.4294).epsilon(1e-3));
  // Heavier check degrees push the threshold toward zero.
  const auto th200 = bec_bp_threshold(DegreeDistribution::regular(2, 200));
  CHECK(th200.p_bp < th.p_bp);
  CHECK(th200.p_bp < 0.006);
}

TEST_CASE("expander neighbor bound") {
  const auto tiny = expander_bound(10000, 3, 6, 1e-4, 0.01);
  CHECK(tiny.value == 0.0);
  CHECK(tiny.vacuous);
  // At a 10% subset the entropy slack exceeds the expected neighbor count,
  // so the bound is floored and flagged.
  const auto b = expander_bound(10000, 3, 6, 0.1, 0.01);
  const double expected = 10000.0 * 3.0 * (1.0 - std::pow(0.9, 6)) / 6.0;
  CHECK(b.expected_neighbors == doctest::Approx(expected).epsilon(1e-12));
  const double slack =
      10000.0 * std::sqrt(2.0 * 3.0 * 0.1 * (binary_entropy(0.1) + 0.01));
  CHECK(expected - slack < 0.0);
  CHECK(b.value == 0.0);
  CHECK(b.vacuous);
  // A large left degree overcomes the entropy slack for small subsets.
  const auto pos = expander_bound(10000, 20, 40, 0.01, 0.001);
  const double expected20 = 10000.0 * 20.0 * (1.0 - std::pow(0.99, 40)) / 40.0;
  const double slack20 =
      10000.0 * std::sqrt(2.0 * 20.0 * 0.01 * (binary_entropy(0.01) + 0.001));
  CHECK(expected20 - slack20 > 0.0);
  CHECK(pos.value == doctest::Approx(expected20 - slack20).epsilon(1e-12));
  CHECK_FALSE(pos.vacuous);
}

TEST_CASE("message-passing concentration constants") {
  // Window-1 decoding over a memory-1 channel with (2,3) degrees grows the
  // neighborhood by a factor of 10 per level.
  const auto p = isi_params(IsiSpec{2, 3, 1, 1, 1});
  CHECK(p.alpha_growth == doctest::Approx(10.0));
  CHECK(p.N_e == doctest::Approx(1.0 + 3.0 * 5.0));
  CHECK(p.N_Y == doctest::Approx(3.0 * 2.0));
  CHECK_FALSE(p.gamma.has_value());
  const auto with_counts = isi_params(IsiSpec{2, 3, 1, 1, 1}, 10.0, 4.0);
  REQUIRE(with_counts.gamma.has_value());
  CHECK(*with_counts.gamma == doctest::Approx(100.0 + 36.0));

  // The window collapses to the memoryless growth factor.
  const auto memoryless = isi_params(IsiSpec{3, 4, 0, 0, 2});
  CHECK(memoryless.alpha_growth == doctest::Approx(6.0));

  // Exact neighborhood counts sharpen the generic constant by roughly a
  // factor of a million at (3, 4) with ten levels.
  const auto deep = isi_params(IsiSpec{3, 4, 0, 0, 10});
  const double generic = 544.0 * std::pow(3.0, 19) * std::pow(4.0, 20);
  const double improvement = generic / deep.inv_beta;
  CHECK(improvement > 1e5);
  CHECK(improvement < 1e7);
}

TEST_CASE("degree distribution file round trip") {
  DegreeDistribution dd;
  dd.lambda[2] = 0.4;
  dd.lambda[3] = 0.6;
  dd.rho[6] = 1.0;
  std::stringstream ss;
  write_degree_distribution(ss, dd);
  const auto back = read_degree_distribution(ss);
  CHECK(back.lambda.at(2) == doctest::Approx(0.4));
  CHECK(back.lambda.at(3) == doctest::Approx(0.6));
  CHECK(back.rho.at(6) == doctest::Approx(1.0));
  CHECK(parse_degree_spec("2,20").design_rate() == doctest::Approx(0.9));
}
