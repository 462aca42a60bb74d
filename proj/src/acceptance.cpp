#include "comet/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "comet/channel.hpp"
#include "comet/entropy_method.hpp"
#include "comet/info_measures.hpp"
#include "comet/ldpc.hpp"
#include "comet/rng.hpp"
#include "comet/simulate.hpp"
#include "comet/special_functions.hpp"
#include "comet/tail_bounds.hpp"
#include "comet/transport.hpp"

namespace comet {

namespace {

using Clock = std::chrono::steady_clock;

struct Stopwatch {
  Clock::time_point start = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CriterionResult criterion_bec_threshold() {
  Stopwatch sw;
  CriterionResult r;
  r.name = "bec-bp-threshold-2-20";
  const auto th = bec_bp_threshold(DegreeDistribution::regular(2, 20));
  const bool value_ok = std::fabs(th.p_bp - 0.0531) <= 1e-4 &&
                        std::fabs(th.capacity - 0.9469) <= 1e-4;
  r.seconds = sw.seconds();
  r.pass = value_ok && r.seconds < 1.0;
  r.detail = "p_bp=" + fmt(th.p_bp) + " capacity=" + fmt(th.capacity) +
             " time=" + fmt(r.seconds) + "s";
  return r;
}

CriterionResult criterion_cond_entropy() {
  Stopwatch sw;
  CriterionResult r;
  r.name = "cond-entropy-factors-2-20";
  const auto dd = DegreeDistribution::regular(2, 20);
  const auto mbios = cond_entropy_concentration(dd, 0.98, BinaryInputChannel::MBIOS);
  const auto bec = cond_entropy_concentration(dd, 0.98, BinaryInputChannel::BEC);
  // The published tightened exponents scale the baseline coefficient after
  // rounding it to four decimals.
  const double b4 = std::round(mbios.B_orig * 1e4) / 1e4;
  const double tight_mbios = b4 * mbios.factor;
  const double tight_bec = b4 * bec.factor;
  const bool ok = std::fabs(mbios.factor - 5.134) <= 1e-3 &&
                  std::fabs(bec.factor - 9.051) <= 1e-3 &&
                  std::fabs(mbios.B_orig - 0.0113) <= 1e-4 &&
                  std::fabs(tight_mbios - 0.0580) <= 1e-4 &&
                  std::fabs(tight_bec - 0.1023) <= 1e-4;
  r.seconds = sw.seconds();
  r.pass = ok;
  r.detail = "factor_mbios=" + fmt(mbios.factor) + " factor_bec=" + fmt(bec.factor) +
             " B_orig=" + fmt(mbios.B_orig) + " tight=" + fmt(tight_mbios) + "/" +
             fmt(tight_bec);
  return r;
}

CriterionResult criterion_biawgn() {
  Stopwatch sw;
  CriterionResult r;
  r.name = "biawgn-closed-form-equivalence";
  VolterraKernel identity;
  identity.order = 1;
  identity.memory = 0;
  identity.h1[0] = 1.0;

  bool ok = true;
  double worst_r1 = 0.0, worst_r2 = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double snr = std::pow(10.0, -2.0 + 4.0 * i / 40.0);  // [0.01, 100]
    const double closed = biawgn_rate(snr);
    const auto params = volterra_martingale_params(identity, std::sqrt(snr), 0.5, 64);
    const double r1 = achievable_rates(params, 1.0, 2).R1;
    // R2 on the even-m grid, then Aitken extrapolation of the tail.
    double r2_prev2 = 0.0, r2_prev1 = 0.0, r2 = 0.0;
    for (int m = 2; m <= 64; m += 2) {
      r2_prev2 = r2_prev1;
      r2_prev1 = r2;
      r2 = achievable_rates(params, 1.0, m).R2;
    }
    double r2_best = r2;
    const double d1 = r2_prev1 - r2_prev2, d2 = r2 - r2_prev1;
    if (std::fabs(d2 - d1) > 1e-300) {
      const double aitken = r2 - d2 * d2 / (d2 - d1);
      if (std::isfinite(aitken) && aitken >= r2 && aitken <= r2 + std::fabs(d2)) {
        r2_best = aitken;
      }
    }
    worst_r1 = std::max(worst_r1, std::fabs(r1 - closed));
    worst_r2 = std::max(worst_r2, std::fabs(r2_best - closed));
  }
  ok = ok && worst_r1 <= 1e-6 && worst_r2 <= 1e-6;

  // Large-snr saturation at ln 2.
  {
    const double snr = 1e4;
    const auto params = volterra_martingale_params(identity, std::sqrt(snr), 0.5, 64);
    const auto rates = achievable_rates(params, 1.0, 64);
    ok = ok && std::fabs(rates.R1 - std::log(2.0)) <= 1e-4 &&
         std::fabs(rates.R2 - std::log(2.0)) <= 1e-4;
  }

  // Mutual-information series: capacity dominates the rate, and the term
  // ratio tracks the cubic decay within a factor of 2 for n >= 5.
  bool series_ok = true;
  for (double snr : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const auto cap = biawgn_capacity(snr, 30);
    series_ok = series_ok && cap.value >= biawgn_rate(snr) - 1e-9;
    for (int nidx = 5; nidx <= 20; ++nidx) {
      const double ratio = biawgn_capacity_term(snr, nidx + 1) /
                           biawgn_capacity_term(snr, nidx);
      const double cubic = std::pow(static_cast<double>(nidx) /
                                        static_cast<double>(nidx + 1),
                                    3.0);
      series_ok = series_ok && ratio >= cubic / 2.0 && ratio <= cubic * 2.0;
    }
  }
  ok = ok && series_ok;

  r.seconds = sw.seconds();
  r.pass = ok;
  r.detail = "max|R1-closed|=" + fmt(worst_r1) + " max|R2-closed|=" + fmt(worst_r2) +
             " series_ok=" + (series_ok ? std::string("yes") : std::string("no"));
  return r;
}

CriterionResult criterion_pinsker(std::uint64_t seed) {
  Stopwatch sw;
  CriterionResult r;
  r.name = "pinsker-refinements";
  StreamRng rng(seed, 4);
  bool ok = true;
  for (int trial = 0; trial < 10000 && ok; ++trial) {
    const size_t k = 2 + rng.below(7);
    std::vector<double> wp(k), wq(k);
    for (size_t i = 0; i < k; ++i) {
      wp[i] = rng.uniform(0.01, 1.0);
      wq[i] = rng.uniform(0.01, 1.0);
    }
    const auto P = FiniteDistribution::from_weights(wp);
    const auto Q = FiniteDistribution::from_weights(wq);
    const auto suite = pinsker_suite(P, Q);
    ok = ok && suite.tv <= suite.pinsker_rhs + 1e-12;
    ok = ok && suite.ow_rhs <= suite.pinsker_rhs + 1e-12;
    if (suite.balance < 0.5 - 1e-6 && suite.tv > 1e-9) {
      ok = ok && suite.ow_rhs < suite.pinsker_rhs - 1e-15;
    }
  }
  ok = ok && ow_phi(0.5) == 2.0;
  r.seconds = sw.seconds();
  r.pass = ok;
  r.detail = "pairs=10000 phi(1/2)=" + fmt(ow_phi(0.5));
  return r;
}

CriterionResult criterion_identities(std::uint64_t seed) {
  Stopwatch sw;
  CriterionResult r;
  r.name = "identity-suites";
  StreamRng rng(seed, 5);
  double worst = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    const size_t k = 2 + rng.below(5);
    std::vector<double> w(k), f(k);
    for (size_t i = 0; i < k; ++i) {
      w[i] = rng.uniform(0.05, 1.0);
      f[i] = rng.uniform(-1.0, 1.0);
    }
    TiltedFamily fam(FiniteDistribution::from_weights(w), f);
    const double lambda = rng.uniform(0.2, 2.5);
    worst = std::max(worst, herbst_identity_check(fam, lambda).gap);
    worst = std::max(worst, maurer_identity_check(fam, lambda).gap);
    // D = t Lambda' - Lambda against the direct divergence of the tilt.
    const double t = rng.uniform(0.1, 2.0);
    const double direct = kl_divergence(fam.tilted(t), fam.base());
    worst = std::max(worst, std::fabs(direct - fam.divergence(t)));
  }
  double worst_identity = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    DegreeDistribution dd;
    const int terms = 2 + static_cast<int>(rng.below(4));
    double sl = 0.0, sr = 0.0;
    for (int j = 0; j < terms; ++j) {
      dd.lambda[2 + static_cast<int>(rng.below(12))] += rng.uniform(0.1, 1.0);
      dd.rho[2 + static_cast<int>(rng.below(18))] += rng.uniform(0.1, 1.0);
    }
    for (auto& [i, v] : dd.lambda) sl += v;
    for (auto& [i, v] : dd.rho) sr += v;
    for (auto& [i, v] : dd.lambda) v /= sl;
    for (auto& [i, v] : dd.rho) v /= sr;
    worst_identity = std::max(worst_identity, degree_stats(dd).identity_check);
  }
  r.seconds = sw.seconds();
  r.pass = worst <= 1e-6 && worst_identity <= 1e-10 && r.seconds < 30.0;
  r.detail = "max_gap=" + fmt(worst) + " max_degree_identity=" + fmt(worst_identity) +
             " time=" + fmt(r.seconds) + "s";
  return r;
}

CriterionResult criterion_lsi(std::uint64_t seed) {
  Stopwatch sw;
  CriterionResult r;
  r.name = "lsi-suites";
  StreamRng rng(seed, 6);
  int violations = 0;
  for (int inst = 0; inst < 500; ++inst) {
    const int n = 4 + static_cast<int>(rng.below(3));
    std::vector<double> f(size_t{1} << n);
    for (auto& v : f) v = rng.uniform(-1.0, 1.0);
    if (!discrete_lsi_check(n, 0.5, f).pass) ++violations;
    const double p = rng.uniform(0.1, 0.45);
    if (!discrete_lsi_check(n, p, f).pass) ++violations;
  }
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (int inst = 0; inst < 500; ++inst) {
      const int trunc = 60;
      std::vector<double> f(static_cast<size_t>(trunc) + 1);
      for (auto& v : f) v = rng.uniform(-0.8, 0.8);
      if (!poisson_lsi_check(lambda, f, trunc).pass) ++violations;
    }
  }
  {
    const std::vector<double> mu = {0.5, 0.3, 0.2};  // jumps 1, 2, 3
    for (int inst = 0; inst < 500; ++inst) {
      const int trunc = 90;
      std::vector<double> f(static_cast<size_t>(trunc) + 1);
      for (auto& v : f) v = rng.uniform(-0.8, 0.8);
      if (!poisson_lsi_check(1.0, f, trunc, &mu).pass) ++violations;
    }
  }
  r.seconds = sw.seconds();
  r.pass = violations == 0;
  r.detail = "violations=" + std::to_string(violations);
  return r;
}

CriterionResult criterion_transport(std::uint64_t seed) {
  Stopwatch sw;
  CriterionResult r;
  r.name = "transport-w1-and-blowup";
  StreamRng rng(seed, 7);
  double worst_w1 = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t k = 2 + rng.below(7);
    std::vector<double> wp(k), wq(k);
    for (size_t i = 0; i < k; ++i) {
      wp[i] = rng.uniform(0.0, 1.0);
      wq[i] = rng.uniform(0.0, 1.0);
    }
    const auto P = FiniteDistribution::from_weights(wp);
    const auto Q = FiniteDistribution::from_weights(wq);
    const auto lp = wasserstein_p(P, Q, FiniteMetricSpace::hamming(k), 1.0);
    const auto tv = tv_and_w1_hamming(P, Q);
    worst_w1 = std::max(worst_w1, std::fabs(lp.value - tv.tv));
  }
  int blowup_violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 6 + static_cast<int>(rng.below(7));  // up to 12
    const double p = rng.uniform(0.2, 0.8);
    const size_t states = size_t{1} << n;
    const size_t set_size = 1 + rng.below(states / 4);
    std::vector<std::uint32_t> set;
    for (size_t i = 0; i < set_size; ++i) {
      set.push_back(static_cast<std::uint32_t>(rng.below(states)));
    }
    const auto spec = BlowupSpec::bernoulli_cube(n, p, set);
    for (int radius = 0; radius <= n; ++radius) {
      const auto masses = blowup(spec, radius);
      const auto bound = blowup_bound(masses.mass_A, n, radius);
      if (masses.mass_Ar < bound.value - 1e-12) ++blowup_violations;
    }
  }
  r.seconds = sw.seconds();
  r.pass = worst_w1 <= 1e-9 && blowup_violations == 0;
  r.detail = "max|W1-TV|=" + fmt(worst_w1) +
             " blowup_violations=" + std::to_string(blowup_violations);
  return r;
}

CriterionResult criterion_concentration_exponent() {
  Stopwatch sw;
  CriterionResult r;
  r.name = "concentration-exponent";
  bool ok = true;
  double worst_gap = 0.0;
  for (int ip = 1; ip <= 50 && ok; ++ip) {
    const double p = 0.5 * ip / 50.0;
    for (int id = 0; id < 50; ++id) {
      const double delta = static_cast<double>(id) / 49.0;
      const auto ce = concentration_exponent_bernoulli(delta, p);
      if (ce.brute > ce.upper + 1e-9) {
        ok = false;
        break;
      }
    }
    const auto edge = concentration_exponent_bernoulli(1.0 - p, p);
    worst_gap = std::max(worst_gap, std::fabs(edge.brute - std::log(p)));
  }
  ok = ok && worst_gap <= 1e-4;
  r.seconds = sw.seconds();
  r.pass = ok;
  r.detail = "max|brute-ln p|@delta=1-p=" + fmt(worst_gap);
  return r;
}

CriterionResult criterion_monte_carlo(const AcceptanceOptions& opt) {
  Stopwatch sw;
  CriterionResult r;
  r.name = "monte-carlo-dominance";
  DominanceConfig cfg;
  cfg.trials = opt.mc_trials;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  const auto rep = bound_dominance_suite(cfg);
  r.seconds = sw.seconds();
  std::string failures;
  for (const auto& s : rep.scenarios) {
    if (!s.pass) failures += " " + s.name;
  }
  r.pass = rep.all_pass && r.seconds < 300.0;
  r.detail = "trials=" + std::to_string(cfg.trials) + " time=" + fmt(r.seconds) +
             "s" + (failures.empty() ? std::string(" all-dominated") : " failing:" + failures);
  return r;
}

CriterionResult criterion_figure_invariants() {
  Stopwatch sw;
  CriterionResult r;
  r.name = "figure-invariants";
  bool ok = true;
  // Exponent curves ordered in gamma, with the jump-only curve at gamma = 1.
  for (int i = 1; i < 200; ++i) {
    const double delta = static_cast<double>(i) / 200.0;
    const double e8 = refined_exponent(0.125, delta);
    const double e4 = refined_exponent(0.25, delta);
    const double e2 = refined_exponent(0.5, delta);
    const double e1 = refined_exponent(1.0, delta);
    ok = ok && e8 >= e4 - 1e-12 && e4 >= e2 - 1e-12 && e2 >= e1 - 1e-12;
    ok = ok && std::fabs(e1 - f_delta(delta)) <= 1e-10;
  }
  // Rate curves for the reference kernels: nonnegative, decreasing in the
  // noise variance.
  const auto kernel = reference_third_order_kernel();
  const auto params = volterra_martingale_params(kernel, 1.0, 0.5, 4);
  double prev_r1 = kInf, prev_r2 = kInf;
  for (double s2 : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const auto rates = achievable_rates(params, s2, 4);
    ok = ok && rates.R1 >= 0.0 && rates.R2 >= 0.0;
    ok = ok && rates.R1 <= prev_r1 + 1e-12 && rates.R2 <= prev_r2 + 1e-12;
    prev_r1 = rates.R1;
    prev_r2 = rates.R2;
  }
  r.seconds = sw.seconds();
  r.pass = ok;
  r.detail = ok ? "exponent and rate curves monotone" : "monotonicity violated";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  results.push_back(criterion_bec_threshold());
  results.push_back(criterion_cond_entropy());
  results.push_back(criterion_biawgn());
  results.push_back(criterion_pinsker(options.seed));
  results.push_back(criterion_identities(options.seed));
  results.push_back(criterion_lsi(options.seed));
  results.push_back(criterion_transport(options.seed));
  results.push_back(criterion_concentration_exponent());
  results.push_back(criterion_monte_carlo(options));
  results.push_back(criterion_figure_invariants());
  return results;
}

}  // namespace comet
