#include "comet/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "comet/ofdm.hpp"
#include "comet/rng.hpp"
#include "comet/special_functions.hpp"
#include "comet/tail_bounds.hpp"

namespace comet {

namespace {

// splitmix64, used to expand (seed, stream) into generator state.
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xd1342543de82ef95ULL * (stream + 1));
  for (auto& w : s_) w = splitmix64(state);
}

std::uint64_t StreamRng::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double StreamRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double StreamRng::uniform(double a, double b) { return a + uniform() * (b - a); }

bool StreamRng::bernoulli(double p) { return uniform() < p; }

double StreamRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * 3.1415926535897932384626434 * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t StreamRng::below(std::uint64_t n) {
  // Lemire-style rejection-free-enough bounded draw.
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

WilsonInterval wilson_99(std::int64_t count, std::int64_t trials) {
  if (trials <= 0 || count < 0 || count > trials) {
    throw std::invalid_argument("wilson_99: bad counts");
  }
  const double z = 2.5758293035489004;  // 99.5th percentile of the normal
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(count) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  WilsonInterval w;
  w.lo = std::max(0.0, center - half);
  w.hi = std::min(1.0, center + half);
  return w;
}

void parallel_trials(std::int64_t trials, int threads,
                     const std::function<void(std::int64_t, std::int64_t)>& body) {
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = static_cast<int>(
      std::min<std::int64_t>(workers, std::max<std::int64_t>(1, trials)));
  if (workers == 1) {
    body(0, trials);
    return;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (trials + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min<std::int64_t>(trials, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

BernoulliMartingaleTable simulate_bernoulli_martingale(std::int64_t n, double d,
                                                       double eps,
                                                       std::int64_t trials,
                                                       std::uint64_t seed,
                                                       std::span<const double> xs,
                                                       int threads) {
  if (n < 1 || trials < 1) throw std::invalid_argument("simulate: bad sizes");
  if (!(d > 0.0)) throw std::invalid_argument("simulate: d <= 0");
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw std::invalid_argument("simulate: eps outside (0, 1/2]");
  }
  BernoulliMartingaleTable out;
  out.n = n;
  out.d = d;
  out.eps = eps;
  out.trials = trials;
  const double down = -eps * d / (1.0 - eps);

  std::vector<double> sums(static_cast<size_t>(trials));
  parallel_trials(trials, threads, [&](std::int64_t t0, std::int64_t t1) {
    for (std::int64_t t = t0; t < t1; ++t) {
      StreamRng rng(seed, static_cast<std::uint64_t>(t));
      double s = 0.0;
      for (std::int64_t i = 0; i < n; ++i) s += rng.bernoulli(eps) ? d : down;
      sums[static_cast<size_t>(t)] = s;
    }
  });

  const MartingaleSpec spec{n, d, eps / (1.0 - eps) * d * d};
  for (double x : xs) {
    TailRow row;
    row.x = x;
    std::int64_t up = 0, two = 0;
    const double threshold = x * static_cast<double>(n);
    for (double s : sums) {
      if (s >= threshold) ++up;
      if (std::fabs(s) >= threshold) ++two;
    }
    row.upper_empirical = static_cast<double>(up) / static_cast<double>(trials);
    row.two_sided_empirical = static_cast<double>(two) / static_cast<double>(trials);
    row.upper_wilson_lo = wilson_99(up, trials).lo;
    row.two_sided_wilson_lo = wilson_99(two, trials).lo;
    row.azuma_upper =
        std::exp(-static_cast<double>(n) * x * x / (2.0 * d * d));
    row.refined_upper = refined_bound(spec, x, TailSide::upper_tail);
    out.rows.push_back(row);
  }
  return out;
}

double binomial_upper_tail(std::int64_t n, double p, std::int64_t k) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  double s = 0.0;
  for (std::int64_t i = k; i <= n; ++i) {
    const double ln_term = std::lgamma(static_cast<double>(n) + 1.0) -
                           std::lgamma(static_cast<double>(i) + 1.0) -
                           std::lgamma(static_cast<double>(n - i) + 1.0) +
                           static_cast<double>(i) * std::log(p) +
                           static_cast<double>(n - i) * std::log1p(-p);
    s += std::exp(ln_term);
  }
  return std::min(s, 1.0);
}

namespace {

DominanceRow make_row(std::string quantity, double threshold, std::int64_t count,
                      std::int64_t trials, double bound) {
  DominanceRow row;
  row.quantity = std::move(quantity);
  row.threshold = threshold;
  row.empirical = static_cast<double>(count) / static_cast<double>(trials);
  row.wilson_lo = wilson_99(count, trials).lo;
  row.bound = bound;
  row.pass = row.wilson_lo <= std::min(1.0, bound) + 1e-12;
  return row;
}

ScenarioResult martingale_scenario(const std::string& name, std::int64_t n,
                                   double d, double eps,
                                   const DominanceConfig& cfg) {
  ScenarioResult res;
  res.name = name;
  const double down = -eps * d / (1.0 - eps);
  std::vector<double> sums(static_cast<size_t>(cfg.trials));
  parallel_trials(cfg.trials, cfg.threads, [&](std::int64_t t0, std::int64_t t1) {
    for (std::int64_t t = t0; t < t1; ++t) {
      StreamRng rng(cfg.seed, static_cast<std::uint64_t>(t));
      double s = 0.0;
      for (std::int64_t i = 0; i < n; ++i) s += rng.bernoulli(eps) ? d : down;
      sums[static_cast<size_t>(t)] = s;
    }
  });
  const MartingaleSpec spec{n, d, eps / (1.0 - eps) * d * d};
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  std::vector<double> ds(static_cast<size_t>(n), d);
  for (double alpha : cfg.alphas) {
    // Small-deviation scale: threshold alpha sqrt(n) d.
    const double threshold = alpha * sqrt_n * d;
    std::int64_t two = 0;
    for (double s : sums) {
      if (std::fabs(s) >= threshold) ++two;
    }
    res.rows.push_back(make_row("two_sided@alpha=" + std::to_string(alpha),
                                threshold, two, cfg.trials,
                                azuma_bound(threshold, ds)));
    res.rows.push_back(make_row("two_sided_refined@alpha=" + std::to_string(alpha),
                                threshold, two, cfg.trials,
                                small_deviation_bound(spec, alpha * d).bound));
  }
  for (auto& row : res.rows) res.pass = res.pass && row.pass;
  return res;
}

ScenarioResult hoeffding_scenario(const DominanceConfig& cfg) {
  ScenarioResult res;
  res.name = "hoeffding_kearns_saul_sums";
  // Independent Bernoulli(p_k) entries in [0,1] with asymmetric means.
  const int n = 80;
  const double p = 0.1;
  std::vector<std::int64_t> counts(cfg.alphas.size(), 0);
  std::vector<std::atomic<std::int64_t>> acounts(cfg.alphas.size());
  for (auto& a : acounts) a.store(0);
  parallel_trials(cfg.trials, cfg.threads, [&](std::int64_t t0, std::int64_t t1) {
    std::vector<std::int64_t> local(cfg.alphas.size(), 0);
    for (std::int64_t t = t0; t < t1; ++t) {
      StreamRng rng(cfg.seed ^ 0x5151u, static_cast<std::uint64_t>(t));
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += rng.bernoulli(p) ? 1.0 : 0.0;
      const double dev = std::fabs(s - n * p);
      for (size_t a = 0; a < cfg.alphas.size(); ++a) {
        if (dev >= cfg.alphas[a] * std::sqrt(static_cast<double>(n))) ++local[a];
      }
    }
    for (size_t a = 0; a < cfg.alphas.size(); ++a) acounts[a] += local[a];
  });
  std::vector<BoundedInterval> iv(static_cast<size_t>(n),
                                  BoundedInterval{0.0, 1.0, p});
  for (size_t a = 0; a < cfg.alphas.size(); ++a) {
    const double r = cfg.alphas[a] * std::sqrt(static_cast<double>(n));
    const auto hk = hoeffding_kearns_saul(r, iv);
    res.rows.push_back(make_row("hoeffding@alpha=" + std::to_string(cfg.alphas[a]),
                                r, acounts[a].load(), cfg.trials, hk.hoeffding));
    res.rows.push_back(make_row("kearns_saul@alpha=" + std::to_string(cfg.alphas[a]),
                                r, acounts[a].load(), cfg.trials, hk.kearns_saul));
  }
  for (auto& row : res.rows) res.pass = res.pass && row.pass;
  return res;
}

ScenarioResult mcdiarmid_scenario(const DominanceConfig& cfg) {
  ScenarioResult res;
  res.name = "mcdiarmid_hamming_weight_exact";
  // f = normalized Hamming weight of n fair bits; the exact binomial tail
  // is available, so no sampling is needed.
  const std::int64_t n = 400;
  const double half = static_cast<double>(n) / 2.0;
  std::vector<double> cs(static_cast<size_t>(n), 1.0 / static_cast<double>(n));
  for (double alpha : cfg.alphas) {
    const double r = alpha / std::sqrt(static_cast<double>(n));
    const std::int64_t k =
        static_cast<std::int64_t>(std::ceil(half + r * static_cast<double>(n)));
    const double exact =
        2.0 * binomial_upper_tail(n, 0.5, k);  // symmetric two-sided tail
    DominanceRow row;
    row.quantity = "binomial_two_sided@alpha=" + std::to_string(alpha);
    row.threshold = r;
    row.empirical = exact;
    row.wilson_lo = exact;  // exact value, no sampling slack
    row.bound = mcdiarmid_bound(r, cs);
    row.pass = exact <= std::min(1.0, row.bound) + 1e-12;
    res.rows.push_back(row);
  }
  for (auto& row : res.rows) res.pass = res.pass && row.pass;
  return res;
}

ScenarioResult degenerate_scenario() {
  ScenarioResult res;
  res.name = "degenerate_zero_jump";
  DominanceRow row;
  row.quantity = "deterministic_tail";
  row.threshold = 0.5;
  row.empirical = 0.0;
  row.wilson_lo = 0.0;
  std::vector<double> zero(8, 0.0);
  row.bound = azuma_bound(0.5, zero);
  row.pass = row.bound == 0.0;
  res.rows.push_back(row);
  res.pass = row.pass;
  return res;
}

}  // namespace

DominanceReport bound_dominance_suite(const DominanceConfig& config) {
  DominanceReport rep;
  rep.scenarios.push_back(
      martingale_scenario("symmetric_pm_d_martingale", 100, 1.0, 0.5, config));
  rep.scenarios.push_back(
      martingale_scenario("asymmetric_eps_martingale", 100, 1.0, 0.1, config));
  rep.scenarios.push_back(hoeffding_scenario(config));
  rep.scenarios.push_back(mcdiarmid_scenario(config));
  rep.scenarios.push_back(degenerate_scenario());
  if (config.include_ofdm) {
    for (int n : config.ofdm_sizes) {
      OfdmSpec spec;
      spec.n = n;
      spec.psk_order = 4;
      spec.oversample = 16;
      spec.trials = config.trials;
      spec.seed = config.seed ^ (0xabcdULL + static_cast<std::uint64_t>(n));
      const auto rep_ofdm = cf_monte_carlo(spec, config.alphas, config.threads);
      ScenarioResult res;
      res.name = "ofdm_crest_factor_n" + std::to_string(n);
      for (const auto& row : rep_ofdm.rows) {
        DominanceRow r1;
        r1.quantity = "cf_two_sided@alpha=" + std::to_string(row.alpha);
        r1.threshold = row.alpha;
        r1.empirical = row.empirical_mean_exceed;
        r1.wilson_lo = row.wilson_low_mean;
        r1.bound = std::min({row.bounds.azuma, row.bounds.refined,
                             row.bounds.mcdiarmid});
        r1.pass = row.dominated;
        res.rows.push_back(r1);
      }
      DominanceRow inc;
      inc.quantity = "increment_bound";
      inc.threshold = rep_ofdm.increment_limit;
      inc.empirical = rep_ofdm.increment_max;
      inc.wilson_lo = rep_ofdm.increment_max;
      inc.bound = rep_ofdm.increment_limit;
      inc.pass = rep_ofdm.increments_ok;
      res.rows.push_back(inc);
      for (const auto& row : res.rows) res.pass = res.pass && row.pass;
      rep.scenarios.push_back(res);
    }
  }
  for (const auto& s : rep.scenarios) rep.all_pass = rep.all_pass && s.pass;
  return rep;
}

}  // namespace comet
