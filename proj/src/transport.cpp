#include "comet/transport.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "comet/rng.hpp"
#include "comet/special_functions.hpp"

namespace comet {

BlowupSpec BlowupSpec::bernoulli_cube(int n, double p,
                                      std::vector<std::uint32_t> set) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("bernoulli_cube: bad p");
  BlowupSpec s;
  s.coord_pmf.assign(static_cast<size_t>(n), {1.0 - p, p});
  s.set = std::move(set);
  return s;
}

BlowupMasses blowup(const BlowupSpec& spec, int r) {
  if (r < 0) throw std::invalid_argument("blowup: negative radius");
  std::vector<int> arities;
  arities.reserve(spec.coord_pmf.size());
  for (const auto& pmf : spec.coord_pmf) arities.push_back(static_cast<int>(pmf.size()));
  const ProductSpace sp(arities);
  const auto P = product_measure(sp, spec.coord_pmf);

  // dist[x] = Hamming distance to the set, by BFS over single-coordinate
  // substitutions.
  std::vector<int> dist(sp.states, -1);
  std::queue<size_t> frontier;
  for (std::uint32_t x : spec.set) {
    if (x >= sp.states) throw std::invalid_argument("blowup: index out of range");
    if (dist[x] == -1) {
      dist[x] = 0;
      frontier.push(x);
    }
  }
  if (frontier.empty()) throw std::invalid_argument("blowup: empty set");
  while (!frontier.empty()) {
    const size_t x = frontier.front();
    frontier.pop();
    for (int i = 0; i < sp.n(); ++i) {
      for (int v = 0; v < sp.arity[i]; ++v) {
        const size_t y = sp.with_digit(x, i, v);
        if (dist[y] == -1) {
          dist[y] = dist[x] + 1;
          frontier.push(y);
        }
      }
    }
  }

  BlowupMasses out;
  for (size_t x = 0; x < sp.states; ++x) {
    if (dist[x] == 0) out.mass_A += P[x];
    if (dist[x] >= 0 && dist[x] <= r) out.mass_Ar += P[x];
  }
  return out;
}

BlowupBound blowup_bound(double mass_A, int n, double r) {
  if (!(mass_A > 0.0 && mass_A <= 1.0)) {
    throw std::domain_error("blowup_bound: mass outside (0,1]");
  }
  if (n < 1) throw std::invalid_argument("blowup_bound: n < 1");
  BlowupBound out;
  const double threshold =
      std::sqrt(static_cast<double>(n) / 2.0 * std::log(1.0 / mass_A));
  if (r <= threshold) {
    out.value = 0.0;
    out.vacuous = true;
    return out;
  }
  const double excess = r - threshold;
  out.value = 1.0 - std::exp(-2.0 / static_cast<double>(n) * excess * excess);
  return out;
}

MartonBound marton_bound(double c, double r) {
  if (!(c > 0.0)) throw std::invalid_argument("marton_bound: c <= 0");
  MartonBound out;
  out.profile.K = 1.0;
  out.profile.kappa = 1.0 / (2.0 * c);
  out.profile.r0 = std::sqrt(2.0 * c * std::log(2.0));
  if (r >= out.profile.r0) {
    const double excess = r - out.profile.r0;
    out.value = 1.0 - std::exp(-out.profile.kappa * excess * excess);
  }
  return out;
}

namespace {

// Objective D(P_Y||P) + H(Y|X) for the 2x2 joint with P_X = Bernoulli(p),
// P(Y=1|X=0) = a, P(Y=1|X=1) = b, subject to Pr(X != Y) <= delta.
struct ExponentObjective {
  double p, delta;

  double mismatch(double a, double b) const {
    return (1.0 - p) * a + p * (1.0 - b);
  }
  double value(double a, double b) const {
    if (mismatch(a, b) > delta + 1e-12) return -kInf;
    const double py1 = (1.0 - p) * a + p * b;
    double d = 0.0;
    if (py1 > 0.0) {
      if (p == 0.0) return -kInf;
      d += py1 * std::log(py1 / p);
    }
    if (py1 < 1.0) {
      if (p == 1.0) return -kInf;
      d += (1.0 - py1) * std::log((1.0 - py1) / (1.0 - p));
    }
    const double hcond =
        (1.0 - p) * binary_entropy(a) + p * binary_entropy(b);
    return d + hcond;
  }
};

}  // namespace

ConcentrationExponent concentration_exponent_bernoulli(double delta, double p) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::domain_error("concentration_exponent: delta outside [0,1]");
  }
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::domain_error("concentration_exponent: p outside (0, 1/2]");
  }
  ConcentrationExponent out;
  if (delta <= 1.0 - p) {
    out.upper = -ow_phi(p) * delta * delta -
                (1.0 - p) * binary_entropy(delta / (1.0 - p));
  } else {
    out.upper = std::log(p);
  }
  if (delta >= 1.0 - p) out.exact_tail = std::log(p);

  // Dense grid over the two free conditional probabilities, then coordinate
  // descent with shrinking step (tolerance 1e-6). The feasibility corner
  // (a, b) = (delta/(1-p), 1) saturates the mismatch budget and is seeded
  // explicitly so the climb never misses the constrained boundary.
  const ExponentObjective obj{p, delta};
  const int grid = 201;
  double best = -kInf, best_a = 0.0, best_b = 1.0;
  auto consider = [&](double a, double b) {
    const double v = obj.value(a, b);
    if (v > best) {
      best = v;
      best_a = a;
      best_b = b;
    }
  };
  for (int ia = 0; ia < grid; ++ia) {
    const double a = static_cast<double>(ia) / (grid - 1);
    for (int ib = 0; ib < grid; ++ib) {
      consider(a, static_cast<double>(ib) / (grid - 1));
    }
  }
  consider(std::min(delta / (1.0 - p), 1.0), 1.0);
  consider(1.0, 1.0);
  double step = 1.0 / (grid - 1);
  while (step > 1e-8) {
    bool improved = false;
    for (const auto& [da, db] : {std::pair{step, 0.0}, {-step, 0.0},
                                 {0.0, step}, {0.0, -step}, {step, step},
                                 {step, -step}, {-step, step}, {-step, -step}}) {
      const double a = std::clamp(best_a + da, 0.0, 1.0);
      const double b = std::clamp(best_b + db, 0.0, 1.0);
      const double v = obj.value(a, b);
      if (v > best + 1e-15) {
        best = v;
        best_a = a;
        best_b = b;
        improved = true;
      }
    }
    if (!improved) step /= 2.0;
  }
  out.brute = -best;
  return out;
}

BobkovGotzeCheck bobkov_gotze_check(const FiniteDistribution& mu,
                                    int candidates, std::uint64_t seed) {
  mu.validate();
  const size_t k = mu.size();
  BobkovGotzeCheck out;
  const auto bal = balance_coefficient(mu);
  out.c = 1.0 / (2.0 * ow_phi(std::min(bal.value, 0.5)));
  out.worst_margin = kInf;
  StreamRng rng(seed, 0x60727e);
  auto probe = [&](const std::vector<double>& f) {
    double mean = 0.0;
    for (size_t i = 0; i < k; ++i) mean += mu.probs[i] * f[i];
    for (double t : {-4.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 4.0}) {
      double mgf = 0.0;
      for (size_t i = 0; i < k; ++i) {
        mgf += mu.probs[i] * std::exp(t * (f[i] - mean));
      }
      out.worst_margin =
          std::min(out.worst_margin, out.c * t * t / 2.0 - std::log(mgf));
    }
  };
  // Indicator functions are the extreme points of the range-1 class.
  std::vector<double> f(k, 0.0);
  for (size_t i = 0; i < k; ++i) {
    std::fill(f.begin(), f.end(), 0.0);
    f[i] = 1.0;
    probe(f);
  }
  // Random functions with range at most 1 (1-Lipschitz in Hamming).
  for (int c = 0; c < candidates; ++c) {
    for (auto& v : f) v = rng.uniform();
    probe(f);
  }
  out.pass = out.worst_margin >= -1e-12;
  return out;
}

namespace {

// Alternating minimization of I(X;Y) + E[c'(X,Y)] with the modified cost
// c'(x,y) = ln M(y) + eta d(x,y), for a fixed multiplier eta.
struct ScalarizedSolution {
  double objective = 0.0;   // I + E ln M at the minimizer
  double distortion = 0.0;  // E[d] at the minimizer
};

ScalarizedSolution solve_scalarized(std::span<const double> px,
                                    std::span<const double> ln_mass,
                                    const std::vector<double>& d, double eta,
                                    size_t k) {
  std::vector<double> q(k, 1.0 / static_cast<double>(k));
  std::vector<double> kernel(k * k, 0.0);
  for (int iter = 0; iter < 2000; ++iter) {
    double delta_q = 0.0;
    for (size_t x = 0; x < k; ++x) {
      double z = 0.0;
      for (size_t y = 0; y < k; ++y) {
        kernel[x * k + y] =
            q[y] * std::exp(-ln_mass[y] - eta * d[x * k + y]);
        z += kernel[x * k + y];
      }
      for (size_t y = 0; y < k; ++y) kernel[x * k + y] /= z;
    }
    std::vector<double> q_new(k, 0.0);
    for (size_t x = 0; x < k; ++x) {
      for (size_t y = 0; y < k; ++y) q_new[y] += px[x] * kernel[x * k + y];
    }
    for (size_t y = 0; y < k; ++y) delta_q = std::max(delta_q, std::fabs(q_new[y] - q[y]));
    q = std::move(q_new);
    if (delta_q < 1e-13) break;
  }
  ScalarizedSolution out;
  for (size_t x = 0; x < k; ++x) {
    for (size_t y = 0; y < k; ++y) {
      const double j = px[x] * kernel[x * k + y];
      if (j == 0.0) continue;
      out.objective += j * (std::log(kernel[x * k + y] / q[y]) + ln_mass[y]);
      out.distortion += j * d[x * k + y];
    }
  }
  return out;
}

}  // namespace

RateFunctionResult rate_function(const FiniteDistribution& P,
                                 std::span<const double> mass, double delta,
                                 const std::vector<double>* cost) {
  P.validate();
  const size_t k = P.size();
  if (k > 8) throw std::invalid_argument("rate_function: alphabet cap exceeded");
  if (mass.size() != k) throw std::invalid_argument("rate_function: mass size mismatch");
  if (delta < 0.0) throw std::invalid_argument("rate_function: delta < 0");
  std::vector<double> ln_mass(k);
  for (size_t i = 0; i < k; ++i) {
    if (!(mass[i] > 0.0)) throw std::invalid_argument("rate_function: mass must be positive");
    ln_mass[i] = std::log(mass[i]);
  }
  std::vector<double> d;
  if (cost) {
    if (cost->size() != k * k) throw std::invalid_argument("rate_function: cost size mismatch");
    d = *cost;
  } else {
    d.assign(k * k, 1.0);
    for (size_t i = 0; i < k; ++i) d[i * k + i] = 0.0;
  }

  RateFunctionResult out;
  if (delta < 1e-12) {
    // Deterministic coupling forced: Y = X.
    double v = 0.0;
    for (size_t i = 0; i < k; ++i) {
      if (P.probs[i] > 0.0) v += P.probs[i] * (std::log(P.probs[i]) * -1.0 + ln_mass[i]);
    }
    out.value = v;
    return out;
  }

  // Lagrangian dual g(eta) = min_Q [I + E ln M + eta (E d - delta)] is
  // concave in eta; sweep log-spaced multipliers, then golden refinement.
  auto dual = [&](double eta) {
    const auto sol = solve_scalarized(P.probs, ln_mass, d, eta, k);
    return sol.objective + eta * (sol.distortion - delta);
  };
  double best = dual(0.0), best_eta = 0.0;
  for (int i = 0; i < 31; ++i) {
    const double eta = std::pow(10.0, -3.0 + 6.0 * i / 30.0);
    const double g = dual(eta);
    if (g > best) {
      best = g;
      best_eta = eta;
    }
  }
  double lo = best_eta / 4.0, hi = best_eta == 0.0 ? 1e-3 : best_eta * 4.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = dual(x1), f2 = dual(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-10 * (1.0 + hi); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = dual(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = dual(x1);
    }
  }
  best = std::max(best, std::max(f1, f2));
  out.value = best;
  return out;
}

}  // namespace comet
