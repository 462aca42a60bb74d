#include "comet/info_measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "comet/special_functions.hpp"

namespace comet {

void FiniteDistribution::validate(double tol) const {
  if (labels.size() != probs.size()) {
    throw std::invalid_argument("FiniteDistribution: label/prob size mismatch");
  }
  if (probs.empty()) throw std::invalid_argument("FiniteDistribution: empty");
  double s = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("FiniteDistribution: negative mass");
    s += p;
  }
  if (std::fabs(s - 1.0) > tol) {
    throw std::invalid_argument("FiniteDistribution: masses do not sum to 1");
  }
}

bool FiniteDistribution::same_labels(const FiniteDistribution& other) const {
  return labels == other.labels;
}

FiniteDistribution FiniteDistribution::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("bernoulli: p outside [0,1]");
  return {{"0", "1"}, {1.0 - p, p}};
}

FiniteDistribution FiniteDistribution::uniform(size_t k) {
  FiniteDistribution d;
  for (size_t i = 0; i < k; ++i) {
    d.labels.push_back("a" + std::to_string(i));
    d.probs.push_back(1.0 / static_cast<double>(k));
  }
  return d;
}

FiniteDistribution FiniteDistribution::from_weights(std::span<const double> w) {
  FiniteDistribution d;
  double s = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw std::invalid_argument("from_weights: negative weight");
    s += x;
  }
  if (!(s > 0.0)) throw std::invalid_argument("from_weights: zero total weight");
  for (size_t i = 0; i < w.size(); ++i) {
    d.labels.push_back("a" + std::to_string(i));
    d.probs.push_back(w[i] / s);
  }
  return d;
}

void FiniteMetricSpace::validate() const {
  if (dist.size() != k * k) throw std::invalid_argument("metric: size mismatch");
  for (size_t i = 0; i < k; ++i) {
    if (d(i, i) != 0.0) throw std::invalid_argument("metric: nonzero diagonal");
    for (size_t j = 0; j < k; ++j) {
      if (!(d(i, j) >= 0.0)) throw std::invalid_argument("metric: negative entry");
      if (std::fabs(d(i, j) - d(j, i)) > 1e-12) {
        throw std::invalid_argument("metric: not symmetric");
      }
      for (size_t l = 0; l < k; ++l) {
        if (d(i, j) > d(i, l) + d(l, j) + 1e-12) {
          throw std::invalid_argument("metric: triangle inequality violated");
        }
      }
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::hamming(size_t k) {
  FiniteMetricSpace s;
  s.k = k;
  s.dist.assign(k * k, 1.0);
  for (size_t i = 0; i < k; ++i) s.dist[i * k + i] = 0.0;
  return s;
}

std::vector<double> Coupling::row_marginal() const {
  std::vector<double> m(k, 0.0);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) m[i] += at(i, j);
  return m;
}

std::vector<double> Coupling::col_marginal() const {
  std::vector<double> m(k, 0.0);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) m[j] += at(i, j);
  return m;
}

TiltResult tilt(const FiniteDistribution& mu, std::span<const double> f,
                double t) {
  mu.validate();
  if (f.size() != mu.size()) throw std::invalid_argument("tilt: f size mismatch");
  // Shift by the maximum of t*f on the support to avoid overflow.
  double shift = -kInf;
  for (size_t i = 0; i < mu.size(); ++i) {
    if (mu.probs[i] > 0.0) shift = std::max(shift, t * f[i]);
  }
  double z = 0.0;
  std::vector<double> w(mu.size(), 0.0);
  for (size_t i = 0; i < mu.size(); ++i) {
    if (mu.probs[i] > 0.0) {
      w[i] = mu.probs[i] * std::exp(t * f[i] - shift);
      z += w[i];
    }
  }
  TiltResult out;
  out.log_mgf = std::log(z) + shift;
  out.dist.labels = mu.labels;
  out.dist.probs.resize(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) out.dist.probs[i] = w[i] / z;
  return out;
}

double kl_divergence(const FiniteDistribution& P, const FiniteDistribution& Q) {
  if (!P.same_labels(Q)) throw std::invalid_argument("kl: label sets differ");
  double d = 0.0;
  for (size_t i = 0; i < P.size(); ++i) {
    const double p = P.probs[i], q = Q.probs[i];
    if (p == 0.0) continue;
    if (q == 0.0) return kInf;
    d += p * std::log(p / q);
  }
  return std::max(d, 0.0);
}

double renyi_divergence(const FiniteDistribution& P,
                        const FiniteDistribution& Q, double alpha) {
  if (!P.same_labels(Q)) throw std::invalid_argument("renyi: label sets differ");
  if (!(alpha > 0.0) || alpha == 1.0) {
    throw std::invalid_argument("renyi: alpha must be positive and != 1");
  }
  // log-sum-exp of alpha ln P + (1-alpha) ln Q over the dominating support.
  double hi = -kInf;
  std::vector<double> terms;
  for (size_t i = 0; i < P.size(); ++i) {
    const double p = P.probs[i], q = Q.probs[i];
    if (p == 0.0) continue;  // contributes 0 for every alpha > 0
    if (q == 0.0) {
      if (alpha > 1.0) return kInf;
      continue;  // alpha in (0,1): P^alpha Q^{1-alpha} vanishes
    }
    const double t = alpha * std::log(p) + (1.0 - alpha) * std::log(q);
    terms.push_back(t);
    hi = std::max(hi, t);
  }
  if (terms.empty()) return kInf;  // supports disjoint
  double s = 0.0;
  for (double t : terms) s += std::exp(t - hi);
  return (std::log(s) + hi) / (alpha - 1.0);
}

TvResult tv_and_w1_hamming(const FiniteDistribution& P,
                           const FiniteDistribution& Q) {
  if (!P.same_labels(Q)) throw std::invalid_argument("tv: label sets differ");
  const size_t k = P.size();
  TvResult out;
  out.coupling.k = k;
  out.coupling.joint.assign(k * k, 0.0);
  double tv = 0.0;
  for (size_t i = 0; i < k; ++i) tv += std::fabs(P.probs[i] - Q.probs[i]);
  tv *= 0.5;
  out.tv = tv;
  // Diagonal carries min(P,Q); the excess mass of P over Q on A = {P > Q}
  // is moved to the deficit atoms proportionally.
  for (size_t i = 0; i < k; ++i) {
    out.coupling.joint[i * k + i] = std::min(P.probs[i], Q.probs[i]);
  }
  if (tv > 0.0) {
    for (size_t i = 0; i < k; ++i) {
      const double ex = P.probs[i] - Q.probs[i];
      if (ex <= 0.0) continue;
      for (size_t j = 0; j < k; ++j) {
        const double df = Q.probs[j] - P.probs[j];
        if (df <= 0.0) continue;
        out.coupling.joint[i * k + j] = ex * df / tv;
      }
    }
  }
  return out;
}

namespace {

// Exact transportation LP via successive shortest augmenting paths on the
// bipartite supply/demand graph. Each augmentation exhausts a supply or a
// demand, so at most 2k-1 rounds run; Bellman-Ford keeps it simple.
struct TransportSolver {
  size_t k;
  const std::vector<double>& cost;  // k x k
  std::vector<double> supply, demand;
  std::vector<double> flow;  // k x k

  TransportSolver(size_t k_, const std::vector<double>& c,
                  std::vector<double> a, std::vector<double> b)
      : k(k_), cost(c), supply(std::move(a)), demand(std::move(b)),
        flow(k_ * k_, 0.0) {}

  // Nodes: 0..k-1 sources, k..2k-1 sinks.
  bool shortest_path(std::vector<int>& prev, std::vector<double>& dist) {
    const size_t nn = 2 * k;
    dist.assign(nn, kInf);
    prev.assign(nn, -1);
    for (size_t i = 0; i < k; ++i) {
      if (supply[i] > 1e-15) dist[i] = 0.0;
    }
    for (size_t round = 0; round + 1 < nn + 1; ++round) {
      bool changed = false;
      for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
          // forward arc i -> j
          if (dist[i] + cost[i * k + j] < dist[k + j] - 1e-18) {
            dist[k + j] = dist[i] + cost[i * k + j];
            prev[k + j] = static_cast<int>(i);
            changed = true;
          }
          // residual arc j -> i, available when flow is positive
          if (flow[i * k + j] > 1e-15 &&
              dist[k + j] - cost[i * k + j] < dist[i] - 1e-18) {
            dist[i] = dist[k + j] - cost[i * k + j];
            prev[i] = static_cast<int>(k + j);
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    return true;
  }

  void solve() {
    double remaining = 0.0;
    for (double s : supply) remaining += s;
    std::vector<int> prev;
    std::vector<double> dist;
    const size_t max_rounds = 64 * k * k + 16;
    for (size_t rounds = 0; remaining > 1e-14 && rounds < max_rounds; ++rounds) {
      shortest_path(prev, dist);
      int sink = -1;
      for (size_t j = 0; j < k; ++j) {
        if (demand[j] > 1e-15 && dist[k + j] < kInf) {
          if (sink < 0 || dist[k + j] < dist[k + sink]) sink = static_cast<int>(j);
        }
      }
      if (sink < 0) break;  // cannot happen for matched totals

      // Trace the path back to its root source; bottleneck is limited by
      // residual flow on backward arcs plus the endpoint supply/demand.
      const int kk = static_cast<int>(k);
      double push = demand[sink];
      int node = kk + sink;
      while (prev[node] != -1) {
        const int p = prev[node];
        if (node < kk) {  // backward arc (k+j) -> i undoes flow (i, j)
          push = std::min(push, flow[node * kk + (p - kk)]);
        }
        node = p;
      }
      push = std::min(push, supply[node]);
      const int root = node;

      node = kk + sink;
      while (prev[node] != -1) {
        const int p = prev[node];
        if (node >= kk) {
          flow[p * kk + (node - kk)] += push;  // forward arc i -> (k+j)
        } else {
          flow[node * kk + (p - kk)] -= push;
        }
        node = p;
      }
      supply[root] -= push;
      demand[sink] -= push;
      remaining -= push;
    }
  }

  double total_cost() const {
    double c = 0.0;
    for (size_t i = 0; i < k * k; ++i) c += flow[i] * cost[i];
    return c;
  }
};

}  // namespace

WassersteinResult wasserstein_p(const FiniteDistribution& P,
                                const FiniteDistribution& Q,
                                const FiniteMetricSpace& space, double p) {
  if (!P.same_labels(Q)) throw std::invalid_argument("wasserstein: label sets differ");
  if (!(p >= 1.0)) throw std::invalid_argument("wasserstein: order p < 1");
  const size_t k = P.size();
  if (space.k != k) throw std::invalid_argument("wasserstein: metric size mismatch");
  if (k > kWassersteinCap) throw std::invalid_argument("wasserstein: size cap exceeded");

  std::vector<double> cost(k * k);
  for (size_t i = 0; i < k * k; ++i) cost[i] = std::pow(space.dist[i], p);

  TransportSolver solver(k, cost, P.probs, Q.probs);
  solver.solve();

  WassersteinResult out;
  out.value = std::pow(std::max(solver.total_cost(), 0.0), 1.0 / p);
  out.coupling.k = k;
  out.coupling.joint = std::move(solver.flow);
  return out;
}

BalanceCoefficient balance_coefficient(const FiniteDistribution& P) {
  P.validate();
  const size_t k = P.size();
  BalanceCoefficient out;
  if (k <= 20) {
    // Exhaustive over subsets; A and its complement tie, so half suffice.
    double best = 0.0;
    const std::uint32_t lim = 1u << (k - 1);
    for (std::uint32_t mask = 1; mask < lim; ++mask) {
      double pa = 0.0;
      for (size_t i = 0; i + 1 < k; ++i) {
        if (mask & (1u << i)) pa += P.probs[i];
      }
      best = std::max(best, std::min(pa, 1.0 - pa));
      const double pa2 = pa + P.probs[k - 1];
      best = std::max(best, std::min(pa2, 1.0 - pa2));
    }
    best = std::max(best, std::min(P.probs[k - 1], 1.0 - P.probs[k - 1]));
    out.value = best;
    out.exact = true;
  } else {
    // Greedy partition: largest mass first into the lighter side.
    std::vector<double> sorted = P.probs;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double a = 0.0, b = 0.0;
    for (double x : sorted) (a <= b ? a : b) += x;
    out.value = std::min(a, b);
    out.exact = false;
  }
  return out;
}

PinskerSuite pinsker_suite(const FiniteDistribution& P,
                           const FiniteDistribution& Q) {
  if (!P.same_labels(Q)) throw std::invalid_argument("pinsker: label sets differ");
  PinskerSuite out;
  out.tv = tv_and_w1_hamming(P, Q).tv;
  const double d = kl_divergence(Q, P);
  const auto bal = balance_coefficient(P);
  out.balance = bal.value;
  out.balance_exact = bal.exact;
  out.pinsker_rhs = std::sqrt(d / 2.0);
  out.ow_rhs = std::sqrt(d / ow_phi(std::min(bal.value, 0.5)));
  return out;
}

double fano_list_bound(double pe, std::int64_t list_cap, std::int64_t alphabet) {
  if (!(pe >= 0.0 && pe <= 1.0)) throw std::domain_error("fano: pe outside [0,1]");
  if (list_cap < 1 || alphabet < 2) throw std::invalid_argument("fano: bad sizes");
  return binary_entropy(pe) + (1.0 - pe) * std::log(static_cast<double>(list_cap)) +
         pe * std::log(static_cast<double>(alphabet));
}

}  // namespace comet
