#include "comet/product_space.hpp"

#include <cmath>
#include <stdexcept>

#include "comet/special_functions.hpp"

namespace comet {

ProductSpace::ProductSpace(std::vector<int> arities) : arity(std::move(arities)) {
  if (arity.empty()) throw std::invalid_argument("ProductSpace: no coordinates");
  stride.resize(arity.size());
  size_t s = 1;
  for (size_t i = 0; i < arity.size(); ++i) {
    if (arity[i] < 2) throw std::invalid_argument("ProductSpace: arity < 2");
    stride[i] = s;
    s *= static_cast<size_t>(arity[i]);
    if (s > kProductStateCap) {
      throw std::invalid_argument("ProductSpace: state cap exceeded");
    }
  }
  states = s;
}

std::vector<double> product_measure(const ProductSpace& sp,
                                    const std::vector<std::vector<double>>& pmf) {
  if (pmf.size() != sp.arity.size()) {
    throw std::invalid_argument("product_measure: marginal count mismatch");
  }
  std::vector<double> joint(sp.states, 1.0);
  for (size_t x = 0; x < sp.states; ++x) {
    for (int i = 0; i < sp.n(); ++i) {
      joint[x] *= pmf[i][static_cast<size_t>(sp.digit(x, i))];
    }
  }
  return joint;
}

double joint_kl(const std::vector<double>& Q, const std::vector<double>& P) {
  if (Q.size() != P.size()) throw std::invalid_argument("joint_kl: size mismatch");
  double d = 0.0;
  for (size_t x = 0; x < Q.size(); ++x) {
    if (Q[x] == 0.0) continue;
    if (P[x] == 0.0) return kInf;
    d += Q[x] * std::log(Q[x] / P[x]);
  }
  return std::max(d, 0.0);
}

double erasure_divergence(const ProductSpace& sp, const std::vector<double>& Q,
                          const std::vector<double>& P) {
  if (Q.size() != sp.states || P.size() != sp.states) {
    throw std::invalid_argument("erasure_divergence: size mismatch");
  }
  double total = 0.0;
  for (int i = 0; i < sp.n(); ++i) {
    const int a = sp.arity[i];
    // Enumerate the complementary configuration by fixing digit i to 0.
    for (size_t x = 0; x < sp.states; ++x) {
      if (sp.digit(x, i) != 0) continue;
      double q_rest = 0.0, p_rest = 0.0;
      for (int v = 0; v < a; ++v) {
        q_rest += Q[sp.with_digit(x, i, v)];
        p_rest += P[sp.with_digit(x, i, v)];
      }
      if (q_rest == 0.0) continue;
      for (int v = 0; v < a; ++v) {
        const double qc = Q[sp.with_digit(x, i, v)] / q_rest;
        if (qc == 0.0) continue;
        if (p_rest == 0.0 || P[sp.with_digit(x, i, v)] == 0.0) return kInf;
        const double pc = P[sp.with_digit(x, i, v)] / p_rest;
        total += q_rest * qc * std::log(qc / pc);
      }
    }
  }
  return total;
}

}  // namespace comet
