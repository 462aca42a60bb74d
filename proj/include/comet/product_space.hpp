// Indexing and exact expectation helpers for small product spaces
// (states capped at 4096, matching the exact-enumeration policy).
#ifndef COMET_PRODUCT_SPACE_HPP
#define COMET_PRODUCT_SPACE_HPP

#include <cstddef>
#include <vector>

namespace comet {

inline constexpr size_t kProductStateCap = 4096;

struct ProductSpace {
  std::vector<int> arity;      // arity[i] = alphabet size of coordinate i
  std::vector<size_t> stride;  // mixed-radix strides
  size_t states = 0;

  explicit ProductSpace(std::vector<int> arities);
  int n() const { return static_cast<int>(arity.size()); }
  int digit(size_t index, int coord) const {
    return static_cast<int>(index / stride[coord]) % arity[coord];
  }
  size_t with_digit(size_t index, int coord, int value) const {
    return index + (static_cast<size_t>(value) - digit(index, coord)) * stride[coord];
  }
};

/// Joint law of independent coordinates with the given per-coordinate pmfs.
std::vector<double> product_measure(const ProductSpace& sp,
                                    const std::vector<std::vector<double>>& pmf);

/// Exact D(Q || P) over a common product space, in nats.
double joint_kl(const std::vector<double>& Q, const std::vector<double>& P);

/// Erasure divergence sum_i D(Q_{X_i | rest} || P_{X_i | rest} | Q_rest),
/// computed from the exact conditionals.
double erasure_divergence(const ProductSpace& sp, const std::vector<double>& Q,
                          const std::vector<double>& P);

}  // namespace comet

#endif
