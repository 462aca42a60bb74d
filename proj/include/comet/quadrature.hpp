// Composite adaptive Simpson quadrature with Richardson-style refinement.
#ifndef COMET_QUADRATURE_HPP
#define COMET_QUADRATURE_HPP

#include <functional>

namespace comet {

struct QuadratureResult {
  double value = 0.0;
  bool converged = true;
};

/// Adaptive Simpson on [a, b] to the given absolute tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-8,
                           int max_depth = 40);

}  // namespace comet

#endif
