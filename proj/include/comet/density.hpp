// One-dimensional densities on explicit grids, used by the Gaussian
// log-Sobolev corollaries. The Gaussian reference is always evaluated
// analytically, never gridded.
#ifndef COMET_DENSITY_HPP
#define COMET_DENSITY_HPP

#include <functional>
#include <vector>

namespace comet {

struct DensityGrid {
  std::vector<double> x;   // strictly increasing, uniform spacing
  std::vector<double> p;   // density values >= 0
  std::vector<double> dp;  // derivative of p on the grid

  double step() const { return x[1] - x[0]; }
  void validate(double mass_tol = 1e-6) const;

  double integral() const;
  double mean() const;
  double second_moment() const;
  double variance() const;

  /// Differential entropy -int p ln p (nats).
  double entropy() const;
  /// Entropy power exp(2h)/(2 pi e).
  double entropy_power() const;
  /// Fisher information int (p'/p)^2 p.
  double fisher_information() const;
  /// D(P || G) against the standard Gaussian, analytic reference.
  double kl_to_std_gaussian() const;
  /// Relative Fisher information I(P || G) = int p (p'/p + x)^2.
  double relative_fisher_to_std_gaussian() const;
  /// Renyi divergence D_alpha(P || G), alpha > 0, alpha != 1.
  double renyi_to_std_gaussian(double alpha) const;

  /// Sample density from a function; derivative by analytic callback when
  /// given, otherwise by central differences.
  static DensityGrid from_function(const std::function<double(double)>& f,
                                   double a, double b, size_t points,
                                   const std::function<double(double)>* df = nullptr);
  static DensityGrid gaussian(double mean, double var, double a, double b,
                              size_t points);
  /// Two-component Gaussian mixture, optionally standardized to zero mean
  /// and unit variance.
  static DensityGrid gaussian_mixture(double w1, double m1, double v1,
                                      double m2, double v2, double a, double b,
                                      size_t points, bool standardize);
};

/// Quantile function of the grid density by monotone interpolation of the
/// cumulative integral.
class GridQuantile {
 public:
  explicit GridQuantile(const DensityGrid& g);
  double operator()(double u) const;  // u in (0,1)

 private:
  std::vector<double> x_, cdf_;
};

/// W2(P, G) through the quantile coupling against the standard Gaussian.
double w2_to_std_gaussian(const DensityGrid& g);

}  // namespace comet

#endif
