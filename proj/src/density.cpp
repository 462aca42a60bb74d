#include "comet/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "comet/special_functions.hpp"

namespace comet {

namespace {
constexpr double kTwoPi = 6.2831853071795864769252868;

double std_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(kTwoPi);
}

// Trapezoid on the uniform grid.
double trapz(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (size_t i = 0; i + 1 < x.size(); ++i) {
    s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  }
  return s;
}
}  // namespace

void DensityGrid::validate(double mass_tol) const {
  if (x.size() < 16 || x.size() != p.size() || dp.size() != p.size()) {
    throw std::invalid_argument("DensityGrid: malformed grid");
  }
  for (size_t i = 0; i + 1 < x.size(); ++i) {
    if (!(x[i + 1] > x[i])) throw std::invalid_argument("DensityGrid: grid not increasing");
  }
  for (double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument("DensityGrid: negative density");
  }
  if (std::fabs(integral() - 1.0) > mass_tol) {
    throw std::invalid_argument("DensityGrid: density does not integrate to 1");
  }
}

double DensityGrid::integral() const { return trapz(x, p); }

double DensityGrid::mean() const {
  std::vector<double> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] * p[i];
  return trapz(x, y);
}

double DensityGrid::second_moment() const {
  std::vector<double> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] * x[i] * p[i];
  return trapz(x, y);
}

double DensityGrid::variance() const {
  const double m = mean();
  return second_moment() - m * m;
}

double DensityGrid::entropy() const {
  std::vector<double> y(x.size(), 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (p[i] > 0.0) y[i] = -p[i] * std::log(p[i]);
  }
  return trapz(x, y);
}

double DensityGrid::entropy_power() const {
  return std::exp(2.0 * entropy()) / (kTwoPi * std::exp(1.0));
}

double DensityGrid::fisher_information() const {
  std::vector<double> y(x.size(), 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (p[i] > 1e-300) y[i] = dp[i] * dp[i] / p[i];
  }
  return trapz(x, y);
}

double DensityGrid::kl_to_std_gaussian() const {
  std::vector<double> y(x.size(), 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (p[i] > 0.0) y[i] = p[i] * (std::log(p[i] / std_normal_pdf(x[i])));
  }
  return trapz(x, y);
}

double DensityGrid::relative_fisher_to_std_gaussian() const {
  std::vector<double> y(x.size(), 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (p[i] > 1e-300) {
      const double score = dp[i] / p[i] + x[i];
      y[i] = p[i] * score * score;
    }
  }
  return trapz(x, y);
}

double DensityGrid::renyi_to_std_gaussian(double alpha) const {
  if (!(alpha > 0.0) || alpha == 1.0) {
    throw std::invalid_argument("renyi_to_std_gaussian: bad alpha");
  }
  std::vector<double> y(x.size(), 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    const double g = std_normal_pdf(x[i]);
    if (p[i] > 0.0 && g > 0.0) {
      y[i] = std::exp(alpha * std::log(p[i]) + (1.0 - alpha) * std::log(g));
    }
  }
  return std::log(trapz(x, y)) / (alpha - 1.0);
}

DensityGrid DensityGrid::from_function(const std::function<double(double)>& f,
                                       double a, double b, size_t points,
                                       const std::function<double(double)>* df) {
  if (points < 16 || !(b > a)) throw std::invalid_argument("from_function: bad grid");
  DensityGrid g;
  g.x.resize(points);
  g.p.resize(points);
  g.dp.resize(points);
  const double h = (b - a) / static_cast<double>(points - 1);
  for (size_t i = 0; i < points; ++i) {
    g.x[i] = a + h * static_cast<double>(i);
    g.p[i] = f(g.x[i]);
  }
  if (df) {
    for (size_t i = 0; i < points; ++i) g.dp[i] = (*df)(g.x[i]);
  } else {
    for (size_t i = 0; i < points; ++i) {
      if (i == 0) {
        g.dp[i] = (g.p[1] - g.p[0]) / h;
      } else if (i + 1 == points) {
        g.dp[i] = (g.p[i] - g.p[i - 1]) / h;
      } else {
        g.dp[i] = (g.p[i + 1] - g.p[i - 1]) / (2.0 * h);
      }
    }
  }
  return g;
}

DensityGrid DensityGrid::gaussian(double mean, double var, double a, double b,
                                  size_t points) {
  if (!(var > 0.0)) throw std::invalid_argument("gaussian: var <= 0");
  auto f = [mean, var](double t) {
    return std::exp(-0.5 * (t - mean) * (t - mean) / var) / std::sqrt(kTwoPi * var);
  };
  auto df = std::function<double(double)>([mean, var, f](double t) {
    return -(t - mean) / var * f(t);
  });
  return from_function(f, a, b, points, &df);
}

DensityGrid DensityGrid::gaussian_mixture(double w1, double m1, double v1,
                                          double m2, double v2, double a,
                                          double b, size_t points,
                                          bool standardize) {
  if (!(w1 >= 0.0 && w1 <= 1.0) || !(v1 > 0.0) || !(v2 > 0.0)) {
    throw std::invalid_argument("gaussian_mixture: bad parameters");
  }
  const double w2 = 1.0 - w1;
  double shift = 0.0, scale = 1.0;
  if (standardize) {
    const double mean = w1 * m1 + w2 * m2;
    const double var = w1 * (v1 + m1 * m1) + w2 * (v2 + m2 * m2) - mean * mean;
    shift = mean;
    scale = std::sqrt(var);
  }
  auto comp = [](double t, double m, double v) {
    return std::exp(-0.5 * (t - m) * (t - m) / v) / std::sqrt(kTwoPi * v);
  };
  auto f = [=](double t) {
    const double u = t * scale + shift;
    return scale * (w1 * comp(u, m1, v1) + w2 * comp(u, m2, v2));
  };
  auto df = std::function<double(double)>([=](double t) {
    const double u = t * scale + shift;
    const double d1 = -(u - m1) / v1 * comp(u, m1, v1);
    const double d2 = -(u - m2) / v2 * comp(u, m2, v2);
    return scale * scale * (w1 * d1 + w2 * d2);
  });
  return from_function(f, a, b, points, &df);
}

GridQuantile::GridQuantile(const DensityGrid& g) : x_(g.x) {
  cdf_.resize(g.x.size(), 0.0);
  for (size_t i = 1; i < g.x.size(); ++i) {
    cdf_[i] = cdf_[i - 1] + 0.5 * (g.p[i - 1] + g.p[i]) * (g.x[i] - g.x[i - 1]);
  }
  const double total = cdf_.back();
  for (double& c : cdf_) c /= total;
}

double GridQuantile::operator()(double u) const {
  if (u <= cdf_.front()) return x_.front();
  if (u >= cdf_.back()) return x_.back();
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  const size_t i = static_cast<size_t>(it - cdf_.begin());
  const double c0 = cdf_[i - 1], c1 = cdf_[i];
  if (c1 == c0) return x_[i];
  const double t = (u - c0) / (c1 - c0);
  return x_[i - 1] + t * (x_[i] - x_[i - 1]);
}

double w2_to_std_gaussian(const DensityGrid& g) {
  GridQuantile q(g);
  // W2^2 = int (F^{-1}(Phi(z)) - z)^2 phi(z) dz over a wide z-range.
  const size_t m = 4001;
  const double a = -8.5, b = 8.5;
  const double h = (b - a) / static_cast<double>(m - 1);
  double acc = 0.0;
  double prev = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double z = a + h * static_cast<double>(i);
    const double u = 0.5 * std::erfc(-z / std::sqrt(2.0));
    const double diff = q(u) - z;
    const double val = diff * diff * std_normal_pdf(z);
    if (i > 0) acc += 0.5 * (prev + val) * h;
    prev = val;
  }
  return std::sqrt(std::max(acc, 0.0));
}

}  // namespace comet
