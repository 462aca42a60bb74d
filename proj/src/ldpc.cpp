#include "comet/ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "comet/special_functions.hpp"
#include "comet/tail_bounds.hpp"

namespace comet {

DegreeDistribution DegreeDistribution::regular(int d_v, int d_c) {
  if (d_v < 2 || d_c < 2) throw std::invalid_argument("regular: degrees < 2");
  DegreeDistribution dd;
  dd.lambda[d_v] = 1.0;
  dd.rho[d_c] = 1.0;
  return dd;
}

void DegreeDistribution::validate(double tol) const {
  double sl = 0.0, sr = 0.0;
  for (const auto& [i, v] : lambda) {
    if (i < 1 || v < 0.0) throw std::invalid_argument("lambda: bad coefficient");
    sl += v;
  }
  for (const auto& [i, v] : rho) {
    if (i < 1 || v < 0.0) throw std::invalid_argument("rho: bad coefficient");
    sr += v;
  }
  if (std::fabs(sl - 1.0) > tol || std::fabs(sr - 1.0) > tol) {
    throw std::invalid_argument("degree distribution does not sum to 1");
  }
}

double DegreeDistribution::int_lambda() const {
  double s = 0.0;
  for (const auto& [i, v] : lambda) s += v / static_cast<double>(i);
  return s;
}

double DegreeDistribution::int_rho() const {
  double s = 0.0;
  for (const auto& [i, v] : rho) s += v / static_cast<double>(i);
  return s;
}

double DegreeDistribution::design_rate() const {
  return 1.0 - int_rho() / int_lambda();
}

double DegreeDistribution::avg_right_degree() const { return 1.0 / int_rho(); }

int DegreeDistribution::max_right_degree() const {
  int m = 0;
  for (const auto& [i, v] : rho) {
    if (v > 0.0) m = std::max(m, i);
  }
  return m;
}

double DegreeDistribution::rho_prime1() const {
  double s = 0.0;
  for (const auto& [i, v] : rho) s += static_cast<double>(i - 1) * v;
  return s;
}

double DegreeDistribution::lambda_at(double x) const {
  double s = 0.0;
  for (const auto& [i, v] : lambda) s += v * std::pow(x, i - 1);
  return s;
}

double DegreeDistribution::rho_at(double x) const {
  double s = 0.0;
  for (const auto& [i, v] : rho) s += v * std::pow(x, i - 1);
  return s;
}

std::map<int, double> DegreeDistribution::check_node_fractions() const {
  const double a = avg_right_degree();
  std::map<int, double> g;
  for (const auto& [i, v] : rho) g[i] = a * v / static_cast<double>(i);
  return g;
}

DegreeStats degree_stats(const DegreeDistribution& dd) {
  dd.validate();
  DegreeStats out;
  out.R_d = dd.design_rate();
  out.a_R = dd.avg_right_degree();
  out.Gamma = dd.check_node_fractions();
  double lhs = 0.0;
  for (const auto& [i, g] : out.Gamma) {
    lhs += static_cast<double>(i + 1) * static_cast<double>(i + 1) * g;
  }
  const double rhs = (dd.rho_prime1() + 3.0) * out.a_R + 1.0;
  out.identity_check = std::fabs(lhs - rhs);
  return out;
}

MinDistanceInterval min_distance_interval(std::int64_t n, double R, double alpha) {
  if (n < 1 || !(R > 0.0 && R < 1.0) || alpha < 0.0) {
    throw std::invalid_argument("min_distance_interval: bad parameters");
  }
  MinDistanceInterval out;
  const double center = static_cast<double>(n) * binary_entropy_inv(1.0 - R);
  const double half = alpha * std::sqrt(static_cast<double>(n));
  out.lo = center - half;
  out.hi = center + half;
  out.confidence = 1.0 - 2.0 * std::exp(-alpha * alpha / 2.0);
  out.vacuous = out.confidence <= 0.0;
  return out;
}

double CyclesBound::probability_at(std::int64_t n) const {
  if (zero) return 0.0;
  return 2.0 * std::exp2(-exponent_bits * static_cast<double>(n));
}

CyclesBound cycles_bound(const DegreeDistribution& dd, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("cycles_bound: alpha < 0");
  dd.validate();
  CyclesBound out;
  out.eta = alpha / ((1.0 - dd.design_rate()) * dd.avg_right_degree());
  if (out.eta > 1.0) {
    out.zero = true;
    out.exponent_bits = kInf;
    out.exponent_nats = kInf;
  } else {
    out.exponent_bits =
        1.0 - binary_entropy((1.0 - out.eta) / 2.0, LogBase::two);
    out.exponent_nats = f_delta(out.eta);
  }
  out.azuma_exponent_nats = out.eta * out.eta / 2.0;
  return out;
}

double parity_entropy_bound(int r, double C, BinaryInputChannel channel) {
  if (r < 1) throw std::invalid_argument("parity_entropy_bound: r < 1");
  if (!(C > 0.0 && C <= 1.0)) {
    throw std::invalid_argument("parity_entropy_bound: C outside (0,1]");
  }
  switch (channel) {
    case BinaryInputChannel::MBIOS:
      return binary_entropy((1.0 - std::pow(C, r / 2.0)) / 2.0, LogBase::two);
    case BinaryInputChannel::BSC: {
      const double g = 1.0 - 2.0 * binary_entropy_inv(1.0 - C);
      return binary_entropy((1.0 - std::pow(g, r)) / 2.0, LogBase::two);
    }
    case BinaryInputChannel::BEC:
      return 1.0 - std::pow(C, r);
  }
  throw std::logic_error("parity_entropy_bound: unknown channel");
}

CondEntropyConcentration cond_entropy_concentration(const DegreeDistribution& dd,
                                                    double C,
                                                    BinaryInputChannel channel) {
  dd.validate();
  CondEntropyConcentration out;
  const double one_minus_rate = 1.0 - dd.design_rate();
  const int dc_max = dd.max_right_degree();
  out.B_orig = 1.0 / (2.0 * (dc_max + 1.0) * (dc_max + 1.0) * one_minus_rate);
  double weighted = 0.0;
  for (const auto& [i, g] : dd.check_node_fractions()) {
    const double h = parity_entropy_bound(i, C, channel);
    weighted += static_cast<double>(i + 1) * static_cast<double>(i + 1) * g * h * h;
  }
  out.B_tight = 1.0 / (2.0 * one_minus_rate * weighted);
  out.factor = out.B_tight / out.B_orig;
  return out;
}

namespace {

// x / lambda(1 - rho(1-x)) on the numerical search domain [1e-3, 1].
constexpr double kThresholdFloor = 1e-3;

double threshold_ratio(const DegreeDistribution& dd, double x) {
  const double denom = dd.lambda_at(1.0 - dd.rho_at(1.0 - x));
  return denom > 0.0 ? x / denom : kInf;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-10) {
    if (f1 > f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::min({f(lo), f1, f2, f(hi)});
}

}  // namespace

BpThreshold bec_bp_threshold(const DegreeDistribution& dd) {
  dd.validate();
  auto ratio = [&dd](double x) { return threshold_ratio(dd, x); };
  BpThreshold out;
  if (dd.lambda.size() == 1 && dd.rho.size() == 1) {
    out.p_bp = golden_min(ratio, kThresholdFloor, 1.0);
  } else {
    // Scan for the best bracket, then refine; the ratio need not be
    // unimodal for irregular ensembles.
    const int grid = 1000;
    double best = kInf;
    int best_i = 0;
    for (int i = 0; i <= grid; ++i) {
      const double x = kThresholdFloor +
                       (1.0 - kThresholdFloor) * static_cast<double>(i) / grid;
      const double v = ratio(x);
      if (v < best) {
        best = v;
        best_i = i;
      }
    }
    const double step = (1.0 - kThresholdFloor) / grid;
    const double lo = std::max(kThresholdFloor, kThresholdFloor + (best_i - 1) * step);
    const double hi = std::min(1.0, kThresholdFloor + (best_i + 1) * step);
    out.p_bp = golden_min(ratio, lo, hi);
    out.bracketed = best_i > 0 && best_i < grid;
  }
  out.capacity = 1.0 - out.p_bp;
  return out;
}

ExpanderBound expander_bound(std::int64_t n, int l, int r, double alpha,
                             double delta) {
  if (n < 1 || l < 1 || r < 1) throw std::invalid_argument("expander: bad degrees");
  if (!(alpha > 0.0 && alpha < 1.0) || !(delta > 0.0)) {
    throw std::invalid_argument("expander: alpha outside (0,1) or delta <= 0");
  }
  ExpanderBound out;
  const double nn = static_cast<double>(n);
  out.expected_neighbors =
      nn * l * (1.0 - std::pow(1.0 - alpha, r)) / static_cast<double>(r);
  const double slack =
      nn * std::sqrt(2.0 * l * alpha * (binary_entropy(alpha) + delta));
  out.value = out.expected_neighbors - slack;
  if (out.value < 0.0) {
    out.value = 0.0;
    out.vacuous = true;
  }
  return out;
}

IsiParams isi_params(const IsiSpec& spec, std::optional<double> n_v,
                     std::optional<double> n_c) {
  if (spec.d_v < 2 || spec.d_c < 2 || spec.W < 0 || spec.I < 0 || spec.ell < 1) {
    throw std::invalid_argument("isi_params: bad spec");
  }
  IsiParams out;
  const double dv = spec.d_v, dc = spec.d_c, w = spec.W;
  out.alpha_growth = (dv - 1.0 + 2.0 * w * dv) * (dc - 1.0);
  double geo = 0.0, pw = 1.0;
  for (int i = 0; i < spec.ell; ++i) {
    geo += pw;
    pw *= out.alpha_growth;
  }
  out.N_e = 1.0 + dc * (dv - 1.0 + 2.0 * w * dv) * geo;
  out.N_Y = (2.0 * w + 1.0) * dv * geo;
  out.inv_beta = 8.0 * (4.0 * dv * out.N_e * out.N_e + out.N_Y * out.N_Y) / (dv * dv);
  out.beta = 1.0 / out.inv_beta;
  if (n_v && n_c) {
    out.gamma = (*n_v) * (*n_v) + (dc / dv * (*n_c)) * (dc / dv * (*n_c));
  }
  return out;
}

}  // namespace comet
