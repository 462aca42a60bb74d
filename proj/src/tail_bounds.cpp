#include "comet/tail_bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "comet/special_functions.hpp"

namespace comet {

namespace {
constexpr double kLn2 = 0.6931471805599453094172321;

double sum_squares(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) {
    if (x < 0.0) throw std::invalid_argument("negative coefficient");
    s += x * x;
  }
  return s;
}
}  // namespace

void MartingaleSpec::validate() const {
  if (n < 1) throw std::invalid_argument("MartingaleSpec: n < 1");
  if (!(d > 0.0)) throw std::invalid_argument("MartingaleSpec: d <= 0");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("MartingaleSpec: sigma2 <= 0");
  if (sigma2 > d * d * (1.0 + 1e-12)) {
    throw std::invalid_argument("MartingaleSpec: sigma2 > d^2");
  }
}

double MomentSequence::gamma(int l) const {
  if (l < 2 || l > max_order()) {
    throw std::out_of_range("MomentSequence::gamma: order out of range");
  }
  return mu[static_cast<size_t>(l) - 2] / std::pow(d, l);
}

void MomentSequence::validate() const {
  if (!(d > 0.0)) throw std::invalid_argument("MomentSequence: d <= 0");
  if (mu.empty() || !(mu[0] > 0.0)) {
    throw std::invalid_argument("MomentSequence: mu_2 missing or <= 0");
  }
  if (max_order() % 2 != 0) {
    throw std::invalid_argument("MomentSequence: max order m must be even");
  }
  for (double m : mu) {
    if (!std::isfinite(m)) throw std::invalid_argument("MomentSequence: non-finite moment");
  }
}

double azuma_bound(double r, std::span<const double> d_list) {
  if (r < 0.0) throw std::invalid_argument("azuma_bound: r < 0");
  const double s = sum_squares(d_list);
  if (s == 0.0) return r > 0.0 ? 0.0 : 2.0;
  return 2.0 * std::exp(-r * r / (2.0 * s));
}

double mcdiarmid_bound(double r, std::span<const double> c_list) {
  if (r < 0.0) throw std::invalid_argument("mcdiarmid_bound: r < 0");
  const double s = sum_squares(c_list);
  if (s == 0.0) return r > 0.0 ? 0.0 : 2.0;
  return 2.0 * std::exp(-2.0 * r * r / s);
}

HoeffdingKearnsSaul hoeffding_kearns_saul(double r,
                                          std::span<const BoundedInterval> iv) {
  if (r < 0.0) throw std::invalid_argument("hoeffding_kearns_saul: r < 0");
  HoeffdingKearnsSaul out;
  double width2 = 0.0;  // sum (b-a)^2
  double ks_sum = 0.0;  // sum c_k (b-a)^2
  for (const auto& i : iv) {
    if (!(i.a <= i.b)) throw std::invalid_argument("interval with a > b");
    if (!i.mean.has_value()) {
      throw std::invalid_argument("Kearns-Saul requires interval means");
    }
    const double w = i.b - i.a;
    if (w == 0.0) continue;
    const double p = (*i.mean - i.a) / w;
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("interval mean outside [a,b]");
    }
    double ck;
    if (p == 0.0 || p == 1.0) {
      ck = 0.0;  // limit of (1-2p)/(4 ln((1-p)/p)) as p -> {0,1}
      out.degenerate = true;
    } else if (std::fabs(p - 0.5) < 1e-9) {
      ck = 0.125;
    } else {
      ck = (1.0 - 2.0 * p) / (4.0 * std::log((1.0 - p) / p));
    }
    width2 += w * w;
    ks_sum += ck * w * w;
  }
  out.hoeffding = width2 == 0.0 ? (r > 0.0 ? 0.0 : 2.0)
                                : 2.0 * std::exp(-2.0 * r * r / width2);
  out.kearns_saul = ks_sum == 0.0 ? (r > 0.0 ? 0.0 : 2.0)
                                  : 2.0 * std::exp(-r * r / (4.0 * ks_sum));
  return out;
}

double f_delta(double delta) {
  if (delta < 0.0) throw std::invalid_argument("f_delta: delta < 0");
  if (delta > 1.0) return kInf;
  return kLn2 * (1.0 - binary_entropy((1.0 - delta) / 2.0, LogBase::two));
}

double refined_exponent(double gamma, double delta) {
  if (!(gamma > 0.0)) throw std::invalid_argument("refined_exponent: gamma <= 0");
  return binary_divergence((delta + gamma) / (1.0 + gamma),
                           gamma / (1.0 + gamma));
}

double refined_bound(const MartingaleSpec& spec, double alpha, TailSide side) {
  spec.validate();
  if (alpha < 0.0) throw std::invalid_argument("refined_bound: alpha < 0");
  const double factor = side == TailSide::two_sided ? 2.0 : 1.0;
  const double g = spec.gamma();
  const double delta = spec.delta(alpha);
  if (delta > 1.0 + 1e-12) return 0.0;
  if (std::fabs(delta - 1.0) < 1e-12) {
    // Exact limit expression; the divergence form is +inf-adjacent here.
    return std::exp(static_cast<double>(spec.n) * std::log(g / (1.0 + g)));
  }
  return factor *
         std::exp(-static_cast<double>(spec.n) * refined_exponent(g, delta));
}

SmallDeviation small_deviation_bound(const MartingaleSpec& spec, double alpha) {
  spec.validate();
  if (alpha < 0.0) throw std::invalid_argument("small_deviation_bound: alpha < 0");
  const double g = spec.gamma();
  const double delta = spec.delta(alpha);
  const double delta_n = delta / std::sqrt(static_cast<double>(spec.n));
  SmallDeviation out;
  out.leading_exponent = delta * delta / (2.0 * g);
  if (delta_n > 1.0) {
    out.bound = 0.0;
  } else {
    out.bound =
        2.0 * std::exp(-static_cast<double>(spec.n) * refined_exponent(g, delta_n));
  }
  return out;
}

double bennett_mgf_bound(double lambda, double xbar, double b, double sigma2) {
  if (lambda < 0.0) throw std::invalid_argument("bennett_mgf_bound: lambda < 0");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("bennett_mgf_bound: sigma2 <= 0");
  if (xbar > b) throw std::invalid_argument("bennett_mgf_bound: xbar > b");
  const double w = b - xbar;
  if (w == 0.0) return std::exp(lambda * xbar);
  const double w2 = w * w;
  return std::exp(lambda * xbar) *
         (w2 * std::exp(-lambda * sigma2 / w) + sigma2 * std::exp(lambda * w)) /
         (w2 + sigma2);
}

MgfBounds mgf_moment_bounds(double t, std::int64_t n,
                            const MomentSequence& moments) {
  if (t < 0.0) throw std::invalid_argument("mgf_moment_bounds: t < 0");
  if (n < 1) throw std::invalid_argument("mgf_moment_bounds: n < 1");
  moments.validate();
  const double td = t * moments.d;
  const double g2 = moments.gamma(2);
  MgfBounds out;
  out.gamma_bound = std::exp(
      n * std::log((std::exp(-g2 * td) + g2 * std::exp(td)) / (1.0 + g2)));

  const int m = moments.max_order();
  const double gm = moments.gamma(m);
  double base = 1.0 + gm * (std::expm1(td) - td);
  double power = 1.0;  // (td)^l / l!
  for (int l = 2; l <= m - 1; ++l) {
    power = l == 2 ? td * td / 2.0 : power * td / l;
    base += (moments.gamma(l) - gm) * power;
  }
  out.moment_bound = std::exp(n * std::log(base));
  return out;
}

MdpExponents mdp_compare(double eta, double alpha, double d, double sigma2) {
  if (!(eta > 0.5 && eta < 1.0)) {
    throw std::invalid_argument("mdp_compare: eta outside (1/2, 1)");
  }
  if (alpha < 0.0 || !(d > 0.0) || !(sigma2 > 0.0)) {
    throw std::invalid_argument("mdp_compare: bad parameters");
  }
  MdpExponents out;
  out.azuma = -alpha * alpha / (2.0 * d * d);
  out.refined = -alpha * alpha / (2.0 * sigma2);
  out.mdp = out.refined;
  return out;
}

}  // namespace comet
