#include "comet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "comet/special_functions.hpp"

namespace comet {

namespace {
constexpr double kPi = 3.1415926535897932384626434;

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol = 1e-10) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
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
  return std::max({f(lo), f1, f2, f(hi)});
}
}  // namespace

double biawgn_rate(double snr) {
  if (snr < 0.0) throw std::invalid_argument("biawgn_rate: snr < 0");
  return snr / 4.0 - log_cosh(snr / 4.0);
}

double biawgn_capacity_term(double snr, int i) {
  // |(-1)^i / (i(i+1))| exp(2 i (i+1) snr) Q((1+2i) sqrt(snr))
  const double di = static_cast<double>(i);
  const double arg = (1.0 + 2.0 * di) * std::sqrt(snr);
  const double ln_t = 2.0 * di * (di + 1.0) * snr + log_gaussian_q(arg) -
                      std::log(di * (di + 1.0));
  return std::exp(ln_t);
}

SeriesValue biawgn_capacity(double snr, int terms) {
  if (snr < 0.0) throw std::invalid_argument("biawgn_capacity: snr < 0");
  if (terms < 1) throw std::invalid_argument("biawgn_capacity: terms < 1");
  SeriesValue out;
  const double q0 = snr == 0.0 ? 0.5 : std::exp(log_gaussian_q(std::sqrt(snr)));
  double c = std::log(2.0) + (2.0 * snr - 1.0) * q0 -
             std::sqrt(2.0 * snr / kPi) * std::exp(-snr / 2.0);
  for (int i = 1; i <= terms; ++i) {
    const double t = biawgn_capacity_term(snr, i);
    c += (i % 2 == 0 ? t : -t);
  }
  out.value = c;
  out.remainder_bound = biawgn_capacity_term(snr, terms + 1);
  return out;
}

void VolterraKernel::validate() const {
  if (order < 1 || order > 3) throw std::invalid_argument("kernel: order outside [1,3]");
  if (memory < 0) throw std::invalid_argument("kernel: negative memory");
  auto check_index = [this](int i) {
    if (i < 0 || i > memory) throw std::invalid_argument("kernel: tap outside [0,q]");
  };
  for (const auto& [i, v] : h1) check_index(i);
  for (const auto& [ij, v] : h2) {
    check_index(ij.first);
    check_index(ij.second);
    if (order < 2 && v != 0.0) throw std::invalid_argument("kernel: h2 above order");
  }
  for (const auto& [ijk, v] : h3) {
    check_index(std::get<0>(ijk));
    check_index(std::get<1>(ijk));
    check_index(std::get<2>(ijk));
    if (order < 3 && v != 0.0) throw std::invalid_argument("kernel: h3 above order");
  }
}

double VolterraKernel::output(std::span<const double> window) const {
  // window holds u_{t-q} .. u_t; tap i reads u_{t-i}.
  const size_t last = window.size() - 1;
  auto tap = [&](int i) { return window[last - static_cast<size_t>(i)]; };
  double y = h0;
  for (const auto& [i, v] : h1) y += v * tap(i);
  for (const auto& [ij, v] : h2) y += v * tap(ij.first) * tap(ij.second);
  for (const auto& [ijk, v] : h3) {
    y += v * tap(std::get<0>(ijk)) * tap(std::get<1>(ijk)) * tap(std::get<2>(ijk));
  }
  return y;
}

VolterraKernel reference_third_order_kernel() {
  VolterraKernel k;
  k.order = 3;
  k.memory = 2;
  k.h1 = {{0, 1.0}, {1, 0.5}, {2, -0.8}};
  k.h2 = {{{0, 0}, 1.0}, {{1, 1}, -0.3}, {{0, 1}, 0.6}};
  k.h3 = {{{0, 0, 0}, 1.0}, {{1, 1, 1}, -0.5}, {{0, 0, 1}, 1.2},
          {{0, 1, 1}, 0.8}, {{0, 1, 2}, 0.6}};
  return k;
}

std::vector<double> volterra_apply(const VolterraKernel& kernel,
                                   std::span<const double> u) {
  kernel.validate();
  const int q = kernel.memory;
  std::vector<double> padded(static_cast<size_t>(q), 0.0);
  padded.insert(padded.end(), u.begin(), u.end());
  std::vector<double> y(u.size());
  for (size_t t = 0; t < u.size(); ++t) {
    y[t] = kernel.output(std::span<const double>(padded).subspan(t, q + 1));
  }
  return y;
}

namespace {

// Exhaustive steady-state enumeration support. Window positions 0..q map to
// times k-q..k; each position carries a pair (u, u~) encoded in two bits.
struct VolterraEnumerator {
  const VolterraKernel& kernel;
  int q;
  double A;
  double w_plus, w_minus;
  std::vector<double> g_table;  // squared output gap per full (q+1)-window

  VolterraEnumerator(const VolterraKernel& k, double amp, double alpha_plus)
      : kernel(k), q(k.memory), A(amp), w_plus(alpha_plus), w_minus(1.0 - alpha_plus) {
    const size_t windows = size_t{1} << (2 * (q + 1));
    g_table.resize(windows);
    std::vector<double> wu(static_cast<size_t>(q) + 1), wt(static_cast<size_t>(q) + 1);
    for (size_t code = 0; code < windows; ++code) {
      for (int pos = 0; pos <= q; ++pos) {
        wu[static_cast<size_t>(pos)] = bit(code, pos, false) ? A : -A;
        wt[static_cast<size_t>(pos)] = bit(code, pos, true) ? A : -A;
      }
      const double gap = kernel.output(wu) - kernel.output(wt);
      g_table[code] = gap * gap;
    }
  }

  static bool bit(size_t code, int pos, bool tilde) {
    return (code >> (2 * pos + (tilde ? 1 : 0))) & 1;
  }
  double pair_weight(size_t code, int pos) const {
    return (bit(code, pos, false) ? w_plus : w_minus) *
           (bit(code, pos, true) ? w_plus : w_minus);
  }

  // E[g_{k+j} | window pairs], averaging over j future steps. The window of
  // g_{k+j} spans positions j..q of the known window plus the j futures.
  double partial_mean(size_t known, int j) const {
    const size_t futures = size_t{1} << (2 * j);
    double acc = 0.0;
    for (size_t fut = 0; fut < futures; ++fut) {
      // Assemble the (q+1)-window for g_{k+j}: known positions j..q shift
      // down to 0..q-j, futures occupy q-j+1..q.
      size_t code = (known >> (2 * j)) | (fut << (2 * (q + 1 - j)));
      double w = 1.0;
      for (int pos = 0; pos < j; ++pos) {
        w *= (((fut >> (2 * pos)) & 1) ? w_plus : w_minus) *
             (((fut >> (2 * pos + 1)) & 1) ? w_plus : w_minus);
      }
      acc += w * g_table[code];
    }
    return acc;
  }

  // Z_k as a function of the known window (pairs at positions 0..q).
  double jump(size_t known) const {
    double z = 0.0;
    for (int j = 0; j <= q; ++j) {
      const double b = partial_mean(known, j);
      // Average over the last pair (position q) to condition one step back.
      double a = 0.0;
      for (int last = 0; last < 4; ++last) {
        const size_t code =
            (known & ~(size_t{3} << (2 * q))) | (static_cast<size_t>(last) << (2 * q));
        a += pair_weight(code, q) * partial_mean(code, j);
      }
      z += a - b;
    }
    return z;
  }
};

}  // namespace

VolterraParams volterra_martingale_params(const VolterraKernel& kernel, double A,
                                          double alpha_plus, int m) {
  kernel.validate();
  if (!(A > 0.0)) throw std::invalid_argument("volterra_params: A <= 0");
  if (!(alpha_plus > 0.0 && alpha_plus < 1.0)) {
    throw std::invalid_argument("volterra_params: alpha outside (0,1)");
  }
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("volterra_params: m must be even >= 2");
  const int q = kernel.memory;
  if (q > kVolterraMemoryCap) {
    throw std::invalid_argument("volterra_params: memory cap exceeded");
  }
  VolterraEnumerator en(kernel, A, alpha_plus);
  VolterraParams out;

  // Steady-state signal variance over a single word's window.
  {
    const size_t windows = size_t{1} << (q + 1);
    std::vector<double> w(static_cast<size_t>(q) + 1);
    double mean = 0.0, mean2 = 0.0;
    for (size_t code = 0; code < windows; ++code) {
      double weight = 1.0;
      for (int pos = 0; pos <= q; ++pos) {
        const bool plus = (code >> pos) & 1;
        w[static_cast<size_t>(pos)] = plus ? A : -A;
        weight *= plus ? alpha_plus : 1.0 - alpha_plus;
      }
      const double y = kernel.output(w);
      mean += weight * y;
      mean2 += weight * y * y;
    }
    out.D_v = mean2 - mean * mean;
  }

  // Edge variances var([D u]_k), k = 1..q, with zero inputs before start.
  for (int k = 1; k <= q; ++k) {
    const size_t combos = size_t{1} << k;
    std::vector<double> u(static_cast<size_t>(k));
    double mean = 0.0, mean2 = 0.0;
    for (size_t code = 0; code < combos; ++code) {
      double weight = 1.0;
      for (int pos = 0; pos < k; ++pos) {
        const bool plus = (code >> pos) & 1;
        u[static_cast<size_t>(pos)] = plus ? A : -A;
        weight *= plus ? alpha_plus : 1.0 - alpha_plus;
      }
      const double y = volterra_apply(kernel, u).back();
      mean += weight * y;
      mean2 += weight * y * y;
    }
    out.edge_variance.push_back(mean2 - mean * mean);
  }

  // Jump values over all known windows; conditional moments over the last
  // pair for every conditioning prefix.
  const size_t known_windows = size_t{1} << (2 * (q + 1));
  std::vector<double> z(known_windows);
  double d = -kInf;
  for (size_t code = 0; code < known_windows; ++code) {
    z[code] = en.jump(code);
    d = std::max(d, z[code]);
  }
  out.d = d;
  std::vector<double> mu(static_cast<size_t>(m) - 1, -kInf);  // mu_2..mu_m
  const size_t prefixes = size_t{1} << (2 * q);
  for (size_t pre = 0; pre < prefixes; ++pre) {
    std::vector<double> moment(static_cast<size_t>(m) - 1, 0.0);
    for (int last = 0; last < 4; ++last) {
      const size_t code = pre | (static_cast<size_t>(last) << (2 * q));
      const double w = en.pair_weight(code, q);
      double p = z[code];
      for (int l = 2; l <= m; ++l) {
        p *= z[code];
        moment[static_cast<size_t>(l) - 2] += w * p;
      }
    }
    for (size_t i = 0; i < moment.size(); ++i) mu[i] = std::max(mu[i], moment[i]);
  }
  out.sigma2 = mu[0];
  for (int l = 2; l <= m; ++l) {
    out.gamma.push_back(mu[static_cast<size_t>(l) - 2] / std::pow(d, l));
  }
  return out;
}

namespace {

// ln((e^{-g y} + g e^{y}) / (1 + g)), stable for large y.
double ln_bennett_base(double g, double y) {
  return y + std::log(g + std::exp(-(1.0 + g) * y)) - std::log1p(g);
}

}  // namespace

double r1_closed_form(double D_v, double d, double gamma2, double sigma_nu2) {
  const double x = d * (1.0 + gamma2) / (8.0 * sigma_nu2);
  // condition D_v < g d (e^x - 1) / (2 (1 + g e^x)), written via e^{-x}
  const double rhs = d * gamma2 * (1.0 - std::exp(-x)) /
                     (2.0 * (std::exp(-x) + gamma2));
  if (D_v < rhs) {
    const double p = gamma2 / (1.0 + gamma2) + 2.0 * D_v / (d * (1.0 + gamma2));
    return binary_divergence(p, gamma2 / (1.0 + gamma2));
  }
  return D_v / (4.0 * sigma_nu2) - ln_bennett_base(gamma2, d / (8.0 * sigma_nu2));
}

double r1_rho_optimized(double D_v, double d, double gamma2, double sigma_nu2) {
  auto objective = [&](double rho) {
    return rho * D_v / (4.0 * sigma_nu2) -
           ln_bennett_base(gamma2, rho * d / (8.0 * sigma_nu2));
  };
  return std::max(0.0, golden_max(objective, 0.0, 1.0));
}

namespace {

double r2_bracket(const VolterraParams& params, double y, int m) {
  const double gm = params.gamma[static_cast<size_t>(m) - 2];
  double base = 1.0 + gm * (std::expm1(y) - y);
  double power = 1.0;
  for (int l = 2; l <= m - 1; ++l) {
    power = l == 2 ? y * y / 2.0 : power * y / l;
    base += (params.gamma[static_cast<size_t>(l) - 2] - gm) * power;
  }
  return base;
}

}  // namespace

AchievableRates achievable_rates(const VolterraParams& params, double sigma_nu2,
                                 int m) {
  if (!(sigma_nu2 > 0.0)) throw std::invalid_argument("achievable_rates: sigma_nu2 <= 0");
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("achievable_rates: m must be even");
  if (params.gamma.size() + 1 < static_cast<size_t>(m)) {
    throw std::invalid_argument("achievable_rates: moment order exceeds params");
  }
  AchievableRates out;
  const double g2 = params.gamma[0];
  out.R1 = std::max(0.0, r1_closed_form(params.D_v, params.d, g2, sigma_nu2));

  auto objective = [&](double rho) {
    const double y = rho * params.d / (8.0 * sigma_nu2);
    const double bracket = r2_bracket(params, y, m);
    if (!(bracket > 0.0)) return -kInf;
    return rho * params.D_v / (4.0 * sigma_nu2) - std::log(bracket);
  };
  double r2 = golden_max(objective, 0.0, 1.0);
  // Golden section assumes unimodality; probe it on a coarse grid and fall
  // back to a dense sweep if the probe wins.
  double probe = -kInf;
  for (int i = 0; i <= 100; ++i) probe = std::max(probe, objective(i / 100.0));
  if (probe > r2 + 1e-12) {
    out.opt_ok = false;
    for (int i = 0; i <= 10000; ++i) r2 = std::max(r2, objective(i / 10000.0));
  }
  out.R2 = std::max(0.0, r2);
  return out;
}

void ChannelMatrix::validate(double tol) const {
  if (t.size() != nx * ny || nx == 0 || ny == 0) {
    throw std::invalid_argument("ChannelMatrix: malformed");
  }
  for (size_t x = 0; x < nx; ++x) {
    double s = 0.0;
    for (size_t y = 0; y < ny; ++y) {
      if (!(at(x, y) >= 0.0)) throw std::invalid_argument("ChannelMatrix: negative entry");
      s += at(x, y);
    }
    if (std::fabs(s - 1.0) > tol) {
      throw std::invalid_argument("ChannelMatrix: row does not sum to 1");
    }
  }
}

bool ChannelMatrix::strictly_positive() const {
  for (double v : t) {
    if (!(v > 0.0)) return false;
  }
  return true;
}

ChannelMatrix ChannelMatrix::bsc(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("bsc: p outside [0,1]");
  ChannelMatrix m;
  m.nx = m.ny = 2;
  m.t = {1.0 - p, p, p, 1.0 - p};
  return m;
}

CapacityResult dmc_capacity(const ChannelMatrix& T, double tol, int max_iters) {
  T.validate();
  CapacityResult out;
  std::vector<double> p(T.nx, 1.0 / static_cast<double>(T.nx));
  std::vector<double> q(T.ny, 0.0);
  std::vector<double> ln_c(T.nx, 0.0);
  for (int iter = 0; iter < max_iters; ++iter) {
    std::fill(q.begin(), q.end(), 0.0);
    for (size_t x = 0; x < T.nx; ++x) {
      for (size_t y = 0; y < T.ny; ++y) q[y] += p[x] * T.at(x, y);
    }
    double upper = -kInf, lower = 0.0;
    for (size_t x = 0; x < T.nx; ++x) {
      double s = 0.0;
      for (size_t y = 0; y < T.ny; ++y) {
        if (T.at(x, y) > 0.0) s += T.at(x, y) * std::log(T.at(x, y) / q[y]);
      }
      ln_c[x] = s;
      upper = std::max(upper, s);
      lower += p[x] * s;
    }
    out.iterations = iter + 1;
    if (upper - lower < tol) {
      out.C = lower;
      break;
    }
    if (iter + 1 == max_iters) {
      out.C = lower;
      out.converged = false;
    }
    double z = 0.0;
    for (size_t x = 0; x < T.nx; ++x) {
      p[x] *= std::exp(ln_c[x] - upper);
      z += p[x];
    }
    for (double& v : p) v /= z;
  }
  for (size_t y = 0; y < T.ny; ++y) {
    out.caod.labels.push_back("y" + std::to_string(y));
    out.caod.probs.push_back(q[y]);
  }
  for (size_t x = 0; x < T.nx; ++x) {
    out.input.labels.push_back("x" + std::to_string(x));
    out.input.probs.push_back(p[x]);
  }
  return out;
}

double channel_span_constant(const ChannelMatrix& T) {
  T.validate();
  if (!T.strictly_positive()) return kInf;
  double m = 0.0;
  for (size_t x = 0; x < T.nx; ++x) {
    for (size_t y = 0; y < T.ny; ++y) {
      for (size_t y2 = 0; y2 < T.ny; ++y2) {
        m = std::max(m, std::fabs(std::log(T.at(x, y) / T.at(x, y2))));
      }
    }
  }
  return 2.0 * m;
}

double good_code_constant(const ChannelMatrix& T, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::domain_error("good_code_constant: eps outside (0, 1/2)");
  }
  return channel_span_constant(T) * std::sqrt(0.5 * std::log(1.0 / (1.0 - 2.0 * eps)));
}

ConverseBounds converse_output_bounds(std::int64_t n, double ln_M, double eps,
                                      const ChannelMatrix& T) {
  if (n < 1) throw std::invalid_argument("converse: n < 1");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("converse: eps outside (0,1)");
  const auto cap = dmc_capacity(T);
  ConverseBounds out;
  out.cT = channel_span_constant(T);
  const double nn = static_cast<double>(n);
  if (T.strictly_positive() && eps < 0.5) {
    out.pv1 = nn * cap.C - ln_M + std::log(1.0 / eps) +
              out.cT * std::sqrt(nn / 2.0 * std::log(1.0 / (1.0 - 2.0 * eps)));
  }
  const double ln_n = std::log(nn);
  const double ln_y = std::log(static_cast<double>(T.ny));
  out.pv2 = nn * cap.C - ln_M +
            std::sqrt(2.0 * nn) * std::pow(ln_n, 1.5) *
                (1.0 + std::sqrt(std::log(1.0 / (1.0 - eps)) / ln_n)) *
                (1.0 + ln_y / ln_n) +
            3.0 * ln_n +
            std::log(2.0 * static_cast<double>(T.nx) * static_cast<double>(T.ny) *
                     static_cast<double>(T.ny));
  return out;
}

}  // namespace comet
