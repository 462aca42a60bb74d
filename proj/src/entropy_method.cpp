#include "comet/entropy_method.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "comet/quadrature.hpp"
#include "comet/special_functions.hpp"

namespace comet {

namespace {
constexpr double kTwoPi = 6.2831853071795864769252868;

double std_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(kTwoPi);
}

double psi_fn(double u) { return std::expm1(u) - u; }

// Poisson pmf on 0..trunc (unnormalized tail dropped).
std::vector<double> poisson_pmf(double lambda, int trunc) {
  std::vector<double> p(static_cast<size_t>(trunc) + 1);
  double lp = -lambda;
  p[0] = std::exp(lp);
  for (int i = 1; i <= trunc; ++i) {
    lp += std::log(lambda) - std::log(static_cast<double>(i));
    p[static_cast<size_t>(i)] = std::exp(lp);
  }
  return p;
}
}  // namespace

TiltedFamily::TiltedFamily(FiniteDistribution base, std::vector<double> f)
    : base_(std::move(base)), f_(std::move(f)) {
  base_.validate();
  if (f_.size() != base_.size()) {
    throw std::invalid_argument("TiltedFamily: f size mismatch");
  }
}

double TiltedFamily::lmgf(double t) const { return tilt(base_, f_, t).log_mgf; }

double TiltedFamily::lmgf_prime(double t) const {
  const auto tilted_dist = tilt(base_, f_, t).dist;
  double m = 0.0;
  for (size_t i = 0; i < f_.size(); ++i) m += tilted_dist.probs[i] * f_[i];
  return m;
}

double TiltedFamily::variance(double t) const {
  const auto tilted_dist = tilt(base_, f_, t).dist;
  double m = 0.0, m2 = 0.0;
  for (size_t i = 0; i < f_.size(); ++i) {
    m += tilted_dist.probs[i] * f_[i];
    m2 += tilted_dist.probs[i] * f_[i] * f_[i];
  }
  return std::max(m2 - m * m, 0.0);
}

double TiltedFamily::divergence(double t) const {
  return t * lmgf_prime(t) - lmgf(t);
}

FiniteDistribution TiltedFamily::tilted(double t) const {
  return tilt(base_, f_, t).dist;
}

IdentityCheck herbst_identity_check(const TiltedFamily& family, double lambda,
                                    double tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("herbst: lambda <= 0");
  IdentityCheck out;
  // The identity assumes a centered function; tilting is shift-invariant,
  // so only the cumulant side needs the mean subtracted.
  out.lhs = family.lmgf(lambda) - lambda * family.lmgf_prime(0.0);
  const double at_zero = family.variance(0.0) / 2.0;  // limit of D(t)/t^2
  auto integrand = [&](double t) {
    if (t == 0.0) return at_zero;
    return family.divergence(t) / (t * t);
  };
  const auto q = integrate(integrand, 0.0, lambda, tol);
  out.rhs = lambda * q.value;
  out.gap = std::fabs(out.lhs - out.rhs);
  out.quadrature_converged = q.converged;
  return out;
}

IdentityCheck maurer_identity_check(const TiltedFamily& family, double lambda,
                                    double tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("maurer: lambda <= 0");
  IdentityCheck out;
  out.lhs = family.divergence(lambda);
  // int_0^lambda int_t^lambda var^{(s f)}[f] ds dt = int_0^lambda s var(s) ds.
  auto integrand = [&](double s) { return s * family.variance(s); };
  const auto q = integrate(integrand, 0.0, lambda, tol);
  out.rhs = q.value;
  out.gap = std::fabs(out.lhs - out.rhs);
  out.quadrature_converged = q.converged;
  return out;
}

PairCheck tensorization_check(const ProductSpace& sp,
                              const std::vector<std::vector<double>>& p_marginals,
                              const std::vector<double>& Q) {
  const auto P = product_measure(sp, p_marginals);
  PairCheck out;
  out.lhs = joint_kl(Q, P);
  out.rhs = erasure_divergence(sp, Q, P);
  out.pass = out.lhs <= out.rhs + 1e-12;
  return out;
}

namespace {

// Shared core for the Hamming-cube checks: exact tilted law and bit-flip
// energy on {0,1}^n under i.i.d. Bernoulli(p).
struct CubeInstance {
  size_t states;
  std::vector<double> base;    // product Bernoulli(p)
  std::vector<double> tilted;  // proportional to base * e^f
  std::vector<double> gamma2;  // (Gamma f)^2 per state
  double divergence;
  double flip_bound;  // max_i |f(x + e_i) - f(x)|

  CubeInstance(int n, double p, std::span<const double> f) {
    if (n < 1 || n > 12) throw std::invalid_argument("cube: n outside [1,12]");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("cube: p outside (0,1)");
    states = size_t{1} << n;
    if (f.size() != states) throw std::invalid_argument("cube: f size mismatch");
    base.resize(states);
    for (size_t x = 0; x < states; ++x) {
      double w = 1.0;
      for (int i = 0; i < n; ++i) w *= (x >> i) & 1 ? p : 1.0 - p;
      base[x] = w;
    }
    double shift = *std::max_element(f.begin(), f.end());
    double z = 0.0;
    tilted.resize(states);
    for (size_t x = 0; x < states; ++x) {
      tilted[x] = base[x] * std::exp(f[x] - shift);
      z += tilted[x];
    }
    for (double& t : tilted) t /= z;
    gamma2.assign(states, 0.0);
    flip_bound = 0.0;
    for (size_t x = 0; x < states; ++x) {
      for (int i = 0; i < n; ++i) {
        const double diff = f[x ^ (size_t{1} << i)] - f[x];
        gamma2[x] += diff * diff;
        flip_bound = std::max(flip_bound, std::fabs(diff));
      }
    }
    divergence = 0.0;
    for (size_t x = 0; x < states; ++x) {
      if (tilted[x] > 0.0) divergence += tilted[x] * std::log(tilted[x] / base[x]);
    }
    divergence = std::max(divergence, 0.0);
  }
};

double bernoulli_lsi_constant(double p, double c) {
  if (c <= 0.0) return p * (1.0 - p) / 2.0;  // limit of ((c-1)e^c+1)/c^2
  return p * (1.0 - p) * ((c - 1.0) * std::exp(c) + 1.0) / (c * c);
}

}  // namespace

PairCheck discrete_lsi_check(int n, double p, std::span<const double> f,
                             std::optional<double> c_bound) {
  CubeInstance inst(n, p, f);
  double ef_gamma2 = 0.0;
  for (size_t x = 0; x < inst.states; ++x) ef_gamma2 += inst.tilted[x] * inst.gamma2[x];

  PairCheck out;
  out.lhs = inst.divergence;
  if (std::fabs(p - 0.5) < 1e-15) {
    out.rhs = ef_gamma2 / 8.0;
  } else {
    const double c = c_bound.value_or(inst.flip_bound);
    out.rhs = bernoulli_lsi_constant(p, c) * ef_gamma2;
  }
  out.pass = out.lhs <= out.rhs + 1e-12;
  return out;
}

PairCheck poincare_check(int n, double p, std::span<const double> f, double c) {
  CubeInstance inst(n, p, f);
  double m = 0.0, m2 = 0.0, e_gamma2 = 0.0;
  for (size_t x = 0; x < inst.states; ++x) {
    m += inst.base[x] * f[x];
    m2 += inst.base[x] * f[x] * f[x];
    e_gamma2 += inst.base[x] * inst.gamma2[x];
  }
  PairCheck out;
  out.lhs = std::max(m2 - m * m, 0.0);
  out.rhs = c * e_gamma2;
  out.pass = out.lhs <= out.rhs + 1e-12;
  return out;
}

PairCheck poisson_lsi_check(double lambda, std::span<const double> f, int trunc,
                            const std::vector<double>* compound_mu, double slack) {
  if (!(lambda > 0.0)) throw std::invalid_argument("poisson_lsi: lambda <= 0");
  if (trunc < 4 || f.size() != static_cast<size_t>(trunc) + 1) {
    throw std::invalid_argument("poisson_lsi: bad truncation / f size");
  }
  // Base pmf on 0..trunc: plain Poisson, or the law of sum_k k Y_k with
  // independent Y_k ~ Poisson(lambda mu(k)) for the compound case.
  std::vector<double> base;
  if (compound_mu == nullptr) {
    base = poisson_pmf(lambda, trunc);
  } else {
    double msum = 0.0;
    for (double m : *compound_mu) msum += m;
    if (std::fabs(msum - 1.0) > 1e-9) {
      throw std::invalid_argument("poisson_lsi: compound jump law not normalized");
    }
    base.assign(static_cast<size_t>(trunc) + 1, 0.0);
    base[0] = 1.0;
    for (size_t k = 1; k <= compound_mu->size(); ++k) {
      const double mk = (*compound_mu)[k - 1];
      if (mk == 0.0) continue;
      const auto comp = poisson_pmf(lambda * mk, trunc);
      std::vector<double> next(base.size(), 0.0);
      for (int y = 0; y * k <= static_cast<size_t>(trunc); ++y) {
        for (size_t s = 0; s + y * k <= static_cast<size_t>(trunc); ++s) {
          next[s + y * k] += base[s] * comp[static_cast<size_t>(y)];
        }
      }
      base = std::move(next);
    }
  }
  double mass = 0.0;
  for (double b : base) mass += b;
  if (1.0 - mass > 1e-10) {
    throw std::invalid_argument("poisson_lsi: truncation tail above 1e-10");
  }
  for (double& b : base) b /= mass;

  // Tilted law on the truncated support.
  double shift = *std::max_element(f.begin(), f.end());
  std::vector<double> tilted(base.size());
  double z = 0.0;
  for (size_t i = 0; i < base.size(); ++i) {
    tilted[i] = base[i] * std::exp(f[i] - shift);
    z += tilted[i];
  }
  for (double& t : tilted) t /= z;

  PairCheck out;
  for (size_t i = 0; i < base.size(); ++i) {
    if (tilted[i] > 0.0 && base[i] > 0.0) {
      out.lhs += tilted[i] * std::log(tilted[i] / base[i]);
    }
  }
  out.lhs = std::max(out.lhs, 0.0);

  // f is extended beyond the truncation point by its boundary value, so the
  // discrete gradient vanishes there.
  auto f_at = [&](size_t i) { return f[std::min(i, f.size() - 1)]; };
  const size_t jumps = compound_mu ? compound_mu->size() : 1;
  for (size_t k = 1; k <= jumps; ++k) {
    const double weight = compound_mu ? (*compound_mu)[k - 1] : 1.0;
    if (weight == 0.0) continue;
    double e = 0.0;
    for (size_t i = 0; i < base.size(); ++i) {
      const double g = std::fabs(f_at(i) - f_at(i + k));
      e += tilted[i] * (g * std::exp(g) - std::expm1(g));
    }
    out.rhs += lambda * weight * e;
  }
  out.pass = out.lhs <= out.rhs + slack;
  return out;
}

EfronSteinResult efron_stein_check(const ProductSpace& sp,
                                   const std::vector<std::vector<double>>& p_marginals,
                                   const std::vector<double>& f) {
  if (f.size() != sp.states) throw std::invalid_argument("efron_stein: f size mismatch");
  const auto P = product_measure(sp, p_marginals);
  EfronSteinResult out;
  double m = 0.0, m2 = 0.0;
  for (size_t x = 0; x < sp.states; ++x) {
    m += P[x] * f[x];
    m2 += P[x] * f[x] * f[x];
  }
  out.var = std::max(m2 - m * m, 0.0);
  for (int i = 0; i < sp.n(); ++i) {
    const int a = sp.arity[i];
    for (size_t x = 0; x < sp.states; ++x) {
      if (sp.digit(x, i) != 0) continue;
      // P(rest) and the conditional variance of f along coordinate i.
      double p_rest = 0.0, cm = 0.0, cm2 = 0.0;
      for (int v = 0; v < a; ++v) {
        const size_t y = sp.with_digit(x, i, v);
        const double w = p_marginals[static_cast<size_t>(i)][static_cast<size_t>(v)];
        p_rest += P[y];
        cm += w * f[y];
        cm2 += w * f[y] * f[y];
      }
      const double pv = p_marginals[static_cast<size_t>(i)][0];
      if (pv > 0.0) {
        out.ess_sum += (P[x] / pv) * std::max(cm2 - cm * cm, 0.0);
      }
    }
  }
  out.pass = out.var <= out.ess_sum + 1e-12;
  return out;
}

MassartComparison massart_comparison(const ProductSpace& sp,
                                     const std::vector<std::vector<double>>& p_marginals,
                                     const std::vector<double>& f, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("massart: t <= 0");
  if (f.size() != sp.states) throw std::invalid_argument("massart: f size mismatch");
  const auto P = product_measure(sp, p_marginals);

  // Tilted joint law and Lambda(t).
  double shift = t * *std::max_element(f.begin(), f.end());
  double z = 0.0;
  std::vector<double> tilted(sp.states);
  for (size_t x = 0; x < sp.states; ++x) {
    tilted[x] = P[x] * std::exp(t * f[x] - shift);
    z += tilted[x];
  }
  const double lambda_t = std::log(z) + shift;
  for (double& v : tilted) v /= z;

  MassartComparison out;
  out.divergence = joint_kl(tilted, P);
  out.maurer_rhs = erasure_divergence(sp, tilted, P);

  // exp(-Lambda) sum_i E[e^{tU} psi(-t(U - U^(i)))] with an independent
  // resample of coordinate i.
  double massart = 0.0;
  for (size_t x = 0; x < sp.states; ++x) {
    if (P[x] == 0.0) continue;
    const double w = P[x] * std::exp(t * f[x] - lambda_t);
    for (int i = 0; i < sp.n(); ++i) {
      for (int v = 0; v < sp.arity[i]; ++v) {
        const double pv = p_marginals[static_cast<size_t>(i)][static_cast<size_t>(v)];
        if (pv == 0.0) continue;
        const double fi = f[sp.with_digit(x, i, v)];
        massart += w * pv * psi_fn(-t * (f[x] - fi));
      }
    }
  }
  out.massart_rhs = massart;

  // Bounded-difference constants of f, computed exhaustively.
  double c2_sum = 0.0;
  for (int i = 0; i < sp.n(); ++i) {
    double ci = 0.0;
    for (size_t x = 0; x < sp.states; ++x) {
      if (sp.digit(x, i) != 0) continue;
      double lo = kInf, hi = -kInf;
      for (int v = 0; v < sp.arity[i]; ++v) {
        const double fv = f[sp.with_digit(x, i, v)];
        lo = std::min(lo, fv);
        hi = std::max(hi, fv);
      }
      ci = std::max(ci, hi - lo);
    }
    c2_sum += ci * ci;
  }
  if (c2_sum > 0.0) {
    out.maurer_tail_coeff = 2.0 / c2_sum;
    out.massart_tail_coeff = 1.0 / (4.0 * c2_sum);
  }
  out.pass = out.divergence <= out.maurer_rhs + 1e-12 &&
             out.divergence <= out.massart_rhs + 1e-12;
  out.tighter = out.maurer_rhs <= out.massart_rhs ? "maurer" : "massart";
  return out;
}

namespace {

// mmse(Y, s) for the observation sqrt(s) Y + Z by double quadrature over the
// density grid and an output grid.
double mmse_quadrature(const DensityGrid& g, double s) {
  const double rs = std::sqrt(s);
  const double ulo = rs * g.x.front() - 8.0;
  const double uhi = rs * g.x.back() + 8.0;
  const size_t m = 1201;
  const double hu = (uhi - ulo) / static_cast<double>(m - 1);
  const double hy = g.step();
  double acc = 0.0, prev = 0.0;
  for (size_t iu = 0; iu < m; ++iu) {
    const double u = ulo + hu * static_cast<double>(iu);
    double w0 = 0.0, w1 = 0.0, w2 = 0.0;
    for (size_t iy = 0; iy < g.x.size(); ++iy) {
      const double y = g.x[iy];
      const double w = g.p[iy] * std_normal_pdf(u - rs * y) *
                       (iy == 0 || iy + 1 == g.x.size() ? 0.5 : 1.0);
      w0 += w;
      w1 += w * y;
      w2 += w * y * y;
    }
    // integrand = p_U(u) * Var(Y | U = u)
    const double val = w0 > 1e-300 ? (w2 - w1 * w1 / w0) * hy : 0.0;
    if (iu > 0) acc += 0.5 * (prev + val) * hu;
    prev = val;
  }
  return acc;
}

}  // namespace

GaussianSuiteReport gaussian_quadrature_suite(const DensityGrid& density,
                                              std::span<const double> snr_grid) {
  density.validate();
  GaussianSuiteReport r;
  r.entropy = density.entropy();
  r.entropy_power = density.entropy_power();
  r.fisher = density.fisher_information();
  r.stam_product = r.entropy_power * r.fisher;
  r.kl_to_gaussian = density.kl_to_std_gaussian();
  r.rel_fisher = density.relative_fisher_to_std_gaussian();
  r.w2 = w2_to_std_gaussian(density);
  r.stam_ok = r.stam_product >= 1.0 - 1e-4;
  const double var = density.variance();
  r.van_trees_ok = true;
  r.mmse_le_lmmse_ok = true;
  for (double s : snr_grid) {
    SnrCheck c;
    c.s = s;
    c.mmse = mmse_quadrature(density, s);
    c.lmmse = var / (1.0 + s * var);
    c.van_trees = 1.0 / (r.fisher + s);
    r.van_trees_ok = r.van_trees_ok && c.mmse >= c.van_trees - 1e-4;
    r.mmse_le_lmmse_ok = r.mmse_le_lmmse_ok && c.mmse <= c.lmmse + 1e-4;
    r.snr.push_back(c);
  }
  r.hwi_ok = r.kl_to_gaussian <= r.w2 * std::sqrt(r.rel_fisher) + 1e-6;
  return r;
}

DensityGrid ou_evolve(const DensityGrid& density, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("ou_evolve: t <= 0");
  DensityGrid out;
  out.x = density.x;
  out.p.assign(density.x.size(), 0.0);
  out.dp.assign(density.x.size(), 0.0);
  const double decay = std::exp(-t);
  const double sd = std::sqrt(1.0 - decay * decay);
  const double hy = density.step();
  for (size_t ix = 0; ix < out.x.size(); ++ix) {
    const double x = out.x[ix];
    double acc = 0.0, dacc = 0.0;
    for (size_t iy = 0; iy < density.x.size(); ++iy) {
      const double z = (x - decay * density.x[iy]) / sd;
      const double w = density.p[iy] * std_normal_pdf(z) / sd *
                       (iy == 0 || iy + 1 == density.x.size() ? 0.5 : 1.0);
      acc += w;
      dacc += -z / sd * w;
    }
    out.p[ix] = acc * hy;
    out.dp[ix] = dacc * hy;
  }
  return out;
}

OuReport ou_contraction_check(const DensityGrid& density, double t,
                              std::span<const std::pair<double, double>> alpha_beta) {
  density.validate();
  OuReport r;
  r.t = t;
  r.kl_before = density.kl_to_std_gaussian();
  auto evolved = ou_evolve(density, t);
  r.kl_after = evolved.kl_to_std_gaussian();
  r.contraction_rhs = std::exp(-2.0 * t) * r.kl_before;
  r.kl_ok = r.kl_after <= r.contraction_rhs + 1e-6;
  r.renyi_ok = true;
  for (const auto& [alpha, beta] : alpha_beta) {
    if (!(beta > 1.0 && alpha > beta)) {
      throw std::invalid_argument("ou_contraction: need 1 < beta < alpha");
    }
    const double t_min = 0.5 * std::log((alpha - 1.0) / (beta - 1.0));
    if (t < t_min) continue;  // hypothesis not met at this noise level
    RenyiContractionCheck c;
    c.alpha = alpha;
    c.beta = beta;
    c.t = t;
    c.lhs = evolved.renyi_to_std_gaussian(alpha);
    c.rhs = alpha * (beta - 1.0) / (beta * (alpha - 1.0)) *
            density.renyi_to_std_gaussian(beta);
    c.pass = c.lhs <= c.rhs + 1e-6;
    r.renyi_ok = r.renyi_ok && c.pass;
    r.renyi.push_back(c);
  }
  return r;
}

}  // namespace comet
