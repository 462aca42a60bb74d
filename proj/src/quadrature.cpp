#include "comet/quadrature.hpp"

#include <cmath>

namespace comet {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth, bool* ok) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = left + right - whole;
  if (std::fabs(err) <= 15.0 * tol || depth <= 0) {
    if (depth <= 0 && std::fabs(err) > 15.0 * tol) *ok = false;
    return left + right + err / 15.0;  // Richardson correction
  }
  return adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, ok) +
         adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, ok);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, int max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson(fa, fm, fb, b - a);
  bool ok = true;
  out.value = adapt(f, a, b, fa, fm, fb, whole, abs_tol, max_depth, &ok);
  out.converged = ok;
  return out;
}

}  // namespace comet
