// Test-only oracles, independent of the implementation paths they check:
// central finite differences for derivatives and adaptive Simpson integration
// for line integrals of one-forms.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "axihelm/expr.hpp"
#include "axihelm/oneform.hpp"

namespace oracles {

inline double centralFd(const axihelm::Expr& e, const axihelm::Params& p, axihelm::Point pt,
                        axihelm::Coord v, double h = 1e-6) {
  using axihelm::Point;
  Point lo = pt, hi = pt;
  if (v == axihelm::Coord::R) {
    lo.r -= h;
    hi.r += h;
  } else {
    lo.z -= h;
    hi.z += h;
  }
  return (axihelm::eval(e, p, hi) - axihelm::eval(e, p, lo)) / (2.0 * h);
}

inline double adaptiveSimpson(const std::function<double(double)>& f, double a, double b,
                              double fa, double fm, double fb, double eps, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * eps) return left + right;
  return adaptiveSimpson(f, a, m, fa, flm, fm, eps / 2.0, depth - 1) +
         adaptiveSimpson(f, m, b, fm, frm, fb, eps / 2.0, depth - 1);
}

inline double integrate1d(const std::function<double(double)>& f, double a, double b,
                          double eps = 1e-12) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return adaptiveSimpson(f, a, b, fa, fm, fb, eps, 40);
}

/// Line integral of (A dr + B dz) along the r-then-z hook from p0 to p1.
inline double hookIntegral(const axihelm::OneForm& form, const axihelm::Params& p,
                           const axihelm::Point& p0, const axihelm::Point& p1,
                           double eps = 1e-12) {
  using axihelm::Point;
  double horizontal = integrate1d(
      [&](double r) { return axihelm::eval(form.a, p, Point{r, p0.z}); }, p0.r, p1.r, eps);
  double vertical = integrate1d(
      [&](double z) { return axihelm::eval(form.b, p, Point{p1.r, z}); }, p0.z, p1.z, eps);
  return horizontal + vertical;
}

}  // namespace oracles
