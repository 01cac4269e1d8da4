#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "hill/errors.hpp"

namespace hill {

/// Adaptive Simpson rule with Richardson correction and an absolute error
/// target. `evaluations` is shared across calls so that a caller can enforce
/// one budget over many subintervals.
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(double abs_tol, std::size_t budget) : abs_tol_(abs_tol), budget_(budget) {}

  template <class F>
  double integrate(F&& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = call(f, a);
    const double fm = call(f, m);
    const double fb = call(f, b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return refine(f, a, b, fa, fm, fb, whole, tol, 0);
  }

  [[nodiscard]] double abs_tol() const { return abs_tol_; }
  [[nodiscard]] std::size_t evaluations() const { return evaluations_; }

 private:
  static constexpr int kMaxDepth = 60;
  static constexpr double kRelativeFloor = 1e-10;

  template <class F>
  double call(F& f, double x) {
    if (++evaluations_ > budget_) throw QuadratureFailure("quadrature evaluation budget exhausted");
    const double v = f(x);
    if (!std::isfinite(v)) throw NonFinite("integrand is not finite at x = " + std::to_string(x));
    return v;
  }

  template <class F>
  double refine(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = call(f, lm);
    const double frm = call(f, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // Below the rounding level of the abscissae no refinement can help. Steep
    // integrands also step by ~1e-11 relative per ulp of x, so the error target
    // is floored relative to the panel's absolute mass.
    const double eps = std::numeric_limits<double>::epsilon();
    if (b - a <= 1024.0 * eps * std::max(std::abs(a), std::abs(b))) return left + right;
    const double mass = (b - a) / 12.0 *
                        (std::abs(fa) + 4.0 * std::abs(flm) + 2.0 * std::abs(fm) + 4.0 * std::abs(frm) + std::abs(fb));
    const double floor = kRelativeFloor * mass;
    // Require at least two levels so that a symmetric integrand cannot fool the
    // first comparison.
    if (depth >= 2 && std::abs(delta) <= std::max(15.0 * tol, floor)) return left + right + delta / 15.0;
    if (depth >= kMaxDepth) throw QuadratureFailure("quadrature subdivision depth exhausted");
    return refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  double abs_tol_;
  std::size_t budget_;
  std::size_t evaluations_ = 0;
};

}  // namespace hill
