#pragma once

#include <cmath>
#include <limits>
#include <utility>

// Scalar root bracketing and unimodal maximisation. Plain bisection is used
// everywhere a bracket exists: it is monotone-convergent and its accuracy is
// easy to reason about, which matters more here than iteration count.

namespace mtd::roots {

struct BisectResult {
  double x = std::numeric_limits<double>::quiet_NaN();
  double fx = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  bool converged = false;  // |fx| at the returned point is below fx_tol
};

// Requires f(lo) and f(hi) of opposite sign (either may be zero). Shrinks the
// bracket to floating-point resolution or until max_iters, then reports the
// midpoint and its residual.
template <class F>
BisectResult bisect(F&& f, double lo, double hi, double fx_tol,
                    int max_iters = 200) {
  BisectResult r;
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) {
    r.x = lo;
    r.fx = 0.0;
    r.converged = true;
    return r;
  }
  if (fhi == 0.0) {
    r.x = hi;
    r.fx = 0.0;
    r.converged = true;
    return r;
  }
  while (r.iterations < max_iters) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    const double fm = f(mid);
    ++r.iterations;
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  r.x = 0.5 * (lo + hi);
  r.fx = f(r.x);
  r.converged = std::abs(r.fx) <= fx_tol;
  return r;
}

// Golden-section maximum of a unimodal f on [lo, hi]. Ties keep the left
// subinterval, so plateaus resolve toward the smaller abscissa.
template <class F>
double golden_max(F&& f, double lo, double hi, double x_tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > x_tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double mid = 0.5 * (a + b);
  // pick the best probed point, preferring the smaller action on ties
  double best_x = a, best_f = f(a);
  for (double x : {mid, b}) {
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  return best_x;
}

// Coarse scan: first maximum wins, so ties resolve toward the smaller action.
// Returns (argmax, max).
template <class F>
std::pair<double, double> grid_max(F&& f, double lo, double hi, int n) {
  double best_x = lo;
  double best_f = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / n;
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  return {best_x, best_f};
}

}  // namespace mtd::roots
