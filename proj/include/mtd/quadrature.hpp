#pragma once

#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "mtd/errors.hpp"

// Adaptive Gauss-Kronrod (G7-K15) integration. The Kronrod rule gives the
// value, the embedded Gauss rule the error estimate; intervals are split
// until the local estimate fits a width-proportional share of the absolute
// tolerance or the depth cap is reached.

namespace mtd::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;     // accumulated |K15 - G7| over accepted panels
  int evaluations = 0;
  bool converged = false; // no panel was accepted solely because of the depth cap
};

namespace detail {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the shared nodes.
inline constexpr double kron_x[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
inline constexpr double kron_w[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
inline constexpr double gauss_w[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

}  // namespace detail

// One G7-K15 panel over [a, b]: returns {kronrod value, |kronrod - gauss|}.
template <class F>
std::pair<double, double> panel(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double kron = detail::kron_w[7] * fc;
  double gauss = detail::gauss_w[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * detail::kron_x[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    kron += detail::kron_w[i] * fsum;
    if (i % 2 == 1) gauss += detail::gauss_w[i / 2] * fsum;
  }
  kron *= half;
  gauss *= half;
  return {kron, std::abs(kron - gauss)};
}

template <class F>
Result integrate(F&& f, double a, double b, double abs_tol = 1e-10,
                 int max_depth = 20) {
  Result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  if (b < a) {
    out = integrate(std::forward<F>(f), b, a, abs_tol, max_depth);
    out.value = -out.value;
    return out;
  }
  struct Seg {
    double a, b;
    int depth;
  };
  const double span = b - a;
  std::vector<Seg> stack{{a, b, 0}};
  out.converged = true;
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    auto [value, err] = panel(f, s.a, s.b);
    out.evaluations += 15;
    const double local_tol = abs_tol * (s.b - s.a) / span;
    if (err <= local_tol || s.depth >= max_depth) {
      if (err > local_tol) out.converged = false;
      out.value += value;
      out.error += err;
    } else {
      const double mid = 0.5 * (s.a + s.b);
      stack.push_back({s.a, mid, s.depth + 1});
      stack.push_back({mid, s.b, s.depth + 1});
    }
  }
  return out;
}

// Integrate and enforce the engine-wide error contract: target abs_tol, hard
// failure only when the final estimate exceeds fail_tol.
template <class F>
double integrate_or_throw(F&& f, double a, double b, double abs_tol = 1e-10,
                          double fail_tol = 1e-9, int max_depth = 20) {
  const Result r = integrate(std::forward<F>(f), a, b, abs_tol, max_depth);
  if (r.error > fail_tol) {
    throw QuadratureNotConverged(
        "integral error estimate " + std::to_string(r.error) +
        " above acceptable bound after refinement cap");
  }
  return r.value;
}

}  // namespace mtd::quad
