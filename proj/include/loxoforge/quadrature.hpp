/// @file quadrature.hpp
/// Adaptive Simpson quadrature with cumulative checkpointing. This is the
/// only integration scheme in the library: loxodrome traces and constraint
/// profiles are both pure quadratures of smooth integrands.

#ifndef LOXOFORGE_QUADRATURE_HPP
#define LOXOFORGE_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "loxoforge/errors.hpp"

namespace lox {

namespace detail {

// One level of adaptive Simpson: whole = Simpson on [a,b], fa/fm/fb cached.
// Accepts when the two half-interval estimates agree to 15*tol (Richardson),
// otherwise recurses with tol split between halves.
template <typename F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth,
                            int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol && std::isfinite(delta))
    return left + right + delta / 15.0;
  if (depth >= max_depth)
    throw QuadratureNonConvergent(
        "adaptive Simpson failed to converge near u = " + std::to_string(m));
  const double half_tol = 0.5 * tol;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, half_tol, depth + 1,
                              max_depth) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, half_tol, depth + 1,
                              max_depth);
}

}  // namespace detail

/// \int_a^b f, absolute tolerance abs_tol, max recursion depth max_depth.
/// a > b integrates backwards (antisymmetric result). Throws
/// QuadratureNonConvergent when the depth budget is exhausted.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol = 1e-10,
                        int max_depth = 40) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, 0,
                                      max_depth);
}

/// Cumulative integral along a node sequence: result[i] = \int_{nodes[0]}^{nodes[i]} f.
/// Each panel is integrated adaptively and partial sums are reused, so the
/// cost is one adaptive pass over the union of panels.
template <typename F>
std::vector<double> cumulative_integral(F&& f, const std::vector<double>& nodes,
                                        double abs_tol = 1e-10,
                                        int max_depth = 40) {
  std::vector<double> out(nodes.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    acc += adaptive_simpson(f, nodes[i - 1], nodes[i], abs_tol, max_depth);
    out[i] = acc;
  }
  return out;
}

}  // namespace lox

#endif  // LOXOFORGE_QUADRATURE_HPP
