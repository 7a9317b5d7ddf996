/// @file numdiff.hpp
/// Finite-difference helpers: pointwise derivatives of callables and
/// high-order stencil derivatives of uniformly sampled grid data.

#ifndef LOXOFORGE_NUMDIFF_HPP
#define LOXOFORGE_NUMDIFF_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace lox {

/// Relative step scaled away from zero: h0 * max(1, |x|).
inline double fd_step(double x, double h0) { return h0 * std::max(1.0, std::abs(x)); }

/// Second-order central difference f'(x).
template <typename F>
double central_diff(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Second-order central difference f''(x).
template <typename F>
double second_central_diff(F&& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// Fourth-order five-point first derivative.
template <typename F>
double richardson_diff(F&& f, double x, double h) {
  return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) /
         (12.0 * h);
}

/// Fourth-order five-point second derivative.
template <typename F>
double richardson_second_diff(F&& f, double x, double h) {
  return (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) -
          f(x + 2.0 * h)) /
         (12.0 * h * h);
}

/// Derivative of uniformly sampled data y_i = f(x0 + i h).
///
/// Interior points use the fourth-order five-point central stencil. The two
/// samples at each end use one-sided formulas of order h^5 (six points) and
/// h^4 (five points) so that boundary samples do not dominate the error of
/// downstream maximum-deviation checks. Falls back to lower-order stencils
/// for very short grids.
inline std::vector<double> grid_derivative(const std::vector<double>& y,
                                           double h) {
  const std::size_t n = y.size();
  std::vector<double> d(n, 0.0);
  if (n < 2 || h == 0.0) return d;
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / h;
    return d;
  }
  if (n < 6) {
    // Three-point formulas (second order) for short grids.
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
    return d;
  }
  d[0] = (-137.0 * y[0] + 300.0 * y[1] - 300.0 * y[2] + 200.0 * y[3] -
          75.0 * y[4] + 12.0 * y[5]) /
         (60.0 * h);
  d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) /
         (12.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * h);
  d[n - 2] = (3.0 * y[n - 1] + 10.0 * y[n - 2] - 18.0 * y[n - 3] +
              6.0 * y[n - 4] - y[n - 5]) /
             (12.0 * h);
  d[n - 1] = (137.0 * y[n - 1] - 300.0 * y[n - 2] + 300.0 * y[n - 3] -
              200.0 * y[n - 4] + 75.0 * y[n - 5] - 12.0 * y[n - 6]) /
             (60.0 * h);
  return d;
}

}  // namespace lox

#endif  // LOXOFORGE_NUMDIFF_HPP
