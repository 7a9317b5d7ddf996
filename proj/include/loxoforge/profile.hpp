/// @file profile.hpp
/// Profile curves in the orbit space of a one-parameter isometry group.
///
/// A profile curve gamma~(u) = (xi1(u), xi2(u)) must be unit speed in the
/// quotient metric of its family. For every supported family the quotient
/// metric is diagonal and depends only on one coordinate — the "free" one —
/// so prescribing the free coordinate determines the other by a pure
/// quadrature (the arc-length constraint). The free coordinate is xi2 for the
/// H2xR parabolic-screw and vertical families (their quotient metrics depend
/// on xi2 alone) and xi1 for every other family.

#ifndef LOXOFORGE_PROFILE_HPP
#define LOXOFORGE_PROFILE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "loxoforge/ambient.hpp"
#include "loxoforge/errors.hpp"
#include "loxoforge/expr.hpp"
#include "loxoforge/quadrature.hpp"

namespace lox {

/// Open parameter interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double u) const { return u > lo && u < hi; }
};

enum class Provenance { closed_form, ode_integrated, sampled };

struct ProfileCurve {
  Interval u_domain;
  std::function<double(double)> xi1;
  std::function<double(double)> xi2;
  std::function<double(double)> xi1_prime;
  std::function<double(double)> xi2_prime;
  Provenance provenance = Provenance::closed_form;
};

// ---------------------------------------------------------------------------
// Quotient metrics
// ---------------------------------------------------------------------------

/// Diagonal coefficients (g11, g22) of the quotient metric
/// g~ = g11 dxi1^2 + g22 dxi2^2 at the point (xi1, xi2).
inline std::pair<double, double> quotient_metric(const AmbientSpace& s,
                                                 double xi1, double xi2) {
  switch (s.killing) {
    case KillingKind::translation:
      return {1.0, 1.0};
    case KillingKind::helicoidal: {
      const double w2 = s.a * s.a + xi1 * xi1;
      return {1.0, xi1 * xi1 / w2};
    }
    case KillingKind::bcv_rotation: {
      const double P = 1.0 + s.m * xi1 * xi1;
      return {1.0 / (P * P), 4.0 / (4.0 + s.l * s.l * xi1 * xi1)};
    }
    case KillingKind::parabolic_screw:
      return {1.0 / (s.a * s.a + s.b * s.b * xi2 * xi2), 1.0 / (xi2 * xi2)};
    case KillingKind::vertical_translation:
      return {1.0 / (xi2 * xi2), 1.0 / (xi2 * xi2)};
    case KillingKind::hyperbolic_screw: {
      const double sn = std::sin(xi1);
      return {1.0 / (sn * sn), 1.0 / (1.0 + s.b * s.b * sn * sn)};
    }
    case KillingKind::elliptic_screw: {
      const double q = xi1 * xi1 - 4.0;
      return {1.0 / q, q / (xi1 * xi1 + 4.0 * (s.b * s.b - 1.0))};
    }
    case KillingKind::heis_translation:
      return {1.0, 1.0 / (1.0 + xi1 * xi1)};
    case KillingKind::heis_vertical:
      return {1.0, 1.0};
    case KillingKind::heis_screw: {
      const double q = xi1 * xi1 - 2.0 * s.a;
      return {1.0, 4.0 * xi1 * xi1 / (4.0 * xi1 * xi1 + q * q)};
    }
  }
  return {1.0, 1.0};
}

/// True when the family's arc-length constraint integrates xi1 from a free
/// xi2 (quotient metric depends on xi2 alone).
inline bool constraint_free_is_xi2(const AmbientSpace& s) {
  return s.killing == KillingKind::parabolic_screw ||
         s.killing == KillingKind::vertical_translation;
}

/// Speed of the profile in the quotient metric (should be 1).
inline double quotient_speed(const AmbientSpace& s, const ProfileCurve& c,
                             double u) {
  const auto [g11, g22] = quotient_metric(s, c.xi1(u), c.xi2(u));
  const double d1 = c.xi1_prime(u);
  const double d2 = c.xi2_prime(u);
  return g11 * d1 * d1 + g22 * d2 * d2;
}

// ---------------------------------------------------------------------------
// Memoized cumulative quadrature
// ---------------------------------------------------------------------------

/// F(u) = value_at_ref + \int_{u_ref}^{u} f. Each evaluation integrates from
/// the nearest previously evaluated point, so sweeps and finite-difference
/// probes cost the length actually traversed. Thread-safe.
class CumulativeQuadrature {
 public:
  CumulativeQuadrature(std::function<double(double)> f, double u_ref,
                       double value_at_ref)
      : f_(std::move(f)),
        cache_(std::make_shared<std::map<double, double>>()),
        mutex_(std::make_shared<std::mutex>()) {
    cache_->emplace(u_ref, value_at_ref);
  }

  double operator()(double u) const {
    std::lock_guard<std::mutex> lock(*mutex_);
    auto it = cache_->lower_bound(u);
    if (it != cache_->end() && it->first == u) return it->second;
    // Nearest anchored neighbor.
    auto best = it;
    if (it == cache_->end()) {
      best = std::prev(it);
    } else if (it != cache_->begin()) {
      auto lo = std::prev(it);
      if (u - lo->first < it->first - u) best = lo;
    }
    const double value =
        best->second + adaptive_simpson(f_, best->first, u, 1e-10, 40);
    cache_->emplace_hint(it, u, value);
    return value;
  }

 private:
  std::function<double(double)> f_;
  std::shared_ptr<std::map<double, double>> cache_;
  std::shared_ptr<std::mutex> mutex_;
};

// ---------------------------------------------------------------------------
// Arc-length constraint
// ---------------------------------------------------------------------------

namespace profile_detail {

/// Derivative of the dependent coordinate at u, given the free coordinate's
/// value/derivative there. sign selects the +- branch of the constraint.
inline double dependent_prime(const AmbientSpace& s, bool free_is_xi2,
                              double u, double free_val, double free_prime,
                              double sign) {
  const auto [g11, g22] = free_is_xi2 ? quotient_metric(s, 0.0, free_val)
                                      : quotient_metric(s, free_val, 0.0);
  const double g_free = free_is_xi2 ? g22 : g11;
  const double g_dep = free_is_xi2 ? g11 : g22;
  if (!(g_dep > 0.0) || !std::isfinite(g_dep) || !std::isfinite(g_free))
    throw DomainViolation("quotient metric degenerate at u = " + std::to_string(u));
  double deficit = 1.0 - g_free * free_prime * free_prime;
  if (deficit < 1e-8) {
    // free_prime arrives through a central difference whose roundoff is
    // ~1e-10 relative, so a profile that rides the unit-speed boundary
    // (dependent coordinate constant) sees deficit jitter at that scale.
    // Deficits inside the differencing error budget are indistinguishable
    // from zero; snapping the whole band keeps the integrand noise-free so
    // the cumulative quadrature converges.  Only a violation beyond the
    // budget is a real over-speed profile.
    if (deficit < -1e-8)
      throw SpeedDeficitNegative(
          "profile exceeds unit speed at u = " + std::to_string(u) +
              " (constraint square root is negative)",
          u);
    deficit = 0.0;
  }
  return sign * std::sqrt(deficit / g_dep);
}

}  // namespace profile_detail

/// Builds a unit-speed profile from a prescribed free coordinate.
///
/// free_fn gives the free coordinate as a function of u (xi2 for the H2xR
/// parabolic-screw/vertical families, xi1 otherwise; see
/// constraint_free_is_xi2). The other coordinate is the cumulative adaptive
/// Simpson integral (abs tol 1e-10) of the family's constraint formula.
/// Recognized params:
///   "xi2_0"  value of the dependent coordinate at the anchor (default 0)
///   "u_ref"  anchor parameter (default 0 if inside the domain, else the
///            lower endpoint)
///   "sign"   +-1 branch of the constraint square root (default +1)
ProfileCurve profile_from_constraint(const AmbientSpace& space,
                                     const ProfileExpr& free_fn,
                                     const std::map<std::string, double>& params,
                                     Interval u_domain);

inline ProfileCurve profile_from_constraint(
    const AmbientSpace& space, const ProfileExpr& free_fn,
    const std::map<std::string, double>& params, Interval u_domain) {
  for (const auto& [key, value] : params) {
    if (key != "xi2_0" && key != "u_ref" && key != "sign")
      throw BadParams("unknown constraint parameter '" + key + "'");
    if (!std::isfinite(value))
      throw BadParams("constraint parameter '" + key + "' must be finite");
  }
  if (!(u_domain.lo < u_domain.hi))
    throw BadParams("profile domain must satisfy u_min < u_max");

  const auto get = [&params](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  const double anchor_value = get("xi2_0", 0.0);
  const double default_ref =
      (u_domain.lo <= 0.0 && 0.0 <= u_domain.hi) ? 0.0 : u_domain.lo;
  const double u_ref = get("u_ref", default_ref);
  const double sign = get("sign", 1.0);
  if (sign != 1.0 && sign != -1.0)
    throw BadParams("constraint parameter 'sign' must be +1 or -1");
  if (u_ref < u_domain.lo || u_ref > u_domain.hi)
    throw BadParams("constraint anchor u_ref outside the profile domain");

  const bool free_is_xi2 = constraint_free_is_xi2(space);
  AmbientSpace s = space;
  ProfileExpr f = free_fn;

  auto free_val = [f](double u) { return eval(f, u); };
  auto free_prime = [f](double u) { return derivative(f, u); };
  auto dep_prime = [s, free_is_xi2, f, sign](double u) {
    return profile_detail::dependent_prime(s, free_is_xi2, u, eval(f, u),
                                           derivative(f, u), sign);
  };
  CumulativeQuadrature dep(dep_prime, u_ref, anchor_value);
  auto dep_val = [dep](double u) { return dep(u); };

  ProfileCurve curve;
  curve.u_domain = u_domain;
  curve.provenance = Provenance::ode_integrated;
  if (free_is_xi2) {
    curve.xi2 = free_val;
    curve.xi2_prime = free_prime;
    curve.xi1 = dep_val;
    curve.xi1_prime = dep_prime;
  } else {
    curve.xi1 = free_val;
    curve.xi1_prime = free_prime;
    curve.xi2 = dep_val;
    curve.xi2_prime = dep_prime;
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Monotone cubic interpolation (sampled profiles)
// ---------------------------------------------------------------------------

/// Shape-preserving cubic Hermite interpolant (Fritsch-Carlson slopes).
/// Monotone data yields a monotone interpolant; evaluation outside the node
/// range extrapolates with the boundary cubic.
struct PchipInterpolant {
  std::vector<double> x, y, d;

  static PchipInterpolant build(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
      throw BadParams("sampled profile needs at least two nodes");
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i] > xs[i - 1]))
        throw BadParams("sampled profile nodes must be strictly increasing");

    const std::size_t n = xs.size();
    std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = xs[i + 1] - xs[i];
      delta[i] = (ys[i + 1] - ys[i]) / h[i];
    }
    if (n == 2) {
      d[0] = d[1] = delta[0];
    } else {
      for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
          d[i] = 0.0;
        } else {
          const double w1 = 2.0 * h[i] + h[i - 1];
          const double w2 = h[i] + 2.0 * h[i - 1];
          d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
      }
      d[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
      d[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
    return PchipInterpolant{std::move(xs), std::move(ys), std::move(d)};
  }

  double eval(double t) const {
    const auto [i, dt] = locate(t);
    const double h = x[i + 1] - x[i];
    const double s = dt / h;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = dt * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = dt * s * (s - 1.0);
    return h00 * y[i] + h10 * d[i] + h01 * y[i + 1] + h11 * d[i + 1];
  }

  double deriv(double t) const {
    const auto [i, dt] = locate(t);
    const double h = x[i + 1] - x[i];
    const double s = dt / h;
    const double dh00 = 6.0 * s * (s - 1.0) / h;
    const double dh10 = (1.0 - s) * (1.0 - 3.0 * s);
    const double dh01 = -dh00;
    const double dh11 = s * (3.0 * s - 2.0);
    return dh00 * y[i] + dh10 * d[i] + dh01 * y[i + 1] + dh11 * d[i + 1];
  }

 private:
  // One-sided three-point boundary slope, limited to preserve monotonicity.
  static double edge_slope(double h0, double h1, double del0, double del1) {
    double s = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (s * del0 <= 0.0)
      s = 0.0;
    else if (del0 * del1 < 0.0 && std::abs(s) > 3.0 * std::abs(del0))
      s = 3.0 * del0;
    return s;
  }

  std::pair<std::size_t, double> locate(double t) const {
    std::size_t i;
    if (t <= x.front()) {
      i = 0;
    } else if (t >= x.back()) {
      i = x.size() - 2;
    } else {
      i = static_cast<std::size_t>(
              std::upper_bound(x.begin(), x.end(), t) - x.begin()) -
          1;
    }
    return {i, t - x[i]};
  }
};

/// Profile from a user-supplied (u, xi1, xi2) grid; derivatives come from the
/// monotone interpolants.
inline ProfileCurve profile_from_samples(const std::vector<double>& u,
                                         const std::vector<double>& xi1,
                                         const std::vector<double>& xi2) {
  if (u.size() != xi1.size() || u.size() != xi2.size())
    throw BadParams("sampled profile arrays must have equal length");
  auto p1 = std::make_shared<PchipInterpolant>(PchipInterpolant::build(u, xi1));
  auto p2 = std::make_shared<PchipInterpolant>(PchipInterpolant::build(u, xi2));
  ProfileCurve c;
  c.u_domain = Interval{u.front(), u.back()};
  c.provenance = Provenance::sampled;
  c.xi1 = [p1](double t) { return p1->eval(t); };
  c.xi1_prime = [p1](double t) { return p1->deriv(t); };
  c.xi2 = [p2](double t) { return p2->eval(t); };
  c.xi2_prime = [p2](double t) { return p2->deriv(t); };
  return c;
}

}  // namespace lox

#endif  // LOXOFORGE_PROFILE_HPP
