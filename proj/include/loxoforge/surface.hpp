/// @file surface.hpp
/// Invariant surfaces: a profile curve in the orbit space, its lift gamma into
/// the ambient space, the immersion psi(u,v) = flow_v(gamma(u)), and the
/// induced metric coefficients
///
///   E = g(psi_u, psi_u),  F = g(psi_u, psi_v),  G = g(psi_v, psi_v) = omega^2,
///
/// all functions of u alone. Analytic closures come from the per-family
/// formulas below; numeric_coeffs recomputes them from finite differences of
/// psi and the ambient metric so the two can be cross-checked. The Gauss
/// curvature of the induced metric is K = -omega'' / omega.

#ifndef LOXOFORGE_SURFACE_HPP
#define LOXOFORGE_SURFACE_HPP

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loxoforge/ambient.hpp"
#include "loxoforge/errors.hpp"
#include "loxoforge/numdiff.hpp"
#include "loxoforge/profile.hpp"
#include "loxoforge/vec.hpp"

namespace lox {

struct InvariantSurface {
  AmbientSpace space;
  ProfileCurve profile;
  std::string id = "custom";
  std::string description;

  std::function<Vec3(double)> gamma;               ///< lift of the profile
  std::function<Vec3(double, double)> psi;          ///< flow_v(gamma(u))
  std::function<double(double)> E, F, omega;        ///< analytic coefficients
  std::function<double(double)> omega_u, omega_uu;  ///< optional derivatives

  Interval u_domain;
  Interval trace_window;          ///< preferred sampling window for suites
  std::optional<double> const_K;  ///< declared constant curvature, if any
};

// ---------------------------------------------------------------------------
// Per-family analytic formulas
// ---------------------------------------------------------------------------

namespace surface_detail {

/// Lift of the orbit-space point (xi1, xi2) into the chart. The lift is
/// chosen so that the orbit-space projection of gamma' is the profile
/// velocity; its vertical component is what the analytic F below records.
inline Vec3 lift_point(const AmbientSpace& s, double xi1, double xi2) {
  switch (s.killing) {
    case KillingKind::translation: {
      // Deterministic orthonormal frame of the plane orthogonal to the axis.
      const Vec3 seed = std::abs(s.axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
      const Vec3 e1 = normalized(seed - s.axis * dot(seed, s.axis));
      const Vec3 e2 = cross(s.axis, e1);
      return e1 * xi1 + e2 * xi2;
    }
    case KillingKind::helicoidal:
    case KillingKind::bcv_rotation:
    case KillingKind::heis_screw:
      return {xi1, 0.0, xi2};
    case KillingKind::parabolic_screw:
      return {0.0, xi2, -xi1 / s.a};
    case KillingKind::vertical_translation:
      return {xi1, xi2, 0.0};
    case KillingKind::hyperbolic_screw:
      return {std::cos(xi1), std::sin(xi1), xi2};
    case KillingKind::elliptic_screw:
      return {0.0, 0.5 * (xi1 + std::sqrt(xi1 * xi1 - 4.0)), xi2};
    case KillingKind::heis_translation:
      return {0.0, xi1, -xi2};
    case KillingKind::heis_vertical:
      return {xi1, xi2, 0.0};
  }
  return {xi1, xi2, 0.0};
}

/// omega^2 = g(X, X) along the lift, as a function of the profile point.
inline double analytic_omega2(const AmbientSpace& s, double xi1, double xi2) {
  switch (s.killing) {
    case KillingKind::translation:
      return 1.0;
    case KillingKind::helicoidal:
      return s.a * s.a + xi1 * xi1;
    case KillingKind::bcv_rotation: {
      const double P = 1.0 + s.m * xi1 * xi1;
      return xi1 * xi1 * (4.0 + s.l * s.l * xi1 * xi1) / (4.0 * P * P);
    }
    case KillingKind::parabolic_screw:
      return s.a * s.a / (xi2 * xi2) + s.b * s.b;
    case KillingKind::vertical_translation:
      return 1.0;
    case KillingKind::hyperbolic_screw: {
      const double sn = std::sin(xi1);
      return (1.0 + s.b * s.b * sn * sn) / (sn * sn);
    }
    case KillingKind::elliptic_screw:
      return 0.25 * (xi1 * xi1 - 4.0) + s.b * s.b;
    case KillingKind::heis_translation:
      return 1.0 + xi1 * xi1;
    case KillingKind::heis_vertical:
      return 1.0;
    case KillingKind::heis_screw: {
      const double q = s.a - 0.5 * xi1 * xi1;
      return xi1 * xi1 + q * q;
    }
  }
  return 1.0;
}

/// F = g(gamma', X) along the lift.
inline double analytic_F(const AmbientSpace& s, double xi1, double xi2,
                         double d1, double d2) {
  switch (s.killing) {
    case KillingKind::translation:
      return 0.0;
    case KillingKind::helicoidal:
      return s.a * d2;
    case KillingKind::bcv_rotation: {
      const double P = 1.0 + s.m * xi1 * xi1;
      return -0.5 * s.l * xi1 * xi1 * d2 / P;
    }
    case KillingKind::parabolic_screw:
      return -(s.b / s.a) * d1;
    case KillingKind::vertical_translation:
      return 0.0;
    case KillingKind::hyperbolic_screw:
    case KillingKind::elliptic_screw:
      return s.b * d2;
    case KillingKind::heis_translation:
      return -xi1 * d2;
    case KillingKind::heis_vertical:
      return 0.5 * (d1 * xi2 - d2 * xi1);
    case KillingKind::heis_screw:
      return d2 * (s.a - 0.5 * xi1 * xi1);
  }
  return 0.0;
}

/// E = g(gamma', gamma') along the lift.
inline double analytic_E(const AmbientSpace& s, double xi1, double xi2,
                         double d1, double d2) {
  switch (s.killing) {
    case KillingKind::translation:
    case KillingKind::helicoidal:
    case KillingKind::heis_translation:
    case KillingKind::heis_screw:
      return d1 * d1 + d2 * d2;
    case KillingKind::bcv_rotation: {
      const double P = 1.0 + s.m * xi1 * xi1;
      return d1 * d1 / (P * P) + d2 * d2;
    }
    case KillingKind::parabolic_screw:
      return d2 * d2 / (xi2 * xi2) + d1 * d1 / (s.a * s.a);
    case KillingKind::vertical_translation:
      return (d1 * d1 + d2 * d2) / (xi2 * xi2);
    case KillingKind::hyperbolic_screw: {
      const double sn = std::sin(xi1);
      return d1 * d1 / (sn * sn) + d2 * d2;
    }
    case KillingKind::elliptic_screw:
      return d1 * d1 / (xi1 * xi1 - 4.0) + d2 * d2;
    case KillingKind::heis_vertical: {
      const double eta = 0.5 * (d1 * xi2 - d2 * xi1);
      return d1 * d1 + d2 * d2 + eta * eta;
    }
  }
  return d1 * d1 + d2 * d2;
}

}  // namespace surface_detail

/// Wires a surface from its space and profile: lift, immersion, analytic
/// coefficient closures. omega_u / omega_uu stay empty (finite-difference
/// fallbacks apply) unless the caller supplies them.
inline InvariantSurface assemble_surface(const AmbientSpace& space,
                                         const ProfileCurve& profile,
                                         std::string id, std::string description,
                                         Interval trace_window,
                                         std::optional<double> const_K = {}) {
  if (space.killing == KillingKind::parabolic_screw && space.a == 0.0)
    throw BadParams("parabolic screw surfaces need a != 0");
  InvariantSurface surf;
  surf.space = space;
  surf.profile = profile;
  surf.id = std::move(id);
  surf.description = std::move(description);
  surf.u_domain = profile.u_domain;
  surf.trace_window = trace_window;
  surf.const_K = const_K;

  const AmbientSpace s = space;
  const ProfileCurve c = profile;
  surf.gamma = [s, c](double u) {
    return surface_detail::lift_point(s, c.xi1(u), c.xi2(u));
  };
  auto gamma = surf.gamma;
  surf.psi = [s, gamma](double u, double v) { return flow(s, gamma(u), v); };
  surf.E = [s, c](double u) {
    return surface_detail::analytic_E(s, c.xi1(u), c.xi2(u), c.xi1_prime(u),
                                      c.xi2_prime(u));
  };
  surf.F = [s, c](double u) {
    return surface_detail::analytic_F(s, c.xi1(u), c.xi2(u), c.xi1_prime(u),
                                      c.xi2_prime(u));
  };
  surf.omega = [s, c](double u) {
    return std::sqrt(surface_detail::analytic_omega2(s, c.xi1(u), c.xi2(u)));
  };
  return surf;
}

// ---------------------------------------------------------------------------
// Coefficient operations
// ---------------------------------------------------------------------------

/// First fundamental form sampled at one parameter value.
struct CoeffTriple {
  double E, F, G;
};

/// Induced coefficients from central-difference partials of psi and the
/// ambient metric; independent of the analytic closures.
inline CoeffTriple numeric_coeffs(const InvariantSurface& surf, double u) {
  const double hu = fd_step(u, 1e-6);
  if (!(u - hu > surf.u_domain.lo && u + hu < surf.u_domain.hi))
    throw DomainViolation("numeric_coeffs needs u at least one step inside the domain");
  const double hv = 1e-6;
  const Vec3 p = surf.psi(u, 0.0);
  const Vec3 psi_u = (surf.psi(u + hu, 0.0) - surf.psi(u - hu, 0.0)) / (2.0 * hu);
  const Vec3 psi_v = (surf.psi(u, hv) - surf.psi(u, -hv)) / (2.0 * hv);
  const Mat3 g = metric_matrix(surf.space, p);
  return {quad_form(g, psi_u, psi_u), quad_form(g, psi_u, psi_v),
          quad_form(g, psi_v, psi_v)};
}

/// omega as measured against the ambient metric: sqrt(g(X,X)) at gamma(u).
/// This is the verification-side evaluation; surf.omega is the analytic one.
inline double omega_of(const InvariantSurface& surf, double u) {
  const Vec3 p = surf.gamma(u);
  const Vec3 X = killing_eval(surf.space, p);
  const double w2 = metric_eval(surf.space, p, X, X);
  if (!(w2 > 0.0))
    throw NonPositiveVolume("g(X,X) <= 0 at u = " + std::to_string(u) +
                            ": orbit-space boundary reached");
  return std::sqrt(w2);
}

/// K(u) = -omega''(u) / omega(u). Uses the analytic second derivative when
/// the surface carries one; otherwise a second-order central difference of
/// the analytic omega with step 1e-5 * max(1, |u|) (documented accuracy
/// loss of order 1e-6 from roundoff).
inline double gauss_curvature(const InvariantSurface& surf, double u) {
  const double w = surf.omega(u);
  double w_uu;
  if (surf.omega_uu) {
    w_uu = surf.omega_uu(u);
  } else {
    const double h = fd_step(u, 1e-5);
    if (!(u - h > surf.u_domain.lo && u + h < surf.u_domain.hi))
      throw DomainViolation("gauss_curvature needs u one step inside the domain");
    w_uu = second_central_diff(surf.omega, u, h);
  }
  return -w_uu / w;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

using ParamMap = std::map<std::string, double>;

namespace surface_detail {

inline double take_param(const ParamMap& params, const std::string& key,
                         double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (!std::isfinite(it->second))
    throw BadParams("parameter '" + key + "' must be finite");
  return it->second;
}

inline void reject_unknown_params(const std::string& id, const ParamMap& params,
                                  std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw BadParams("catalog id '" + id + "' does not accept parameter '" +
                      key + "'");
  }
}

/// Closed-form profile helper.
inline ProfileCurve closed_profile(Interval dom, std::function<double(double)> x1,
                                   std::function<double(double)> d1,
                                   std::function<double(double)> x2,
                                   std::function<double(double)> d2) {
  ProfileCurve c;
  c.u_domain = dom;
  c.provenance = Provenance::closed_form;
  c.xi1 = std::move(x1);
  c.xi1_prime = std::move(d1);
  c.xi2 = std::move(x2);
  c.xi2_prime = std::move(d2);
  return c;
}

/// Profile with a quadrature-defined xi2 (anchored at u_ref).
inline ProfileCurve quadrature_profile(Interval dom,
                                       std::function<double(double)> x1,
                                       std::function<double(double)> d1,
                                       std::function<double(double)> d2,
                                       double u_ref, double xi2_ref) {
  ProfileCurve c;
  c.u_domain = dom;
  c.provenance = Provenance::ode_integrated;
  c.xi1 = std::move(x1);
  c.xi1_prime = std::move(d1);
  CumulativeQuadrature q(d2, u_ref, xi2_ref);
  c.xi2 = [q](double u) { return q(u); };
  c.xi2_prime = std::move(d2);
  return c;
}

}  // namespace surface_detail

/// Stable listing order of the built-in surfaces.
inline const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {
      "translational_cylinder", "rotational_cylinder", "cone", "sphere",
      "pseudosphere", "helicoid", "twisted_sphere", "twisted_pseudosphere",
      "bcv_cylinder", "bcv_dome", "minimal_graph", "cosh_wall", "slant_wall",
      "hyperbolic_cylinder", "funnel", "spiral_ramp", "heisenberg_sheet",
      "heisenberg_cylinder", "helicoidal_catenoid"};
  return ids;
}

/// Builds one of the built-in surfaces. Every entry stores a unit-speed
/// profile with analytic derivatives and, where the volume function is
/// elementary, analytic omega_u / omega_uu closures.
inline InvariantSurface build_catalog_surface(const std::string& id,
                                              const ParamMap& params = {}) {
  using surface_detail::closed_profile;
  using surface_detail::quadrature_profile;
  using surface_detail::reject_unknown_params;
  using surface_detail::take_param;
  const double SQ2 = std::sqrt(2.0);

  if (id == "translational_cylinder") {
    reject_unknown_params(id, params, {});
    auto profile = closed_profile(
        {-7.0, 7.0}, [](double u) { return std::cos(u); },
        [](double u) { return -std::sin(u); },
        [](double u) { return std::sin(u); },
        [](double u) { return std::cos(u); });
    auto surf = assemble_surface(
        AmbientSpace::euclidean_translation({0, 0, 1}), profile, id,
        "right circular cylinder in R^3, invariant under axis translation",
        {-3.0, 3.0}, 0.0);
    surf.omega_u = [](double) { return 0.0; };
    surf.omega_uu = [](double) { return 0.0; };
    return surf;
  }

  if (id == "rotational_cylinder") {
    reject_unknown_params(id, params, {});
    auto profile = closed_profile(
        {-3.0, 3.0}, [](double) { return 1.0; }, [](double) { return 0.0; },
        [](double u) { return u; }, [](double) { return 1.0; });
    auto surf = assemble_surface(AmbientSpace::euclidean_helicoidal(0.0),
                                 profile, id,
                                 "vertical unit cylinder of revolution in R^3",
                                 {-2.7, 2.7}, 0.0);
    surf.omega_u = [](double) { return 0.0; };
    surf.omega_uu = [](double) { return 0.0; };
    return surf;
  }

  if (id == "cone") {
    reject_unknown_params(id, params, {});
    const double s3 = std::sqrt(3.0) / 2.0;
    auto profile = closed_profile(
        {0.2, 6.0}, [](double u) { return 0.5 * u; },
        [](double) { return 0.5; }, [s3](double u) { return s3 * u; },
        [s3](double) { return s3; });
    auto surf = assemble_surface(AmbientSpace::euclidean_helicoidal(0.0),
                                 profile, id,
                                 "flat cone of revolution in R^3 (omega = u/2)",
                                 {0.5, 5.0}, 0.0);
    surf.omega_u = [](double) { return 0.5; };
    surf.omega_uu = [](double) { return 0.0; };
    return surf;
  }

  if (id == "sphere") {
    reject_unknown_params(id, params, {});
    auto profile = closed_profile(
        {0.0, 3.14159265358979323846}, [](double u) { return std::sin(u); },
        [](double u) { return std::cos(u); },
        [](double u) { return std::cos(u); },
        [](double u) { return -std::sin(u); });
    auto surf = assemble_surface(AmbientSpace::euclidean_helicoidal(0.0),
                                 profile, id,
                                 "unit sphere in R^3 as a surface of revolution",
                                 {0.2, 3.14159265358979323846 - 0.2}, 1.0);
    surf.omega_u = [](double u) { return std::cos(u); };
    surf.omega_uu = [](double u) { return -std::sin(u); };
    return surf;
  }

  if (id == "pseudosphere") {
    reject_unknown_params(id, params, {});
    auto profile = closed_profile(
        {0.0, 4.0}, [](double u) { return std::exp(-u); },
        [](double u) { return -std::exp(-u); },
        [](double u) {
          const double w = std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * u)));
          return std::atanh(w) - w;
        },
        [](double u) {
          return std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * u)));
        });
    auto surf = assemble_surface(
        AmbientSpace::euclidean_helicoidal(0.0), profile, id,
        "pseudosphere (tractroid) of constant curvature -1 in R^3",
        {0.2, 3.8}, -1.0);
    surf.omega_u = [](double u) { return -std::exp(-u); };
    surf.omega_uu = [](double u) { return std::exp(-u); };
    return surf;
  }

  if (id == "helicoid") {
    reject_unknown_params(id, params, {"a"});
    const double a = take_param(params, "a", 1.0);
    if (a == 0.0)
      throw BadParams("helicoid pitch a must be nonzero (the axis orbit is singular)");
    auto profile = closed_profile(
        {-3.0, 3.0}, [](double u) { return u; }, [](double) { return 1.0; },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    auto surf = assemble_surface(AmbientSpace::euclidean_helicoidal(a), profile,
                                 id, "standard helicoid in R^3 (pitch a)",
                                 {-2.8, 2.8});
    surf.omega_u = [a](double u) { return u / std::sqrt(a * a + u * u); };
    surf.omega_uu = [a](double u) {
      const double w = std::sqrt(a * a + u * u);
      return a * a / (w * w * w);
    };
    return surf;
  }

  if (id == "twisted_sphere") {
    reject_unknown_params(id, params, {"a"});
    const double a = take_param(params, "a", 1.0);
    const double PI = 3.14159265358979323846;
    auto d2 = [a](double u) {
      const double sn = std::sin(u);
      return std::sqrt(a * a + sn * sn);
    };
    auto profile = quadrature_profile(
        {0.0, PI}, [](double u) { return std::sin(u); },
        [](double u) { return std::cos(u); }, d2, 0.0, 0.0);
    auto surf = assemble_surface(
        AmbientSpace::euclidean_helicoidal(a), profile, id,
        "helicoidal surface in R^3 sharing the sphere profile (pitch a)",
        {0.2, PI - 0.2});
    surf.omega_u = [a](double u) {
      const double w = std::sqrt(a * a + std::sin(u) * std::sin(u));
      return std::sin(u) * std::cos(u) / w;
    };
    surf.omega_uu = [a](double u) {
      const double w2 = a * a + std::sin(u) * std::sin(u);
      const double w = std::sqrt(w2);
      const double wu = std::sin(u) * std::cos(u) / w;
      return (std::cos(2.0 * u) - wu * wu) / w;
    };
    return surf;
  }

  if (id == "twisted_pseudosphere") {
    reject_unknown_params(id, params, {"a"});
    const double a = take_param(params, "a", 1.0);
    auto d2 = [a](double u) {
      const double e2 = std::exp(-2.0 * u);
      return std::exp(u) * std::sqrt(std::max(0.0, (a * a + e2) * (1.0 - e2)));
    };
    auto profile = quadrature_profile(
        {0.0, 2.5}, [](double u) { return std::exp(-u); },
        [](double u) { return -std::exp(-u); }, d2, 1.0, 0.0);
    auto surf = assemble_surface(
        AmbientSpace::euclidean_helicoidal(a), profile, id,
        "helicoidal surface in R^3 sharing the pseudosphere profile (pitch a)",
        {0.5, 2.0});
    surf.omega_u = [a](double u) {
      const double e2 = std::exp(-2.0 * u);
      return -e2 / std::sqrt(a * a + e2);
    };
    surf.omega_uu = [a](double u) {
      const double e2 = std::exp(-2.0 * u);
      const double w = std::sqrt(a * a + e2);
      const double wu = -e2 / w;
      return (2.0 * e2 - wu * wu) / w;
    };
    return surf;
  }

  if (id == "bcv_cylinder") {
    reject_unknown_params(id, params, {"l", "m", "f"});
    const double l = take_param(params, "l", 1.0);
    const double m = take_param(params, "m", 0.0);
    const double f = take_param(params, "f", 1.0);
    if (!(f > 0.0)) throw BadParams("bcv_cylinder radius f must be positive");
    if (m < 0.0 && f * f >= -1.0 / m)
      throw BadParams("bcv_cylinder radius leaves the BCV chart (f^2 >= -1/m)");
    const double slope = 0.5 * std::sqrt(4.0 + l * l * f * f);
    auto profile = closed_profile(
        {-3.0, 3.0}, [f](double) { return f; }, [](double) { return 0.0; },
        [slope](double u) { return slope * u; },
        [slope](double) { return slope; });
    auto surf = assemble_surface(
        AmbientSpace::bcv_rotation(l, m), profile, id,
        "flat vertical cylinder in a BCV space; its oblique loxodromes are geodesics",
        {-2.7, 2.7}, 0.0);
    surf.omega_u = [](double) { return 0.0; };
    surf.omega_uu = [](double) { return 0.0; };
    return surf;
  }

  if (id == "bcv_dome") {
    reject_unknown_params(id, params, {});
    const double l = 1.0, m = 0.25;
    const double PI = 3.14159265358979323846;
    auto d2 = [l, m](double u) {
      const double sn = std::sin(u), cs = std::cos(u);
      const double P = 1.0 + m * sn * sn;
      const double deficit = std::max(0.0, 1.0 - cs * cs / (P * P));
      return 0.5 * std::sqrt((4.0 + l * l * sn * sn) * deficit);
    };
    auto profile = quadrature_profile(
        {0.0, PI}, [](double u) { return std::sin(u); },
        [](double u) { return std::cos(u); }, d2, 0.0, 0.0);
    auto surf = assemble_surface(AmbientSpace::bcv_rotation(l, m), profile, id,
                                 "rotational dome in a BCV space (l=1, m=1/4)",
                                 {0.2, PI - 0.2});
    // omega is elementary but its derivatives are long; differentiate the
    // analytic closure with high-order stencils instead.
    auto om = surf.omega;
    surf.omega_u = [om](double u) {
      return richardson_diff(om, u, fd_step(u, 1e-3));
    };
    surf.omega_uu = [om](double u) {
      return richardson_second_diff(om, u, fd_step(u, 1e-3));
    };
    return surf;
  }

  if (id == "minimal_graph") {
    reject_unknown_params(id, params, {});
    auto profile = closed_profile(
        {-4.0, 4.0}, [SQ2](double u) { return u / SQ2; },
        [SQ2](double) { return 1.0 / SQ2; },
        [SQ2](double u) { return std::exp(u / SQ2); },
        [SQ2](double u) { return std::exp(u / SQ2) / SQ2; });
    auto surf = assemble_surface(
        AmbientSpace::h2xr_parabolic_screw(1.0, 0.0), profile, id,
        "minimal graph z = -ln y in H2xR, invariant under horocyclic translation",
        {-3.0, 3.0}, -0.5);
    surf.omega_u = [SQ2](double u) { return -std::exp(-u / SQ2) / SQ2; };
    surf.omega_uu = [SQ2](double u) { return 0.5 * std::exp(-u / SQ2); };
    return surf;
  }

  if (id == "cosh_wall") {
    reject_unknown_params(id, params, {});
    // Free coordinate xi2 = sech u; xi1 is the gudermannian, so the profile
    // is closed form and omega = cosh u exactly.
    auto profile = closed_profile(
        {-3.0, 3.0},
        [](double u) { return 2.0 * std::atan(std::tanh(0.5 * u)); },
        [](double u) { return 1.0 / std::cosh(u); },
        [](double u) { return 1.0 / std::cosh(u); },
        [](double u) { return -std::tanh(u) / std::cosh(u); });
    auto surf = assemble_surface(
        AmbientSpace::h2xr_parabolic_screw(1.0, 0.0), profile, id,
        "horocycle-invariant wall in H2xR with omega = cosh u (curvature -1)",
        {-2.5, 2.5}, -1.0);
    surf.omega_u = [](double u) { return std::sinh(u); };
    surf.omega_uu = [](double u) { return std::cosh(u); };
    return surf;
  }

  if (id == "slant_wall") {
    reject_unknown_params(id, params, {});
    // Free coordinate xi2 = cosh u; the constraint gives xi1' = omega, so
    // F = -omega and the plus/minus branches behave very differently.
    auto omega_val = [](double u) {
      const double sech = 1.0 / std::cosh(u);
      return std::sqrt(1.0 + sech * sech);
    };
    ProfileCurve profile;
    profile.u_domain = {-3.0, 3.0};
    profile.provenance = Provenance::ode_integrated;
    profile.xi2 = [](double u) { return std::cosh(u); };
    profile.xi2_prime = [](double u) { return std::sinh(u); };
    profile.xi1_prime = omega_val;
    CumulativeQuadrature q(omega_val, 0.0, 0.0);
    profile.xi1 = [q](double u) { return q(u); };
    auto surf = assemble_surface(
        AmbientSpace::h2xr_parabolic_screw(1.0, 1.0), profile, id,
        "screw-motion-invariant wall in H2xR (oblique Killing field)",
        {-2.5, 2.5});
    surf.omega_u = [](double u) {
      const double sech = 1.0 / std::cosh(u);
      const double w = std::sqrt(1.0 + sech * sech);
      return -sech * sech * std::tanh(u) / w;
    };
    surf.omega_uu = [](double u) {
      const double sech = 1.0 / std::cosh(u);
      const double tanh = std::tanh(u);
      const double w2 = 1.0 + sech * sech;
      const double w = std::sqrt(w2);
      const double wu = -sech * sech * tanh / w;
      const double d2w2 = 4.0 * sech * sech * tanh * tanh -
                          2.0 * sech * sech * sech * sech;
      return (0.5 * d2w2 - wu * wu) / w;
    };
    return surf;
  }

  if (id == "hyperbolic_cylinder") {
    reject_unknown_params(id, params, {});
    auto profile = closed_profile(
        {-3.0, 3.0}, [](double) { return 0.0; }, [](double) { return 0.0; },
        [](double u) { return std::exp(u); },
        [](double u) { return std::exp(u); });
    auto surf = assemble_surface(
        AmbientSpace::h2xr_vertical(), profile, id,
        "totally geodesic vertical plane in H2xR over the geodesic x = 0",
        {-2.7, 2.7}, 0.0);
    surf.omega_u = [](double) { return 0.0; };
    surf.omega_uu = [](double) { return 0.0; };
    return surf;
  }

  if (id == "funnel") {
    reject_unknown_params(id, params, {});
    const double PI = 3.14159265358979323846;
    auto profile = closed_profile(
        {-4.0, 4.0},
        [PI](double u) { return PI - 2.0 * std::atan(std::exp(-u)); },
        [](double u) { return 1.0 / std::cosh(u); },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    auto surf = assemble_surface(AmbientSpace::h2xr_hyperbolic_screw(1.0),
                                 profile, id,
                                 "complete minimal surface in H2xR",
                                 {-3.0, 3.0});
    surf.omega_u = [](double u) {
      const double w = std::sqrt(1.0 + std::cosh(u) * std::cosh(u));
      return std::sinh(u) * std::cosh(u) / w;
    };
    surf.omega_uu = [](double u) {
      const double w = std::sqrt(1.0 + std::cosh(u) * std::cosh(u));
      const double wu = std::sinh(u) * std::cosh(u) / w;
      return (std::cosh(2.0 * u) - wu * wu) / w;
    };
    return surf;
  }

  if (id == "spiral_ramp") {
    reject_unknown_params(id, params, {});
    // Elliptic screw with b=1: omega = u/2 exactly, so the surface is flat
    // even though the ambient geometry is hyperbolic.
    auto d2 = [](double u) {
      const double q = u * u - 4.0;
      return u * std::sqrt(std::max(0.0, u * u - 5.0)) / q;
    };
    auto profile = quadrature_profile(
        {2.5, 6.0}, [](double u) { return u; }, [](double) { return 1.0; },
        d2, 3.0, 0.0);
    auto surf = assemble_surface(
        AmbientSpace::h2xr_elliptic_screw(1.0), profile, id,
        "flat rotation-invariant spiral ramp in H2xR (omega = u/2)",
        {2.7, 5.5}, 0.0);
    surf.omega_u = [](double) { return 0.5; };
    surf.omega_uu = [](double) { return 0.0; };
    return surf;
  }

  if (id == "heisenberg_sheet") {
    reject_unknown_params(id, params, {});
    auto d2 = [SQ2](double u) {
      return std::sqrt(1.0 + 0.5 * u * u) / SQ2;
    };
    auto profile = quadrature_profile(
        {-3.0, 3.0}, [SQ2](double u) { return u / SQ2; },
        [SQ2](double) { return 1.0 / SQ2; }, d2, 0.0, 0.0);
    auto surf = assemble_surface(
        AmbientSpace::heis_translation(), profile, id,
        "translation-invariant sheet in the Heisenberg group", {-2.5, 2.5});
    surf.omega_u = [](double u) {
      return 0.5 * u / std::sqrt(1.0 + 0.5 * u * u);
    };
    surf.omega_uu = [](double u) {
      const double w = std::sqrt(1.0 + 0.5 * u * u);
      return 0.5 / (w * w * w);
    };
    return surf;
  }

  if (id == "heisenberg_cylinder") {
    reject_unknown_params(id, params, {});
    auto profile = closed_profile(
        {-7.0, 7.0}, [](double u) { return std::cos(u); },
        [](double u) { return -std::sin(u); },
        [](double u) { return std::sin(u); },
        [](double u) { return std::cos(u); });
    auto surf = assemble_surface(
        AmbientSpace::heis_vertical(), profile, id,
        "flat vertical unit cylinder in the Heisenberg group", {-3.0, 3.0},
        0.0);
    surf.omega_u = [](double) { return 0.0; };
    surf.omega_uu = [](double) { return 0.0; };
    return surf;
  }

  if (id == "helicoidal_catenoid") {
    reject_unknown_params(id, params, {});
    const double PI = 3.14159265358979323846;
    auto profile = closed_profile(
        {-4.0, 4.0}, [](double u) { return std::sqrt(u * u + 1.0); },
        [](double u) { return u / std::sqrt(u * u + 1.0); },
        [PI](double u) { return 0.5 * (u - (0.5 * PI - std::atan(u))); },
        [](double u) { return 0.5 * (u * u + 2.0) / (u * u + 1.0); });
    auto surf = assemble_surface(
        AmbientSpace::heis_screw(0.5), profile, id,
        "helicoidal minimal surface in the Heisenberg group (pitch 1/2)",
        {-3.0, 3.0});
    surf.omega_u = [](double u) { return u; };
    surf.omega_uu = [](double) { return 1.0; };
    return surf;
  }

  throw UnknownCatalogId(id);
}

}  // namespace lox

#endif  // LOXOFORGE_SURFACE_HPP
