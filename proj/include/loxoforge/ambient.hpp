/// @file ambient.hpp
/// The supported three-dimensional Riemannian ambient spaces, each carrying
/// one distinguished Killing vector field and the closed-form flow of that
/// field. Charts are global Cartesian triples (x,y,z):
///
///   Euclidean3   g = dx^2 + dy^2 + dz^2
///   BCV(l,m)     g = (dx^2+dy^2)/P^2 + (dz + l(y dx - x dy)/(2P))^2,
///                P = 1 + m(x^2+y^2); domain x^2+y^2 < -1/m when m < 0
///   H2xR         g = (dx^2+dy^2)/y^2 + dz^2, upper half-space y > 0
///   Heisenberg3  g = dx^2 + dy^2 + (dz + (y dx - x dy)/2)^2
///
/// All operations are pure functions of immutable value types.

#ifndef LOXOFORGE_AMBIENT_HPP
#define LOXOFORGE_AMBIENT_HPP

#include <cmath>
#include <string>

#include "loxoforge/errors.hpp"
#include "loxoforge/vec.hpp"

namespace lox {

enum class Family { euclidean3, bcv, h2xr, heisenberg3 };

/// The one-parameter isometry group in use, named by what its flow does.
enum class KillingKind {
  translation,           ///< Euclidean3: unit-axis translation
  helicoidal,            ///< Euclidean3: rotation about z with pitch a (a=0: rotation)
  bcv_rotation,          ///< BCV: rotation about the fiber through the origin
  parabolic_screw,       ///< H2xR: a*(horocyclic translation) + b*(vertical)
  hyperbolic_screw,      ///< H2xR: dilation along the geodesic x=0 + b*(vertical)
  elliptic_screw,        ///< H2xR: rotation about the point (0,1) + b*(vertical)
  vertical_translation,  ///< H2xR: unit vertical field
  heis_translation,      ///< Heisenberg3: left translation in x
  heis_vertical,         ///< Heisenberg3: center translation
  heis_screw             ///< Heisenberg3: rotation about the z-axis with pitch a
};

struct AmbientSpace {
  Family family = Family::euclidean3;
  KillingKind killing = KillingKind::translation;
  double l = 0.0, m = 0.0;     ///< BCV parameters
  double a = 0.0, b = 0.0;     ///< field parameters (pitch / screw components)
  Vec3 axis{0.0, 0.0, 1.0};    ///< translation axis (unit)

  // --- named constructors ---------------------------------------------------

  static AmbientSpace euclidean_translation(const Vec3& axis) {
    const double n = norm(axis);
    if (!(n > 0.0) || !std::isfinite(n))
      throw BadParams("translation axis must be a nonzero vector");
    AmbientSpace s;
    s.family = Family::euclidean3;
    s.killing = KillingKind::translation;
    s.axis = axis / n;
    return s;
  }

  static AmbientSpace euclidean_helicoidal(double a) {
    require_finite(a, "helicoidal pitch a");
    AmbientSpace s;
    s.family = Family::euclidean3;
    s.killing = KillingKind::helicoidal;
    s.a = a;
    return s;
  }

  static AmbientSpace bcv_rotation(double l, double m) {
    require_finite(l, "BCV parameter l");
    require_finite(m, "BCV parameter m");
    AmbientSpace s;
    s.family = Family::bcv;
    s.killing = KillingKind::bcv_rotation;
    s.l = l;
    s.m = m;
    return s;
  }

  static AmbientSpace h2xr_parabolic_screw(double a, double b) {
    require_finite(a, "parabolic screw parameter a");
    require_finite(b, "parabolic screw parameter b");
    AmbientSpace s;
    s.family = Family::h2xr;
    s.killing = KillingKind::parabolic_screw;
    s.a = a;
    s.b = b;
    return s;
  }

  static AmbientSpace h2xr_hyperbolic_screw(double b) {
    require_finite(b, "hyperbolic screw parameter b");
    AmbientSpace s;
    s.family = Family::h2xr;
    s.killing = KillingKind::hyperbolic_screw;
    s.b = b;
    return s;
  }

  static AmbientSpace h2xr_elliptic_screw(double b) {
    require_finite(b, "elliptic screw parameter b");
    AmbientSpace s;
    s.family = Family::h2xr;
    s.killing = KillingKind::elliptic_screw;
    s.b = b;
    return s;
  }

  static AmbientSpace h2xr_vertical() {
    AmbientSpace s;
    s.family = Family::h2xr;
    s.killing = KillingKind::vertical_translation;
    return s;
  }

  static AmbientSpace heis_translation() {
    AmbientSpace s;
    s.family = Family::heisenberg3;
    s.killing = KillingKind::heis_translation;
    return s;
  }

  static AmbientSpace heis_vertical() {
    AmbientSpace s;
    s.family = Family::heisenberg3;
    s.killing = KillingKind::heis_vertical;
    return s;
  }

  static AmbientSpace heis_screw(double a) {
    require_finite(a, "screw pitch a");
    AmbientSpace s;
    s.family = Family::heisenberg3;
    s.killing = KillingKind::heis_screw;
    s.a = a;
    return s;
  }

 private:
  static void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw BadParams(std::string(what) + " must be finite");
  }
};

// ---------------------------------------------------------------------------
// Domain constraints
// ---------------------------------------------------------------------------

inline bool in_domain(const AmbientSpace& s, const Vec3& p) {
  switch (s.family) {
    case Family::euclidean3:
    case Family::heisenberg3:
      return true;
    case Family::h2xr:
      return p.y > 0.0;
    case Family::bcv: {
      if (s.m >= 0.0) return true;
      // Metric blows up on x^2+y^2 = -1/m; keep a strict margin inside.
      return p.x * p.x + p.y * p.y < -1.0 / s.m - 1e-12;
    }
  }
  return false;
}

inline void check_domain(const AmbientSpace& s, const Vec3& p) {
  if (!in_domain(s, p))
    throw DomainViolation("point (" + std::to_string(p.x) + ", " +
                          std::to_string(p.y) + ", " + std::to_string(p.z) +
                          ") outside the chart's admissible region");
}

// ---------------------------------------------------------------------------
// Metric tensor
// ---------------------------------------------------------------------------

/// Metric tensor as a symmetric 3x3 matrix at p (domain is checked).
inline Mat3 metric_matrix(const AmbientSpace& s, const Vec3& p) {
  check_domain(s, p);
  switch (s.family) {
    case Family::euclidean3:
      return Mat3::identity();
    case Family::h2xr: {
      const double iy2 = 1.0 / (p.y * p.y);
      return Mat3::diagonal(iy2, iy2, 1.0);
    }
    case Family::heisenberg3: {
      // dx^2 + dy^2 + eta^2 with eta = dz + (y dx - x dy)/2.
      Mat3 g = Mat3::diagonal(1.0, 1.0, 0.0);
      g.add_outer(Vec3{0.5 * p.y, -0.5 * p.x, 1.0});
      return g;
    }
    case Family::bcv: {
      const double r2 = p.x * p.x + p.y * p.y;
      const double P = 1.0 + s.m * r2;
      const double iP2 = 1.0 / (P * P);
      Mat3 g = Mat3::diagonal(iP2, iP2, 0.0);
      g.add_outer(Vec3{0.5 * s.l * p.y / P, -0.5 * s.l * p.x / P, 1.0});
      return g;
    }
  }
  return Mat3::identity();
}

/// g_p(w1, w2); bilinear and symmetric in (w1, w2).
inline double metric_eval(const AmbientSpace& s, const Vec3& p, const Vec3& w1,
                          const Vec3& w2) {
  return quad_form(metric_matrix(s, p), w1, w2);
}

// ---------------------------------------------------------------------------
// Killing field and its flow
// ---------------------------------------------------------------------------

/// X(p) in chart coordinates.
inline Vec3 killing_eval(const AmbientSpace& s, const Vec3& p) {
  check_domain(s, p);
  switch (s.killing) {
    case KillingKind::translation:
      return s.axis;
    case KillingKind::helicoidal:
      return {-p.y, p.x, s.a};
    case KillingKind::bcv_rotation:
      return {-p.y, p.x, 0.0};
    case KillingKind::parabolic_screw:
      return {s.a, 0.0, s.b};
    case KillingKind::hyperbolic_screw:
      return {p.x, p.y, s.b};
    case KillingKind::elliptic_screw:
      // Rotation field of H^2 fixing (0,1), plus b * vertical.
      return {0.5 * (p.x * p.x - p.y * p.y + 1.0), p.x * p.y, s.b};
    case KillingKind::vertical_translation:
    case KillingKind::heis_vertical:
      return {0.0, 0.0, 1.0};
    case KillingKind::heis_translation:
      return {1.0, 0.0, 0.5 * p.y};
    case KillingKind::heis_screw:
      return {-p.y, p.x, s.a};
  }
  return {0.0, 0.0, 0.0};
}

/// Closed-form flow point phi_t(p). flow(p,0) = p and
/// flow(flow(p,s),t) = flow(p,s+t); the listed fields preserve their domains.
inline Vec3 flow(const AmbientSpace& s, const Vec3& p, double t) {
  check_domain(s, p);
  switch (s.killing) {
    case KillingKind::translation:
      return p + s.axis * t;
    case KillingKind::helicoidal: {
      const double c = std::cos(t), sn = std::sin(t);
      return {p.x * c - p.y * sn, p.x * sn + p.y * c, p.z + s.a * t};
    }
    case KillingKind::bcv_rotation: {
      const double c = std::cos(t), sn = std::sin(t);
      return {p.x * c - p.y * sn, p.x * sn + p.y * c, p.z};
    }
    case KillingKind::parabolic_screw:
      return {p.x + s.a * t, p.y, p.z + s.b * t};
    case KillingKind::hyperbolic_screw: {
      const double e = std::exp(t);
      return {e * p.x, e * p.y, p.z + s.b * t};
    }
    case KillingKind::elliptic_screw: {
      // Rotation about (0,1) in the upper half-plane model. The denominator
      // is 2(cosh d - ...) > 0 for y > 0 (it equals 4y^2 / |...|^2 terms);
      // a vanishing denominator can only mean the point left the chart.
      const double r2 = p.x * p.x + p.y * p.y;
      const double c = std::cos(t), sn = std::sin(t);
      const double D = (1.0 - r2) * c - 2.0 * p.x * sn + 1.0 + r2;
      if (!(D > 0.0))
        throw DomainViolation("elliptic rotation flow left the half-plane chart");
      return {((1.0 - r2) * sn + 2.0 * p.x * c) / D, 2.0 * p.y / D,
              p.z + s.b * t};
    }
    case KillingKind::vertical_translation:
    case KillingKind::heis_vertical:
      return {p.x, p.y, p.z + t};
    case KillingKind::heis_translation:
      return {p.x + t, p.y, p.z + 0.5 * p.y * t};
    case KillingKind::heis_screw: {
      const double c = std::cos(t), sn = std::sin(t);
      return {p.x * c - p.y * sn, p.x * sn + p.y * c, p.z + s.a * t};
    }
  }
  return p;
}

/// Human-readable family tag used by the CLI and config files.
inline std::string family_tag(const AmbientSpace& s) {
  switch (s.killing) {
    case KillingKind::translation: return "euclidean_translation";
    case KillingKind::helicoidal: return "euclidean_helicoidal";
    case KillingKind::bcv_rotation: return "bcv_rotation";
    case KillingKind::parabolic_screw: return "h2xr_parabolic_screw";
    case KillingKind::hyperbolic_screw: return "h2xr_hyperbolic_screw";
    case KillingKind::elliptic_screw: return "h2xr_elliptic_screw";
    case KillingKind::vertical_translation: return "h2xr_vertical";
    case KillingKind::heis_translation: return "heis_translation";
    case KillingKind::heis_vertical: return "heis_vertical";
    case KillingKind::heis_screw: return "heis_screw";
  }
  return "?";
}

}  // namespace lox

#endif  // LOXOFORGE_AMBIENT_HPP
