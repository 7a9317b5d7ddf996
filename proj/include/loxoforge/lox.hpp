/// @file lox.hpp
/// Loxodromes of invariant surfaces. A loxodrome crosses every orbit (the
/// v-coordinate curves) at a fixed angle theta0. In the induced metric
/// E du^2 + 2F du dv + omega^2 dv^2 this pins the derivative
///
///   dv/du = (-F +- cot(theta0) * omega) / omega^2        (master integrand)
///
/// for a unit-speed horizontal decomposition, and the arc length obeys
/// s = (u - u0) / sin(theta0). Tracing is therefore a single quadrature in u.
/// For constant-curvature profiles (omega'' + K omega = 0) the quadrature has
/// elementary antiderivatives; closed_form_v evaluates them.

#ifndef LOXOFORGE_LOX_HPP
#define LOXOFORGE_LOX_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "loxoforge/errors.hpp"
#include "loxoforge/numdiff.hpp"
#include "loxoforge/quadrature.hpp"
#include "loxoforge/surface.hpp"

namespace lox {

/// Sign choice in the master integrand. With increasing u the plus branch
/// meets the orbits at theta0 and the minus branch at pi - theta0; the two
/// coincide at theta0 = pi/2.
enum class Branch { plus, minus };

inline const char* branch_name(Branch b) {
  return b == Branch::plus ? "plus" : "minus";
}

struct LoxodromeSpec {
  double theta0 = 0.78539816339744830961;  ///< crossing angle, in (0, pi)
  Branch branch = Branch::plus;
  double u0 = 0.0;
  double v0 = 0.0;
  int grid = 1001;  ///< number of trace samples (>= 2)
};

struct TraceSample {
  double u = 0.0, v = 0.0;
  Vec3 p;         ///< psi(u, v)
  double s = 0.0;  ///< signed arc length (u - u0) / sin(theta0)
};

struct LoxodromeTrace {
  std::string surface_id;
  LoxodromeSpec spec;
  double u_end = 0.0;
  double eps_dom = 1e-4;
  std::vector<TraceSample> samples;
  bool monotone_v = true;
  bool diverging = false;  ///< |v - v0| exceeded 1 / eps_dom somewhere
};

namespace lox_detail {

/// cos(theta0), snapped to exact zero near pi/2 so meridian-angle traces do
/// not pick up a spurious 1e-17-scale drift in v.
inline double snapped_cos(double theta0) {
  const double c = std::cos(theta0);
  return std::abs(c) <= 1e-14 ? 0.0 : c;
}

inline double branch_sign(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }

inline void require_angle(double theta0) {
  if (!(theta0 > 0.0 && theta0 < 3.14159265358979323846))
    throw BadParams("theta0 must lie strictly between 0 and pi");
}

/// omega' from the surface closure when present, otherwise a fourth-order
/// difference of the analytic omega.
inline double omega_u_of(const InvariantSurface& surf, double u) {
  if (surf.omega_u) return surf.omega_u(u);
  return richardson_diff(surf.omega, u, fd_step(u, 1e-3));
}

}  // namespace lox_detail

/// dv/du of the loxodrome at u. Throws NearSingularOrbit when the orbit
/// length omega falls below tol_omega (the integrand blows up like 1/omega).
inline double integrand(const InvariantSurface& surf, const LoxodromeSpec& spec,
                        double u, double tol_omega = 1e-9) {
  const double w = surf.omega(u);
  if (!(w > tol_omega))
    throw NearSingularOrbit("orbit length omega <= " + std::to_string(tol_omega) +
                                " on the integration path",
                            u);
  const double c = lox_detail::snapped_cos(spec.theta0);
  const double cot = c / std::sin(spec.theta0);
  return (-surf.F(u) + lox_detail::branch_sign(spec.branch) * cot * w) / (w * w);
}

/// Traces the loxodrome from (u0, v0) to u_end on a uniform u-grid of
/// spec.grid samples. The closed interval [u0, u_end] (either orientation)
/// must stay inside the u-domain shrunk by eps_dom at each end; endpoints may
/// touch the shrunk boundary, so eps_dom = 0 admits traces from the domain
/// closure when the integrand itself stays finite there.
inline LoxodromeTrace trace(const InvariantSurface& surf,
                            const LoxodromeSpec& spec, double u_end,
                            double eps_dom = 1e-4) {
  lox_detail::require_angle(spec.theta0);
  if (!(std::isfinite(spec.u0) && std::isfinite(spec.v0) && std::isfinite(u_end)))
    throw BadParams("trace endpoints must be finite");
  if (spec.grid < 2) throw BadParams("trace needs at least 2 samples");
  if (u_end == spec.u0) throw BadParams("u_end must differ from u0");
  if (!(eps_dom >= 0.0) || !std::isfinite(eps_dom))
    throw BadParams("eps_dom must be a finite nonnegative number");

  const double lo = std::min(spec.u0, u_end), hi = std::max(spec.u0, u_end);
  if (!(surf.u_domain.lo + eps_dom <= lo && hi <= surf.u_domain.hi - eps_dom))
    throw DomainViolation("trace interval [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] leaves the u-domain shrunk by " +
                          std::to_string(eps_dom));

  const int n = spec.grid;
  std::vector<double> nodes(n);
  const double du = (u_end - spec.u0) / (n - 1);
  for (int i = 0; i < n; ++i) nodes[i] = spec.u0 + du * i;
  nodes.back() = u_end;

  auto f = [&surf, &spec](double u) { return integrand(surf, spec, u); };
  const std::vector<double> dv = cumulative_integral(f, nodes);

  LoxodromeTrace tr;
  tr.surface_id = surf.id;
  tr.spec = spec;
  tr.u_end = u_end;
  tr.eps_dom = eps_dom;
  tr.samples.resize(n);
  const double inv_sin = 1.0 / std::sin(spec.theta0);
  const double v_limit = eps_dom > 0.0 ? 1.0 / eps_dom
                                       : std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    TraceSample& smp = tr.samples[i];
    smp.u = nodes[i];
    smp.v = spec.v0 + dv[i];
    smp.s = (nodes[i] - spec.u0) * inv_sin;
    smp.p = surf.psi(smp.u, smp.v);
    if (!std::isfinite(smp.v))
      throw QuadratureNonConvergent("loxodrome quadrature produced a non-finite v at u = " +
                                    std::to_string(nodes[i]));
    if (std::abs(smp.v - spec.v0) > v_limit) tr.diverging = true;
  }
  bool up = true, down = true;
  for (int i = 1; i < n; ++i) {
    const double d = tr.samples[i].v - tr.samples[i - 1].v;
    up = up && d >= 0.0;
    down = down && d <= 0.0;
  }
  tr.monotone_v = up || down;
  return tr;
}

/// Total arc length of a trace by the loxodrome law (nonnegative).
inline double arc_length(const LoxodromeTrace& tr) {
  return std::abs(tr.u_end - tr.spec.u0) / std::sin(tr.spec.theta0);
}

/// Clairaut-style quantity omega * cos(theta0) at one parameter value,
/// evaluated against the ambient metric. Constant along the trace exactly
/// when the orbit length is constant.
inline double clairaut_quantity(const InvariantSurface& surf, double theta0,
                                double u) {
  return omega_of(surf, u) * lox_detail::snapped_cos(theta0);
}

/// Max |d/ds (F u' + omega^2 v')| along the trace: the conserved-momentum
/// residual of the geodesic system. Zero (to quadrature accuracy) exactly
/// when the loxodrome is a geodesic.
inline double geodesic_residual(const InvariantSurface& surf,
                                const LoxodromeTrace& tr) {
  const int n = static_cast<int>(tr.samples.size());
  if (n < 2) return 0.0;
  const double st = std::sin(tr.spec.theta0);
  std::vector<double> J(n);
  for (int i = 0; i < n; ++i) {
    const double u = tr.samples[i].u;
    const double w = surf.omega(u);
    J[i] = st * (surf.F(u) + w * w * integrand(surf, tr.spec, u));
  }
  const double h = (tr.u_end - tr.spec.u0) / (n - 1);
  const std::vector<double> dJ = grid_derivative(J, h);
  double worst = 0.0;
  for (double d : dJ) worst = std::max(worst, std::abs(d) * st);
  return worst;
}

// ---------------------------------------------------------------------------
// Constant-curvature closed forms
// ---------------------------------------------------------------------------

enum class CurvatureClass { positive, flat, negative };

inline const char* curvature_class_name(CurvatureClass c) {
  switch (c) {
    case CurvatureClass::positive: return "positive";
    case CurvatureClass::flat: return "flat";
    case CurvatureClass::negative: return "negative";
  }
  return "flat";
}

/// Elementary antiderivative of the master integrand for a horizontal
/// unit-speed profile (E = 1, F = 0) of constant curvature K. The conserved
/// constant a distinguishes the negative-curvature subcases.
struct ClosedFormSolution {
  CurvatureClass cls = CurvatureClass::flat;
  double K = 0.0;
  double R = 0.0;        ///< 1 / sqrt(|K|) for the curved classes
  double a_const = 0.0;  ///< omega^2 +- R^2 omega'^2 (curved), omega' (flat)
  double c_const = 1.0;  ///< omega value for the flat omega == const subcase
  double b_const = 0.0;  ///< integration constant from v(u0) = v0
  double cot0 = 0.0;
  double branch_sign = 1.0;
};

namespace lox_detail {

/// The antiderivative with b = 0; make_closed_form shifts it through v(u0)=v0.
inline double closed_form_core(const ClosedFormSolution& cf,
                               const InvariantSurface& surf, double u) {
  const double w = surf.omega(u);
  const double wu = omega_u_of(surf, u);
  const double sb = cf.branch_sign;
  switch (cf.cls) {
    case CurvatureClass::positive:
      return -sb * cf.cot0 * (cf.R / std::sqrt(cf.a_const)) *
             std::asinh(cf.R * wu / w);
    case CurvatureClass::negative: {
      if (std::abs(cf.a_const) <= 1e-9)  // omega proportional to e^{+-u/R}
        return -sb * cf.cot0 / wu;
      if (cf.a_const < 0.0) {
        const double root = std::sqrt(-cf.a_const);
        return -sb * cf.cot0 * (cf.R / root) *
               std::log(std::abs(cf.R * wu + root) / w);
      }
      const double root = std::sqrt(cf.a_const);
      return sb * cf.cot0 * (cf.R / root) * std::asin(cf.R * wu / w);
    }
    case CurvatureClass::flat:
      if (std::abs(cf.a_const) > 1e-8)  // omega affine with slope a
        return sb * (cf.cot0 / cf.a_const) * std::log(w);
      return sb * (cf.cot0 / cf.c_const) * u;  // omega constant
  }
  return 0.0;
}

}  // namespace lox_detail

/// Builds the closed-form solution for a constant-curvature surface and a
/// crossing spec. Preconditions: horizontal unit-speed profile (F = 0,
/// E = 1 on the trace window) and omega'' + K omega = 0 there; violations
/// raise BadParams / WrongCurvatureClass, and a drifting conserved constant
/// raises InconsistentConstants.
inline ClosedFormSolution make_closed_form(const InvariantSurface& surf,
                                           const LoxodromeSpec& spec) {
  lox_detail::require_angle(spec.theta0);
  constexpr int kProbes = 20;
  const Interval win = surf.trace_window;
  auto probe_u = [&win](int i) {
    return win.lo + (win.hi - win.lo) * (i + 0.5) / kProbes;
  };

  for (int i = 0; i < kProbes; ++i) {
    const double u = probe_u(i);
    if (std::abs(surf.F(u)) > 1e-12 || std::abs(surf.E(u) - 1.0) > 1e-10)
      throw BadParams("closed forms require a horizontal unit-speed profile "
                      "(F = 0, E = 1)");
  }

  double K;
  if (surf.const_K) {
    K = *surf.const_K;
  } else {
    K = 0.0;
    for (int i = 0; i < kProbes; ++i) K += gauss_curvature(surf, probe_u(i));
    K /= kProbes;
  }
  for (int i = 0; i < kProbes; ++i) {
    const double u = probe_u(i);
    const double w_uu = surf.omega_uu
                            ? surf.omega_uu(u)
                            : richardson_second_diff(surf.omega, u, fd_step(u, 1e-3));
    if (std::abs(w_uu + K * surf.omega(u)) > 1e-6)
      throw WrongCurvatureClass("omega'' + K omega != 0: curvature is not the "
                                "constant " + std::to_string(K));
  }

  ClosedFormSolution cf;
  cf.K = K;
  cf.cot0 = lox_detail::snapped_cos(spec.theta0) / std::sin(spec.theta0);
  cf.branch_sign = lox_detail::branch_sign(spec.branch);

  auto sampled_constant = [&](auto&& value) {
    double mean = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < kProbes; ++i) {
      const double a = value(probe_u(i));
      mean += a;
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    if (hi - lo > 1e-6)
      throw InconsistentConstants("conserved closed-form constant drifts by " +
                                  std::to_string(hi - lo) + " across the window");
    return mean / kProbes;
  };

  if (std::abs(K) < 1e-9) {
    cf.cls = CurvatureClass::flat;
    cf.a_const = sampled_constant(
        [&](double u) { return lox_detail::omega_u_of(surf, u); });
    if (std::abs(cf.a_const) <= 1e-8)
      cf.c_const = sampled_constant([&](double u) { return surf.omega(u); });
  } else if (K > 0.0) {
    cf.cls = CurvatureClass::positive;
    cf.R = 1.0 / std::sqrt(K);
    cf.a_const = sampled_constant([&](double u) {
      const double w = surf.omega(u), wu = lox_detail::omega_u_of(surf, u);
      return w * w + cf.R * cf.R * wu * wu;
    });
  } else {
    cf.cls = CurvatureClass::negative;
    cf.R = 1.0 / std::sqrt(-K);
    cf.a_const = sampled_constant([&](double u) {
      const double w = surf.omega(u), wu = lox_detail::omega_u_of(surf, u);
      return w * w - cf.R * cf.R * wu * wu;
    });
  }

  cf.b_const = spec.v0 - lox_detail::closed_form_core(cf, surf, spec.u0);
  return cf;
}

/// Evaluates v(u) of the closed-form loxodrome.
inline double closed_form_v(const ClosedFormSolution& cf,
                            const InvariantSurface& surf, double u) {
  return lox_detail::closed_form_core(cf, surf, u) + cf.b_const;
}

}  // namespace lox

#endif  // LOXOFORGE_LOX_HPP
