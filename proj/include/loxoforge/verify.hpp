/// @file verify.hpp
/// Independent verification of traced loxodromes. Everything here is
/// recomputed from the ambient metric and finite differences of the immersion
/// and of the traced samples themselves — the analytic coefficient closures
/// enter only the analytic-vs-numeric cross-check field. In particular the
/// along-trace derivative v'(u) is differenced from the sampled v values, so
/// a corrupted trace file cannot pass by construction.

#ifndef LOXOFORGE_VERIFY_HPP
#define LOXOFORGE_VERIFY_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loxoforge/errors.hpp"
#include "loxoforge/lox.hpp"
#include "loxoforge/numdiff.hpp"
#include "loxoforge/surface.hpp"

namespace lox {

// ---------------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------------

using ToleranceMap = std::map<std::string, double>;

/// Defaults sized to the quadrature/differencing accuracy budget.
inline ToleranceMap default_tolerances() {
  return {{"angle", 1e-6},          {"unit_speed", 1e-6},
          {"coeff_identity", 1e-8}, {"analytic_numeric", 1e-6},
          {"curvature_ode", 1e-6},  {"arc_length", 1e-6}};
}

/// Applies LOXOFORGE_TOL_<NAME> environment overrides (NAME upper-cased).
inline ToleranceMap tolerances_with_env(ToleranceMap tols = default_tolerances()) {
  for (auto& [key, value] : tols) {
    std::string var = "LOXOFORGE_TOL_";
    for (char ch : key) var += static_cast<char>(std::toupper(ch));
    if (const char* raw = std::getenv(var.c_str())) {
      char* end = nullptr;
      const double parsed = std::strtod(raw, &end);
      if (end == raw || *end != '\0' || !std::isfinite(parsed) || parsed <= 0.0)
        throw ConfigError(var + " must be a positive number, got '" +
                          std::string(raw) + "'");
      value = parsed;
    }
  }
  return tols;
}

// ---------------------------------------------------------------------------
// Per-trace diagnostics
// ---------------------------------------------------------------------------

/// Everything measured along one trace, per sample. angle_dev feeds the CSV
/// writer; the maxima feed VerificationReport.
struct TraceDiagnostics {
  std::vector<double> angle;      ///< measured crossing angle, radians
  std::vector<double> angle_dev;  ///< |angle - expected|
  std::vector<double> speed_dev;  ///< |sin(theta0) * ||dbeta/du|| - 1|
  std::vector<double> coeff_identity_dev;
  std::vector<double> analytic_numeric_dev;
  std::vector<double> clairaut;  ///< omega * cos(theta0) against the ambient
  double numeric_length = 0.0;   ///< composite-Simpson integral of ||dbeta/du||
};

namespace verify_detail {

/// Composite Simpson over uniformly spaced samples; falls back to a 3/8 tail
/// when the panel count is odd.
inline double composite_simpson(const std::vector<double>& y, double h) {
  const int n = static_cast<int>(y.size());
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (y[0] + y[1]);
  int even_end = n - 1;           // index range [0, even_end] gets Simpson 1/3
  const bool tail = (n - 1) % 2;  // odd panel count: keep 3 panels for 3/8
  if (tail) even_end = n - 4;
  double sum = 0.0;
  if (even_end >= 2) {
    sum += y[0] + y[even_end];
    for (int i = 1; i < even_end; ++i) sum += y[i] * (i % 2 ? 4.0 : 2.0);
    sum *= h / 3.0;
  }
  if (tail) {
    const int b = even_end < 0 ? 0 : even_end;
    sum += 3.0 * h / 8.0 * (y[b] + 3.0 * y[b + 1] + 3.0 * y[b + 2] + y[b + 3]);
  }
  return std::abs(sum);
}

/// d(psi)/du at fixed v from central differences, degrading to one-sided
/// second order when the stencil would leave the u-domain.
inline Vec3 psi_partial_u(const InvariantSurface& surf, double u, double v) {
  const double h = fd_step(u, 1e-6);
  const bool left_ok = u - h > surf.u_domain.lo;
  const bool right_ok = u + h < surf.u_domain.hi;
  if (left_ok && right_ok)
    return (surf.psi(u + h, v) - surf.psi(u - h, v)) / (2.0 * h);
  if (right_ok)
    return (surf.psi(u, v) * -3.0 + surf.psi(u + h, v) * 4.0 -
            surf.psi(u + 2.0 * h, v)) /
           (2.0 * h);
  return (surf.psi(u, v) * 3.0 - surf.psi(u - h, v) * 4.0 +
          surf.psi(u - 2.0 * h, v)) /
         (2.0 * h);
}

inline Vec3 psi_partial_v(const InvariantSurface& surf, double u, double v) {
  const double h = fd_step(v, 1e-6);
  return (surf.psi(u, v + h) - surf.psi(u, v - h)) / (2.0 * h);
}

}  // namespace verify_detail

/// Measures a trace against the ambient metric. The expected crossing angle
/// is theta0 on the plus branch and pi - theta0 on the minus branch (both
/// referred to the direction of increasing u).
inline TraceDiagnostics trace_diagnostics(const InvariantSurface& surf,
                                          const LoxodromeTrace& tr) {
  const int n = static_cast<int>(tr.samples.size());
  if (n < 2) throw BadParams("trace_diagnostics needs at least 2 samples");
  const double theta0 = tr.spec.theta0;
  const double st = std::sin(theta0);
  const double c0 = lox_detail::snapped_cos(theta0);
  const double expected =
      tr.spec.branch == Branch::plus || c0 == 0.0 ? theta0 : 3.14159265358979323846 - theta0;

  std::vector<double> v_values(n);
  for (int i = 0; i < n; ++i) v_values[i] = tr.samples[i].v;
  const double h = (tr.u_end - tr.spec.u0) / (n - 1);
  const std::vector<double> v_prime = grid_derivative(v_values, h);

  TraceDiagnostics d;
  d.angle.resize(n);
  d.angle_dev.resize(n);
  d.speed_dev.resize(n);
  d.coeff_identity_dev.resize(n);
  d.analytic_numeric_dev.resize(n);
  d.clairaut.resize(n);
  std::vector<double> speeds(n);

  for (int i = 0; i < n; ++i) {
    const TraceSample& smp = tr.samples[i];
    const Vec3 tangent =
        verify_detail::psi_partial_u(surf, smp.u, smp.v) +
        verify_detail::psi_partial_v(surf, smp.u, smp.v) * v_prime[i];
    const Vec3 X = killing_eval(surf.space, smp.p);
    const double tt = metric_eval(surf.space, smp.p, tangent, tangent);
    const double xx = metric_eval(surf.space, smp.p, X, X);
    const double tx = metric_eval(surf.space, smp.p, tangent, X);
    const double speed = std::sqrt(std::max(0.0, tt));
    speeds[i] = speed;

    const double denom = speed * std::sqrt(std::max(0.0, xx));
    const double cosang = denom > 0.0 ? std::clamp(tx / denom, -1.0, 1.0) : 1.0;
    d.angle[i] = std::acos(cosang);
    d.angle_dev[i] = std::abs(d.angle[i] - expected);
    d.speed_dev[i] = std::abs(st * speed - 1.0);
    d.clairaut[i] = std::sqrt(std::max(0.0, xx)) * c0;

    const CoeffTriple nc = numeric_coeffs(surf, smp.u);
    const double w = omega_of(surf, smp.u);
    d.coeff_identity_dev[i] =
        std::abs((nc.E * nc.G - nc.F * nc.F) - w * w) / (w * w);
    const double dev_e = std::abs(nc.E - surf.E(smp.u));
    const double dev_f = std::abs(nc.F - surf.F(smp.u));
    const double dev_g = std::abs(nc.G - w * w);
    const double dev_w = std::abs(w - surf.omega(smp.u));
    d.analytic_numeric_dev[i] = std::max({dev_e, dev_f, dev_g, dev_w});
  }
  d.numeric_length =
      verify_detail::composite_simpson(speeds, std::abs(h));
  return d;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct VerificationReport {
  std::string surface_id;
  LoxodromeSpec spec;  ///< echo of the traced spec
  double max_angle_dev = 0.0;
  double max_unit_speed_dev = 0.0;
  double max_coeff_identity_dev = 0.0;  ///< relative
  double max_analytic_numeric_dev = 0.0;
  std::optional<double> curvature_ode_residual;  ///< only when const-K claimed
  double clairaut_drift = 0.0;
  double arc_length_rel_err = 0.0;
  bool pass = false;
};

namespace verify_detail {

inline double tol_of(const ToleranceMap& tols, const std::string& key) {
  auto it = tols.find(key);
  return it == tols.end() ? default_tolerances().at(key) : it->second;
}

/// max |omega'' + K omega| over the samples, with omega evaluated against the
/// ambient metric and differentiated numerically (never the closures).
inline double curvature_ode_residual_of(const InvariantSurface& surf, double K,
                                        const std::vector<TraceSample>& samples) {
  double worst = 0.0;
  auto w_of = [&surf](double u) { return omega_of(surf, u); };
  for (const TraceSample& smp : samples) {
    const double margin =
        std::min(smp.u - surf.u_domain.lo, surf.u_domain.hi - smp.u);
    if (margin <= 1e-8) continue;  // FD stencil cannot straddle the boundary
    const double h = std::min(fd_step(smp.u, 1e-3), 0.25 * margin);
    const double w_uu = richardson_second_diff(w_of, smp.u, h);
    worst = std::max(worst, std::abs(w_uu + K * w_of(smp.u)));
  }
  return worst;
}

}  // namespace verify_detail

/// Aggregates trace diagnostics into a pass/fail report. The gating fields
/// are angle, unit speed, coefficient identity, analytic-vs-numeric,
/// curvature ODE (when a constant curvature is claimed), and arc length;
/// clairaut_drift is informational — it vanishes only for geodesics.
inline VerificationReport verify_trace(const InvariantSurface& surf,
                                       const LoxodromeTrace& tr,
                                       const ToleranceMap& tols = default_tolerances()) {
  if (tr.samples.empty()) throw BadParams("verify_trace needs a nonempty trace");
  const TraceDiagnostics d = trace_diagnostics(surf, tr);

  VerificationReport rep;
  rep.surface_id = tr.surface_id;
  rep.spec = tr.spec;
  auto max_of = [](const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, x);
    return m;
  };
  rep.max_angle_dev = max_of(d.angle_dev);
  rep.max_unit_speed_dev = max_of(d.speed_dev);
  rep.max_coeff_identity_dev = max_of(d.coeff_identity_dev);
  rep.max_analytic_numeric_dev = max_of(d.analytic_numeric_dev);
  const auto [clo, chi] =
      std::minmax_element(d.clairaut.begin(), d.clairaut.end());
  rep.clairaut_drift = *chi - *clo;

  const double law_length = arc_length(tr);
  rep.arc_length_rel_err =
      std::abs(d.numeric_length - law_length) / law_length;

  if (surf.const_K)
    rep.curvature_ode_residual = verify_detail::curvature_ode_residual_of(
        surf, *surf.const_K, tr.samples);

  using verify_detail::tol_of;
  rep.pass = rep.max_angle_dev <= tol_of(tols, "angle") &&
             rep.max_unit_speed_dev <= tol_of(tols, "unit_speed") &&
             rep.max_coeff_identity_dev <= tol_of(tols, "coeff_identity") &&
             rep.max_analytic_numeric_dev <= tol_of(tols, "analytic_numeric") &&
             rep.arc_length_rel_err <= tol_of(tols, "arc_length") &&
             (!rep.curvature_ode_residual ||
              *rep.curvature_ode_residual <= tol_of(tols, "curvature_ode"));
  return rep;
}

/// Corruption harness: rebuilds the trace with every v scaled by 1.1 (points
/// recomputed through psi) so a healthy verifier must flag it.
inline LoxodromeTrace corrupt_trace(const InvariantSurface& surf,
                                    LoxodromeTrace tr, double factor = 1.1) {
  for (TraceSample& smp : tr.samples) {
    smp.v *= factor;
    smp.p = surf.psi(smp.u, smp.v);
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Flatness theorem
// ---------------------------------------------------------------------------

struct FlatnessCheck {
  bool is_geodesic = false;
  double max_abs_K = 0.0;
  double residual = 0.0;
};

/// Traces one loxodrome across the surface's window and tests whether it is
/// a geodesic (conserved-momentum residual <= 1e-8). For an oblique constant
/// angle this can happen only on flat surfaces, so callers cross-check
/// max_abs_K; BCV vertical cylinders are the model case (geodesic, K = 0).
inline FlatnessCheck verify_flatness_theorem(const InvariantSurface& surf,
                                             double theta0) {
  lox_detail::require_angle(theta0);
  if (std::abs(theta0 - 1.57079632679489661923) < 1e-12)
    throw BadParams("flatness check needs an oblique angle (theta0 != pi/2)");
  LoxodromeSpec spec;
  spec.theta0 = theta0;
  spec.branch = Branch::plus;
  spec.u0 = surf.trace_window.lo;
  spec.v0 = 0.0;
  spec.grid = 801;
  const LoxodromeTrace tr = trace(surf, spec, surf.trace_window.hi, 0.0);

  FlatnessCheck chk;
  chk.residual = geodesic_residual(surf, tr);
  chk.is_geodesic = chk.residual <= 1e-8;
  for (const TraceSample& smp : tr.samples)
    chk.max_abs_K = std::max(chk.max_abs_K, std::abs(gauss_curvature(surf, smp.u)));
  return chk;
}

}  // namespace lox

#endif  // LOXOFORGE_VERIFY_HPP
