/// @file test_verify.cpp
/// @brief Ambient-metric verification: pass/fail reports, corruption
///        sensitivity, closure independence, refinement behavior, tolerance
///        overrides, and the flatness theorem check.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "loxoforge/lox.hpp"
#include "loxoforge/surface.hpp"
#include "loxoforge/verify.hpp"

using lox::BadParams;
using lox::Branch;
using lox::ConfigError;
using lox::FlatnessCheck;
using lox::InvariantSurface;
using lox::LoxodromeSpec;
using lox::LoxodromeTrace;
using lox::ToleranceMap;
using lox::VerificationReport;

namespace {

constexpr double kPi = 3.14159265358979323846;

LoxodromeTrace trace_for(const InvariantSurface& surf, double theta0,
                         Branch br, int grid = 1001) {
  LoxodromeSpec spec;
  spec.theta0 = theta0;
  spec.branch = br;
  spec.u0 = surf.trace_window.lo;
  spec.v0 = 0.0;
  spec.grid = grid;
  return lox::trace(surf, spec, surf.trace_window.hi);
}

}  // namespace

// ============================================================================
// reports
// ============================================================================

TEST_CASE("sphere trace passes full verification", "[verify]") {
  const InvariantSurface sphere = lox::build_catalog_surface("sphere");
  const LoxodromeTrace tr = trace_for(sphere, kPi / 4.0, Branch::plus);
  const VerificationReport rep = lox::verify_trace(sphere, tr);

  REQUIRE(rep.pass);
  REQUIRE(rep.surface_id == "sphere");
  REQUIRE(rep.max_angle_dev <= 1e-6);
  REQUIRE(rep.max_unit_speed_dev <= 1e-6);
  REQUIRE(rep.max_coeff_identity_dev <= 1e-8);
  REQUIRE(rep.max_analytic_numeric_dev <= 1e-6);
  REQUIRE(rep.arc_length_rel_err <= 1e-6);
  REQUIRE(rep.curvature_ode_residual.has_value());
  REQUIRE(*rep.curvature_ode_residual <= 1e-6);
  // An oblique spherical loxodrome is no geodesic: the drift is order one.
  REQUIRE(rep.clairaut_drift > 0.1);
}

TEST_CASE("minus branch verifies against pi - theta0", "[verify]") {
  const InvariantSurface sphere = lox::build_catalog_surface("sphere");
  const LoxodromeTrace tr = trace_for(sphere, kPi / 3.0, Branch::minus);
  const lox::TraceDiagnostics d = lox::trace_diagnostics(sphere, tr);
  for (double a : d.angle)
    REQUIRE(a == Catch::Approx(kPi - kPi / 3.0).margin(1e-5));
  REQUIRE(lox::verify_trace(sphere, tr).pass);
}

TEST_CASE("non-constant-curvature surfaces skip the ODE gate", "[verify]") {
  const InvariantSurface funnel = lox::build_catalog_surface("funnel");
  const LoxodromeTrace tr = trace_for(funnel, kPi / 4.0, Branch::plus);
  const VerificationReport rep = lox::verify_trace(funnel, tr);
  REQUIRE(rep.pass);
  REQUIRE_FALSE(rep.curvature_ode_residual.has_value());
  REQUIRE(rep.arc_length_rel_err <= 1e-6);
}

TEST_CASE("meridian clairaut drift vanishes exactly", "[verify]") {
  const InvariantSurface sphere = lox::build_catalog_surface("sphere");
  const LoxodromeTrace tr = trace_for(sphere, kPi / 2.0, Branch::plus, 401);
  const VerificationReport rep = lox::verify_trace(sphere, tr);
  REQUIRE(rep.clairaut_drift == 0.0);  // cos(pi/2) snapped to exact zero
  REQUIRE(rep.pass);
}

TEST_CASE("verification rejects degenerate traces", "[verify]") {
  const InvariantSurface sphere = lox::build_catalog_surface("sphere");
  LoxodromeTrace empty;
  REQUIRE_THROWS_AS(lox::verify_trace(sphere, empty), BadParams);
  LoxodromeTrace single;
  single.samples.resize(1);
  REQUIRE_THROWS_AS(lox::verify_trace(sphere, single), BadParams);
}

// ============================================================================
// corruption sensitivity
// ============================================================================

TEST_CASE("corrupted traces are flagged by the angle gate", "[verify]") {
  const InvariantSurface sphere = lox::build_catalog_surface("sphere");
  const LoxodromeTrace tr = trace_for(sphere, kPi / 4.0, Branch::plus);
  const LoxodromeTrace bad = lox::corrupt_trace(sphere, tr);

  // Points are rebuilt through the chart from the scaled v.
  const auto& smp = bad.samples[bad.samples.size() / 2];
  const lox::Vec3 expect = sphere.psi(smp.u, smp.v);
  REQUIRE(smp.v == Catch::Approx(1.1 * tr.samples[tr.samples.size() / 2].v));
  REQUIRE(lox::norm(smp.p - expect) == 0.0);

  const VerificationReport rep = lox::verify_trace(sphere, bad);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.max_angle_dev > 1e-2);
}

TEST_CASE("corruption is caught across surface families", "[verify]") {
  for (const char* id : {"helicoid", "funnel", "heisenberg_sheet"}) {
    const InvariantSurface surf = lox::build_catalog_surface(id);
    const LoxodromeTrace tr = trace_for(surf, kPi / 6.0, Branch::plus, 601);
    REQUIRE(lox::verify_trace(surf, tr).pass);
    const VerificationReport rep =
        lox::verify_trace(surf, lox::corrupt_trace(surf, tr));
    REQUIRE_FALSE(rep.pass);
    REQUIRE(rep.max_angle_dev > 1e-2);
  }
}

// ============================================================================
// independence from the analytic closures
// ============================================================================

TEST_CASE("verdict is independent of the coefficient closures", "[verify]") {
  const InvariantSurface sphere = lox::build_catalog_surface("sphere");
  const LoxodromeTrace tr = trace_for(sphere, kPi / 4.0, Branch::plus);
  const VerificationReport base = lox::verify_trace(sphere, tr);

  // Swap every analytic closure for its metric-derived counterpart; only the
  // analytic-vs-numeric cross-check may notice.
  const InvariantSurface pristine = sphere;
  InvariantSurface alt = sphere;
  alt.E = [pristine](double u) { return lox::numeric_coeffs(pristine, u).E; };
  alt.F = [pristine](double u) { return lox::numeric_coeffs(pristine, u).F; };
  alt.omega = [pristine](double u) { return lox::omega_of(pristine, u); };
  const VerificationReport swapped = lox::verify_trace(alt, tr);

  REQUIRE(swapped.pass);
  REQUIRE(swapped.max_angle_dev ==
          Catch::Approx(base.max_angle_dev).margin(1e-9));
  REQUIRE(swapped.max_unit_speed_dev ==
          Catch::Approx(base.max_unit_speed_dev).margin(1e-9));
  REQUIRE(swapped.max_coeff_identity_dev ==
          Catch::Approx(base.max_coeff_identity_dev).margin(1e-9));
  REQUIRE(swapped.arc_length_rel_err ==
          Catch::Approx(base.arc_length_rel_err).margin(1e-9));
  REQUIRE(swapped.clairaut_drift ==
          Catch::Approx(base.clairaut_drift).margin(1e-9));
  REQUIRE(*swapped.curvature_ode_residual ==
          Catch::Approx(*base.curvature_ode_residual).margin(1e-9));
}

// ============================================================================
// refinement
// ============================================================================

TEST_CASE("refining the grid never worsens the angle deviation", "[verify]") {
  const InvariantSurface sphere = lox::build_catalog_surface("sphere");
  const double coarse =
      lox::verify_trace(sphere, trace_for(sphere, kPi / 4.0, Branch::plus, 501))
          .max_angle_dev;
  const double fine =
      lox::verify_trace(sphere, trace_for(sphere, kPi / 4.0, Branch::plus, 1001))
          .max_angle_dev;
  REQUIRE(fine <= std::max(coarse * 1.01, 1e-10));
}

// ============================================================================
// tolerance overrides
// ============================================================================

TEST_CASE("environment overrides for tolerances", "[verify]") {
  REQUIRE(lox::default_tolerances().at("angle") == 1e-6);
  REQUIRE(lox::default_tolerances().at("coeff_identity") == 1e-8);

  ::setenv("LOXOFORGE_TOL_ANGLE", "1e-3", 1);
  const ToleranceMap tols = lox::tolerances_with_env();
  ::unsetenv("LOXOFORGE_TOL_ANGLE");
  REQUIRE(tols.at("angle") == 1e-3);
  REQUIRE(tols.at("unit_speed") == 1e-6);  // untouched keys keep defaults

  ::setenv("LOXOFORGE_TOL_ANGLE", "garbage", 1);
  REQUIRE_THROWS_AS(lox::tolerances_with_env(), ConfigError);
  ::setenv("LOXOFORGE_TOL_ANGLE", "-1e-6", 1);
  REQUIRE_THROWS_AS(lox::tolerances_with_env(), ConfigError);
  ::setenv("LOXOFORGE_TOL_ANGLE", "1e-3junk", 1);
  REQUIRE_THROWS_AS(lox::tolerances_with_env(), ConfigError);
  ::unsetenv("LOXOFORGE_TOL_ANGLE");
}

TEST_CASE("loosened tolerances can accept a marginal trace", "[verify]") {
  const InvariantSurface sphere = lox::build_catalog_surface("sphere");
  // A deliberately coarse grid: quadrature is fine but the differenced v'
  // is less accurate, so tighten the angle gate until it trips.
  LoxodromeSpec spec;
  spec.theta0 = kPi / 4.0;
  spec.u0 = 1.0;
  spec.grid = 51;
  const LoxodromeTrace tr = lox::trace(sphere, spec, 2.0);
  ToleranceMap strict = lox::default_tolerances();
  strict["angle"] = 1e-14;
  REQUIRE_FALSE(lox::verify_trace(sphere, tr, strict).pass);
  ToleranceMap loose = lox::default_tolerances();
  loose["angle"] = 1e-1;
  loose["unit_speed"] = 1e-1;
  loose["arc_length"] = 1e-1;
  REQUIRE(lox::verify_trace(sphere, tr, loose).pass);
}

// ============================================================================
// flatness theorem
// ============================================================================

TEST_CASE("oblique geodesic loxodromes certify flatness", "[verify]") {
  const InvariantSurface cyl = lox::build_catalog_surface("rotational_cylinder");
  const FlatnessCheck straight = lox::verify_flatness_theorem(cyl, kPi / 4.0);
  REQUIRE(straight.is_geodesic);
  REQUIRE(straight.max_abs_K <= 1e-6);

  const InvariantSurface bcv = lox::build_catalog_surface("bcv_cylinder");
  const FlatnessCheck twisted = lox::verify_flatness_theorem(bcv, kPi / 3.0);
  REQUIRE(twisted.is_geodesic);
  REQUIRE(twisted.max_abs_K <= 1e-5);

  const InvariantSurface sphere = lox::build_catalog_surface("sphere");
  const FlatnessCheck curved = lox::verify_flatness_theorem(sphere, kPi / 4.0);
  REQUIRE_FALSE(curved.is_geodesic);
  REQUIRE(curved.max_abs_K == Catch::Approx(1.0).margin(1e-6));

  // The converse fails: the cone is flat yet its oblique loxodromes are not
  // geodesics (omega varies along them).
  const InvariantSurface cone = lox::build_catalog_surface("cone");
  const FlatnessCheck flat_spiral = lox::verify_flatness_theorem(cone, kPi / 4.0);
  REQUIRE_FALSE(flat_spiral.is_geodesic);
  REQUIRE(flat_spiral.max_abs_K <= 1e-6);

  REQUIRE_THROWS_AS(lox::verify_flatness_theorem(cyl, kPi / 2.0), BadParams);
  REQUIRE_THROWS_AS(lox::verify_flatness_theorem(cyl, 0.0), BadParams);
}
