/// @file test_profile.cpp
/// @brief Profile curves: quotient metrics, the arc-length constraint
///        quadrature, memoized cumulative integration, and monotone cubic
///        interpolation of sampled profiles.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <vector>

#include "loxoforge/profile.hpp"
#include "oracle_values.hpp"

using lox::AmbientSpace;
using lox::BadParams;
using lox::CumulativeQuadrature;
using lox::Interval;
using lox::PchipInterpolant;
using lox::ProfileCurve;
using lox::SpeedDeficitNegative;

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

// ============================================================================
// quotient metrics
// ============================================================================

TEST_CASE("quotient metric spot values", "[profile]") {
  // Helicoidal pitch 1 at radius 1: g22 = xi1^2 / (a^2 + xi1^2) = 1/2.
  const auto [h11, h22] =
      lox::quotient_metric(AmbientSpace::euclidean_helicoidal(1.0), 1.0, 0.0);
  REQUIRE(h11 == Catch::Approx(1.0));
  REQUIRE(h22 == Catch::Approx(0.5));

  // Pure rotation: unit-speed planar constraint, g22 -> 1.
  const auto [r11, r22] =
      lox::quotient_metric(AmbientSpace::euclidean_helicoidal(0.0), 0.7, 0.0);
  REQUIRE(r11 == Catch::Approx(1.0));
  REQUIRE(r22 == Catch::Approx(1.0));

  // BCV l=2, m=0 at radius 1: g22 = 4/(4 + l^2 xi1^2) = 1/2.
  const auto [b11, b22] =
      lox::quotient_metric(AmbientSpace::bcv_rotation(2.0, 0.0), 1.0, 0.0);
  REQUIRE(b11 == Catch::Approx(1.0));
  REQUIRE(b22 == Catch::Approx(0.5));
}

TEST_CASE("free coordinate selection per family", "[profile]") {
  REQUIRE(lox::constraint_free_is_xi2(AmbientSpace::h2xr_parabolic_screw(1.0, 0.0)));
  REQUIRE(lox::constraint_free_is_xi2(AmbientSpace::h2xr_vertical()));
  REQUIRE_FALSE(lox::constraint_free_is_xi2(AmbientSpace::euclidean_helicoidal(1.0)));
  REQUIRE_FALSE(lox::constraint_free_is_xi2(AmbientSpace::h2xr_hyperbolic_screw(1.0)));
  REQUIRE_FALSE(lox::constraint_free_is_xi2(AmbientSpace::heis_screw(1.0)));
}

// ============================================================================
// arc-length constraint profiles
// ============================================================================

TEST_CASE("rotational profile from sin recovers the circle", "[profile]") {
  // Planar constraint xi1'^2 + xi2'^2 = 1 with xi1 = sin u: choosing the
  // minus branch anchored at (u, xi2) = (pi/2, 0) gives xi2 = cos u.
  const AmbientSpace s = AmbientSpace::euclidean_helicoidal(0.0);
  const ProfileCurve c = lox::profile_from_constraint(
      s, lox::parse("sin(u)"),
      {{"u_ref", kPi / 2.0}, {"xi2_0", 0.0}, {"sign", -1.0}},
      Interval{0.2, kPi - 0.2});

  for (double u : {0.3, 0.8, 1.2, kPi / 2.0, 2.1, 2.8})
    REQUIRE(c.xi2(u) == Catch::Approx(std::cos(u)).margin(1e-9));
  REQUIRE(c.xi1_prime(1.0) == Catch::Approx(std::cos(1.0)).margin(1e-9));
  REQUIRE(c.provenance == lox::Provenance::ode_integrated);
}

TEST_CASE("constraint profiles are unit speed in the quotient metric", "[profile]") {
  struct Case {
    AmbientSpace space;
    const char* free_expr;
    Interval dom;
  };
  const std::vector<Case> cases = {
      {AmbientSpace::euclidean_helicoidal(0.0), "sin(u)", {0.3, 2.8}},
      {AmbientSpace::euclidean_helicoidal(1.0), "sin(u)", {0.3, 2.8}},
      {AmbientSpace::bcv_rotation(2.0, 0.0), "0.5+0.3*tanh(u)", {-1.5, 1.5}},
      {AmbientSpace::heis_screw(0.5), "2+0.5*sin(u)", {-2.0, 2.0}},
      {AmbientSpace::h2xr_hyperbolic_screw(1.0), "1+0.4*sin(u)", {-1.0, 1.0}},
  };
  for (const Case& k : cases) {
    const ProfileCurve c = lox::profile_from_constraint(
        k.space, lox::parse(k.free_expr), {}, k.dom);
    for (int i = 0; i <= 16; ++i) {
      const double u = k.dom.lo + (k.dom.hi - k.dom.lo) * (i + 0.5) / 17.0;
      REQUIRE(lox::quotient_speed(k.space, c, u) == Catch::Approx(1.0).margin(1e-8));
    }
  }
}

TEST_CASE("free coordinate is xi2 for the horocyclic screw family", "[profile]") {
  // Parabolic screw a=1, b=0: quotient metric dx1^2 + dx2^2/x2^2. Prescribing
  // xi2 = e^(u/2) leaves constant deficit 3/4, so xi1 is linear with slope
  // sqrt(3)/2.
  const AmbientSpace s = AmbientSpace::h2xr_parabolic_screw(1.0, 0.0);
  const ProfileCurve c = lox::profile_from_constraint(
      s, lox::parse("e^(u/2)"), {{"xi2_0", 2.0}}, Interval{-1.0, 1.0});

  REQUIRE(c.xi2(0.4) == Catch::Approx(std::exp(0.2)).margin(1e-12));
  REQUIRE(c.xi1(0.0) == Catch::Approx(2.0));  // anchor feeds the dependent xi1
  const double slope = std::sqrt(3.0) / 2.0;
  for (double u : {-0.8, -0.3, 0.2, 0.9})
    REQUIRE(c.xi1(u) == Catch::Approx(2.0 + slope * u).margin(1e-8));
  for (double u : {-0.5, 0.0, 0.6})
    REQUIRE(lox::quotient_speed(s, c, u) == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("helicoidal sin profile integrates the elliptic arc length", "[profile]") {
  // Pitch 1, xi1 = sin u: the dependent coordinate is the incomplete elliptic
  // integral of the second kind with parameter -1. The quotient metric is
  // degenerate on the axis u = 0, so anchor at an interior reference value.
  const AmbientSpace s = AmbientSpace::euclidean_helicoidal(1.0);
  const double u_ref = oracle::kTwistedSphereXi2[9][0];   // 10 pi / 21
  const double xi2_0 = oracle::kTwistedSphereXi2[9][1];
  const ProfileCurve c = lox::profile_from_constraint(
      s, lox::parse("sin(u)"), {{"u_ref", u_ref}, {"xi2_0", xi2_0}},
      Interval{0.0, kPi});
  REQUIRE(c.xi2(u_ref) == Catch::Approx(xi2_0).margin(1e-12));
  for (const auto& [u, expected] : oracle::kTwistedSphereXi2)
    REQUIRE(c.xi2(u) == Catch::Approx(expected).margin(1e-9));
}

TEST_CASE("boundary-riding profile pins the dependent coordinate", "[profile]") {
  // xi1 = u on the pitch-1 helicoidal family spends the whole unit-speed
  // budget on the free coordinate, so the speed deficit is exactly zero.
  // The differenced xi1' carries ~1e-10 of roundoff; the solver must treat
  // that jitter as zero rather than raising SpeedDeficitNegative or feeding
  // noise to the quadrature, leaving xi2 constant at its anchor value.
  const AmbientSpace s = AmbientSpace::euclidean_helicoidal(1.0);
  const ProfileCurve c = lox::profile_from_constraint(
      s, lox::parse("u"), {{"u_ref", 1.0}, {"xi2_0", 0.25}},
      Interval{0.5, 2.5});
  for (double u : {0.6, 0.7, 1.0, 1.7, 2.4}) {
    REQUIRE(c.xi2_prime(u) == 0.0);
    REQUIRE(c.xi2(u) == 0.25);
  }
}

TEST_CASE("over-speed free coordinate raises SpeedDeficitNegative", "[profile]") {
  const AmbientSpace s = AmbientSpace::euclidean_helicoidal(0.0);
  const ProfileCurve c = lox::profile_from_constraint(
      s, lox::parse("2*u"), {{"u_ref", 0.5}}, Interval{0.3, 1.0});
  REQUIRE_THROWS_AS(c.xi2_prime(0.6), SpeedDeficitNegative);
  REQUIRE_THROWS_AS(c.xi2(0.9), SpeedDeficitNegative);
}

TEST_CASE("constraint parameter validation", "[profile]") {
  const AmbientSpace s = AmbientSpace::euclidean_helicoidal(0.0);
  const lox::ProfileExpr f = lox::parse("sin(u)");
  const Interval dom{0.3, 1.0};
  REQUIRE_THROWS_AS(lox::profile_from_constraint(s, f, {{"bogus", 1.0}}, dom),
                    BadParams);
  REQUIRE_THROWS_AS(lox::profile_from_constraint(s, f, {{"sign", 0.5}}, dom),
                    BadParams);
  REQUIRE_THROWS_AS(lox::profile_from_constraint(s, f, {{"u_ref", 2.0}}, dom),
                    BadParams);
  REQUIRE_THROWS_AS(lox::profile_from_constraint(s, f, {}, Interval{1.0, 1.0}),
                    BadParams);
}

// ============================================================================
// memoized cumulative quadrature
// ============================================================================

TEST_CASE("cumulative quadrature matches the antiderivative in any probe order",
          "[profile]") {
  const CumulativeQuadrature F([](double u) { return std::cos(u); }, 0.0, 0.0);
  // Mixed forward/backward probes exercise the nearest-anchor logic.
  for (double u : {1.0, 0.25, 2.5, -1.5, 0.8, -0.2, 2.5, 1.0})
    REQUIRE(F(u) == Catch::Approx(std::sin(u)).margin(1e-9));
  // Repeat probes hit the cache and must return the identical value.
  const double first = F(1.7);
  REQUIRE(F(1.7) == first);
}

TEST_CASE("cumulative quadrature honors a nonzero anchor value", "[profile]") {
  const CumulativeQuadrature F([](double u) { return 2.0 * u; }, 1.0, 5.0);
  REQUIRE(F(1.0) == Catch::Approx(5.0));
  REQUIRE(F(3.0) == Catch::Approx(5.0 + 9.0 - 1.0).margin(1e-10));
  REQUIRE(F(0.0) == Catch::Approx(5.0 - 1.0).margin(1e-10));
}

// ============================================================================
// monotone cubic interpolation
// ============================================================================

TEST_CASE("pchip reproduces nodes and preserves monotonicity", "[profile]") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 10; ++i) {
    xs.push_back(-2.0 + 0.4 * i);
    ys.push_back(std::tanh(xs.back()));
  }
  const PchipInterpolant p = PchipInterpolant::build(xs, ys);

  for (std::size_t i = 0; i < xs.size(); ++i)
    REQUIRE(p.eval(xs[i]) == Catch::Approx(ys[i]).margin(1e-14));

  double prev = p.eval(xs.front());
  for (int i = 1; i <= 400; ++i) {
    const double t = -2.0 + 4.0 * i / 400.0;
    const double v = p.eval(t);
    REQUIRE(v >= prev - 1e-12);  // monotone data -> monotone interpolant
    prev = v;
  }

  // Derivative consistency with a finite difference of eval.
  for (double t : {-1.3, -0.1, 0.77, 1.9}) {
    const double fd = (p.eval(t + 1e-6) - p.eval(t - 1e-6)) / 2e-6;
    REQUIRE(p.deriv(t) == Catch::Approx(fd).margin(1e-7));
  }
}

TEST_CASE("pchip input validation", "[profile]") {
  REQUIRE_THROWS_AS(PchipInterpolant::build({0.0}, {1.0}), BadParams);
  REQUIRE_THROWS_AS(PchipInterpolant::build({0.0, 1.0}, {1.0}), BadParams);
  REQUIRE_THROWS_AS(PchipInterpolant::build({0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}),
                    BadParams);
  REQUIRE_THROWS_AS(PchipInterpolant::build({0.0, 1.0, 0.5}, {1.0, 2.0, 3.0}),
                    BadParams);
}

TEST_CASE("sampled profiles interpolate their grid", "[profile]") {
  std::vector<double> u, x1, x2;
  for (int i = 0; i <= 8; ++i) {
    u.push_back(0.25 * i);
    x1.push_back(1.0 + 0.5 * std::sin(u.back()));
    x2.push_back(u.back() * u.back());
  }
  const ProfileCurve c = lox::profile_from_samples(u, x1, x2);
  REQUIRE(c.provenance == lox::Provenance::sampled);
  REQUIRE(c.u_domain.lo == Catch::Approx(0.0));
  REQUIRE(c.u_domain.hi == Catch::Approx(2.0));
  for (std::size_t i = 0; i < u.size(); ++i) {
    REQUIRE(c.xi1(u[i]) == Catch::Approx(x1[i]).margin(1e-14));
    REQUIRE(c.xi2(u[i]) == Catch::Approx(x2[i]).margin(1e-14));
  }
  // Quadratic xi2 is reproduced to interpolation accuracy between nodes.
  REQUIRE(c.xi2(1.1) == Catch::Approx(1.21).margin(5e-3));
  REQUIRE_THROWS_AS(lox::profile_from_samples({0.0, 1.0}, {0.0, 1.0}, {0.0}),
                    BadParams);
}

TEST_CASE("interval containment is open", "[profile]") {
  const Interval iv{0.0, 1.0};
  REQUIRE(iv.contains(0.5));
  REQUIRE_FALSE(iv.contains(0.0));
  REQUIRE_FALSE(iv.contains(1.0));
  REQUIRE(iv.length() == Catch::Approx(1.0));
}
