/// @file test_quadrature.cpp
/// @brief Adaptive Simpson quadrature: accuracy, orientation, cumulative
///        checkpointing, and the non-convergence guard.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "loxoforge/quadrature.hpp"

using lox::adaptive_simpson;
using lox::cumulative_integral;

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

// ============================================================================
// adaptive_simpson
// ============================================================================

TEST_CASE("integral of sin over one arch is 2", "[quadrature]") {
  const double got = adaptive_simpson([](double u) { return std::sin(u); }, 0.0, kPi);
  REQUIRE(got == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("swapping the endpoints negates the integral", "[quadrature]") {
  auto f = [](double u) { return std::exp(-u) * std::cos(3.0 * u); };
  const double fwd = adaptive_simpson(f, 0.25, 2.0);
  const double bwd = adaptive_simpson(f, 2.0, 0.25);
  REQUIRE(bwd == Catch::Approx(-fwd).margin(1e-14));
}

TEST_CASE("degenerate interval integrates to exactly zero", "[quadrature]") {
  const double got = adaptive_simpson([](double u) { return 1.0 / u; }, 0.7, 0.7);
  REQUIRE(got == 0.0);
}

TEST_CASE("low-degree polynomials are integrated to machine accuracy", "[quadrature]") {
  // Simpson is exact on cubics; the adaptive wrapper must not spoil that.
  auto f = [](double u) { return ((2.0 * u - 3.0) * u + 5.0) * u - 1.0; };
  auto antiderivative = [](double u) {
    return ((0.5 * u - 1.0) * u + 2.5) * u * u - u;
  };
  const double got = adaptive_simpson(f, -1.0, 2.5);
  REQUIRE(got == Catch::Approx(antiderivative(2.5) - antiderivative(-1.0)).margin(1e-13));
}

TEST_CASE("oscillatory integrand meets the requested absolute tolerance", "[quadrature]") {
  // \int_0^1 sin(40 u) du = (1 - cos 40)/40.
  auto f = [](double u) { return std::sin(40.0 * u); };
  const double expected = (1.0 - std::cos(40.0)) / 40.0;
  const double got = adaptive_simpson(f, 0.0, 1.0, 1e-10);
  REQUIRE(got == Catch::Approx(expected).margin(1e-10));
}

TEST_CASE("non-integrable singularity exhausts the depth budget", "[quadrature]") {
  // 1/(u - 1/2)^2 diverges inside the interval; refinement can never settle.
  auto f = [](double u) {
    const double d = u - 0.5;
    return 1.0 / (d * d);
  };
  REQUIRE_THROWS_AS(adaptive_simpson(f, 0.0, 1.0, 1e-10, 24), lox::QuadratureNonConvergent);
}

// ============================================================================
// cumulative_integral
// ============================================================================

TEST_CASE("cumulative integral matches the antiderivative at every node", "[quadrature]") {
  std::vector<double> nodes;
  for (int i = 0; i <= 64; ++i) nodes.push_back(0.1 + (2.9 - 0.1) * i / 64.0);
  const std::vector<double> acc =
      cumulative_integral([](double u) { return std::cos(u) / u; }, nodes);

  REQUIRE(acc.size() == nodes.size());
  REQUIRE(acc.front() == 0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double direct = adaptive_simpson([](double u) { return std::cos(u) / u; },
                                           nodes.front(), nodes[i]);
    REQUIRE(acc[i] == Catch::Approx(direct).margin(1e-9));
  }
}

TEST_CASE("cumulative integral respects node orientation", "[quadrature]") {
  // Decreasing nodes accumulate negative area of a positive integrand.
  std::vector<double> nodes = {2.0, 1.5, 1.0, 0.5};
  const std::vector<double> acc =
      cumulative_integral([](double u) { return u * u; }, nodes);
  auto cube = [](double u) { return u * u * u / 3.0; };
  for (std::size_t i = 0; i < nodes.size(); ++i)
    REQUIRE(acc[i] == Catch::Approx(cube(nodes[i]) - cube(nodes[0])).margin(1e-12));
  REQUIRE(acc.back() < 0.0);
}

TEST_CASE("cumulative integral of an empty or single node sequence is trivial", "[quadrature]") {
  auto f = [](double u) { return u; };
  REQUIRE(cumulative_integral(f, {}).empty());
  const std::vector<double> one = cumulative_integral(f, {3.0});
  REQUIRE(one.size() == 1);
  REQUIRE(one[0] == 0.0);
}
