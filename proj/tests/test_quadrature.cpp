#include <doctest.h>

#include <cmath>
#include <numbers>

#include "freewave/errors.hpp"
#include "freewave/quadrature.hpp"

using freewave::quadrature::integrate;

TEST_SUITE("quadrature") {

TEST_CASE("polynomial and gaussian integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0).value == doctest::Approx(9.0));
  const auto g = integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0);
  CHECK(std::abs(g.value - std::sqrt(std::numbers::pi)) < 1e-13);
}

TEST_CASE("empty interval is exactly zero") {
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("reversed limits change sign") {
  const auto f = [](double x) { return std::sin(x); };
  CHECK(integrate(f, 1.0, 0.0).value == doctest::Approx(-integrate(f, 0.0, 1.0).value));
}

TEST_CASE("non-convergence raises QuadratureError") {
  // Wildly oscillating integrand with a tiny interval budget.
  const auto f = [](double x) { return std::sin(1e6 * x * x); };
  CHECK_THROWS_AS(integrate(f, 0.0, 10.0, 1e-14, 4), freewave::QuadratureError);
}

}
