#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "freewave/analysis.hpp"
#include "freewave/errors.hpp"

using namespace freewave;
namespace an = freewave::analysis;
using std::numbers::pi;

namespace {

an::Evaluator1D lifted(const OscillatorParams& p, int n) {
  return [p, n](double y, double tau) {
    return niederer::lifted_eigenstate_1d(p, QuantumNumbers1D(n), y, FreeTime{tau});
  };
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("convergence order examples") {
  CHECK(an::convergence_order({{0.1, 1e-2}, {0.05, 2.5e-3}}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(an::convergence_order({{0.1, 1e-3}, {0.05, 5e-4}}) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<std::pair<double, double>> synthetic;
  for (double h : {0.2, 0.1, 0.05}) synthetic.emplace_back(h, 3.7 * h * h);
  CHECK(std::abs(an::convergence_order(synthetic) - 2.0) < 1e-12);
}

TEST_CASE("convergence order preconditions") {
  CHECK_THROWS_AS(an::convergence_order({{0.1, 1e-2}}), PreconditionError);
  CHECK_THROWS_AS(an::convergence_order({{0.1, 1e-2}, {0.05, 0.0}}), PreconditionError);
  CHECK_THROWS_AS(an::convergence_order({{0.05, 1e-2}, {0.1, 1e-3}}), PreconditionError);
}

TEST_CASE("lifted n=2 residual ratio per halving") {
  const OscillatorParams p(1, 1);
  const auto chi = lifted(p, 2);
  Grid1D g = an::auto_grid_1d(p, 2, 0.5, 3);
  g = Grid1D(g.y_min(), g.y_max(), 4001);
  const double r1 = an::free_residual_1d(chi, g, 0.5, 1.0, g.spacing()).linf;
  const auto fine = g.refined();
  const double r2 = an::free_residual_1d(chi, fine, 0.5, 1.0, fine.spacing()).linf;
  CHECK(r1 / r2 >= 3.6);
  CHECK(r1 / r2 <= 4.4);
  CHECK_THROWS_AS(an::free_residual_1d(chi, g, 0.5, 1.0, 0.0), PreconditionError);
}

TEST_CASE("zero function has zero residual") {
  const Grid1D g(-1, 1, 101);
  const an::Evaluator1D zero = [](double, double) { return cplx(0); };
  CHECK(an::free_residual_1d(zero, g, 0.3, 1.0, 0.01).linf == 0.0);
  const an::Evaluator2D zero2 = [](double, double, double) { return cplx(0); };
  CHECK(an::free_residual_2d(zero2, Grid2D{g, g}, 0.3, 1.0, 0.01).l2 == 0.0);
}

TEST_CASE("residual studies reach second order") {
  const OscillatorParams p(1, 1);
  const auto fr = an::free_residual_study(p, 2, 0.5);
  CHECK(fr.spacings.size() == 4);
  CHECK(fr.fitted_order == doctest::Approx(2.0).epsilon(0.1));
  const auto osc = an::oscillator_residual_study(p, 1, 0.3);
  CHECK(osc.fitted_order == doctest::Approx(2.0).epsilon(0.1));
  CHECK(osc.linf_residuals.back() < 1e-6);
}

TEST_CASE("2D l=0 residual matches a tensor-product check") {
  // The lifted (0,0) state is a product of two lifted 1D ground states.
  const OscillatorParams p(1, 1);
  const double tau = 0.8;
  const QuantumNumbers2D qn(0, 0);
  const an::Evaluator2D chi2 = [&](double a, double b, double t) {
    const double y[2] = {a, b};
    return niederer::lifted_eigenstate_2d(p, qn, y, FreeTime{t});
  };
  const auto g1 = lifted(p, 0);
  for (double a : {-1.0, 0.3})
    for (double b : {0.0, 1.7})
      CHECK(std::abs(chi2(a, b, tau) - g1(a, tau) * g1(b, tau)) < 1e-15);
  const Grid1D axis(-8, 8, 161);
  const an::Evaluator2D product = [&](double a, double b, double t) { return g1(a, t) * g1(b, t); };
  const auto r_closed = an::free_residual_2d(chi2, Grid2D{axis, axis}, tau, 1.0, axis.spacing());
  const auto r_product = an::free_residual_2d(product, Grid2D{axis, axis}, tau, 1.0, axis.spacing());
  CHECK(r_closed.linf == doctest::Approx(r_product.linf).epsilon(1e-9));
}

TEST_CASE("norms") {
  const OscillatorParams p(1, 1);
  const auto chi = lifted(p, 0);
  const Grid1D g(-12, 12, 2001);
  CHECK(std::abs(an::norm_1d(an::sample_field(chi, g, 0)) - 1.0) < 1e-10);
  const double s = std::sqrt(10.0);
  const Grid1D wide(-12 * s, 12 * s, 2001);
  CHECK(std::abs(an::norm_1d(an::sample_field(chi, wide, 3)) - 1.0) < 1e-8);
  CHECK(an::norm_1d({g, std::vector<cplx>(g.count()), 0.0}) == 0.0);
}

TEST_CASE("simpson weights integrate cubics exactly for odd and even interval counts") {
  for (int count : {11, 12}) {
    const Grid1D g(-1, 2, count);
    const auto w = an::simpson_weights(g);
    double sum = 0.0;
    for (int i = 0; i < count; ++i) sum += w[i] * std::pow(g.node(i), 3);
    CHECK(sum == doctest::Approx((16.0 - 1.0) / 4.0).epsilon(1e-13));
  }
}

TEST_CASE("expectation of position") {
  const OscillatorParams p(1, 1);
  const auto g = an::auto_grid_1d(p, 3, 2.0, 4001);
  CHECK(std::abs(an::expectation_position(an::sample_field(lifted(p, 3), g, 2.0))) < 1e-10);
  const double a = 1.75;
  const Grid1D wide(-15, 15, 3001);
  const an::Evaluator1D shifted = [&](double y, double) {
    return oscillator::eigenstate_1d(p, QuantumNumbers1D(0), y - a, 0);
  };
  CHECK(std::abs(an::expectation_position(an::sample_field(shifted, wide, 0)) - a) < 1e-8);
  auto doubled = an::sample_field(shifted, wide, 0);
  for (auto& v : doubled.values) v *= 2.0;
  CHECK_THROWS_AS(an::expectation_position(doubled), PreconditionError);
}

TEST_CASE("spectral propagation") {
  const OscillatorParams p(1, 1);
  const auto chi = lifted(p, 2);
  const auto g = an::auto_grid_1d(p, 2, 1.0, 1024);
  const auto start = an::sample_field(chi, g, 0);
  const auto same = an::spectral_propagate_free(start, 0.0, 1.0);
  CHECK(an::l2_distance(same, start) < 1e-14);
  const auto direct = an::spectral_propagate_free(start, 1.0, 1.0);
  const auto fast = an::spectral_propagate_free(start, 1.0, 1.0, an::SpectralMethod::fast);
  CHECK(an::l2_distance(direct, an::sample_field(chi, g, 1.0)) < 1e-6);
  CHECK(an::l2_distance(direct, fast) < 1e-12);
  CHECK(direct.time_label == 1.0);
}

TEST_CASE("spectral propagation reproduces the spreading gaussian") {
  // Each Fourier mode must pick up exp(-i k^2 tau / 2m); checked through a
  // packet whose free evolution is known in closed form.
  const double m = 1.3;
  const double sigma = 0.8;
  const double a = -0.5;
  const auto packet = [&](double y, double tau) {
    const cplx q = sigma * sigma + cplx(0, 1) * tau / (2 * m);
    return std::pow(2 * pi * sigma * sigma, -0.25) * sigma / std::sqrt(q) *
           std::exp(-(y - a) * (y - a) / (4.0 * q));
  };
  const Grid1D g(-30, 30, 2048);
  const auto start = an::sample_field(packet, g, 0);
  const auto moved = an::spectral_propagate_free(start, 2.5, m, an::SpectralMethod::fast);
  CHECK(an::l2_distance(moved, an::sample_field(packet, g, 2.5)) < 1e-10);
}

TEST_CASE("spectral propagation rejects undecayed data") {
  // A lone Fourier mode fills the whole period, so the decay check refuses it.
  const Grid1D g(0, 2 * pi * 63 / 64, 64);
  const an::Evaluator1D mode = [](double y, double) { return std::polar(1.0, 3 * y); };
  CHECK_THROWS_AS(an::spectral_propagate_free(an::sample_field(mode, g, 0), 1.0, 1.0),
                  PreconditionError);
}

TEST_CASE("density scaling") {
  const OscillatorParams p(1, 1);
  const Grid1D g(-15, 15, 3001);
  CHECK(an::density_scaling_check(p, 2, 0.0, g) < 1e-15);
  CHECK(an::density_scaling_check(p, 2, 1.0, g) < 1e-12);
  CHECK(an::density_scaling_check(p, 5, 4.0, an::auto_grid_1d(p, 5, 4.0, 4001)) < 1e-12);
}

TEST_CASE("density maxima") {
  const OscillatorParams p(1, 1);
  for (double tau : {0.0, 2.0}) {
    const auto r0 = an::find_density_maxima(an::sample_field(lifted(p, 0), an::auto_grid_1d(p, 0, tau, 4001), tau));
    REQUIRE(r0.positions.size() == 1);
    CHECK(std::abs(r0.positions[0]) < 1e-12);
  }
  const auto r2 = an::find_density_maxima(an::sample_field(lifted(p, 2), an::auto_grid_1d(p, 2, 0, 8001), 0));
  REQUIRE(r2.positions.size() == 3);
  CHECK(r2.positions[0] == doctest::Approx(-r2.positions[2]).epsilon(1e-10));
  CHECK(std::abs(r2.positions[1]) < 1e-10);
  const auto r2b = an::find_density_maxima(an::sample_field(lifted(p, 2), an::auto_grid_1d(p, 2, 1, 8001), 1));
  REQUIRE(r2b.positions.size() == 3);
  CHECK(r2b.positions[2] == doctest::Approx(std::sqrt(2.0) * r2.positions[2]).epsilon(1e-7));
  for (double h : r2b.heights) CHECK(h > 0.0);
}

TEST_CASE("peak detection failures") {
  const Grid1D g(-1, 1, 11);
  CHECK_THROWS_AS(an::find_density_maxima(g, std::vector<double>(11, 0.0), 0), PeakDetectionError);
  std::vector<double> ramp(11);
  for (int i = 0; i < 11; ++i) ramp[i] = i;
  CHECK_THROWS_AS(an::find_density_maxima(g, ramp, 0), PeakDetectionError);
  // two maxima two nodes apart
  std::vector<double> close = {0, 0, 0, 1, 0.5, 1, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(an::find_density_maxima(g, close, 0), PeakDetectionError);
  // half maximum never reached on the right
  std::vector<double> cut = {0, 0, 0, 0, 0.2, 1, 0.9, 0.8, 0.7, 0.6, 0.55};
  CHECK_THROWS_AS(an::find_density_maxima(g, cut, 0), PeakDetectionError);
}

TEST_CASE("peak trajectories") {
  const OscillatorParams p(1, 1);
  const auto r0 = an::peak_trajectory_check(p, 0, {0, 1, 3});
  CHECK(r0.peak_count == 1);
  for (const auto& rec : r0.records) CHECK(std::abs(rec.positions[0]) < 1e-10);
  const auto r2 = an::peak_trajectory_check(p, 2, {0, std::sqrt(3.0)});
  CHECK(r2.records[1].positions[2] == doctest::Approx(2.0 * r2.records[0].positions[2]).epsilon(1e-7));
  const auto r5 = an::peak_trajectory_check(p, 5, {0, 1, 2});
  CHECK(r5.peak_count == 6);
  CHECK(r5.max_position_error < 1e-6);
  CHECK(r5.max_fwhm_error < 1e-4);
  CHECK_THROWS_AS(an::peak_trajectory_check(p, 1, {1, 2}), PreconditionError);
}

TEST_CASE("semiclassical gap") {
  const OscillatorParams p(1, 1);
  const auto gaps = an::semiclassical_gap(p, {2, 10, 40});
  REQUIRE(gaps.size() == 3);
  for (const auto& g : gaps) CHECK(g.gap_ratio > 0.0);
  CHECK(gaps[0].gap_ratio > gaps[1].gap_ratio);
  CHECK(gaps[1].gap_ratio > gaps[2].gap_ratio);
  CHECK(gaps[2].turning_point == doctest::Approx(9.0));
  CHECK_THROWS_AS(an::semiclassical_gap(p, {0, 3}), PreconditionError);
  CHECK_THROWS_AS(an::semiclassical_gap(p, {5, 3}), PreconditionError);
}

TEST_CASE("grid preconditions") {
  CHECK_THROWS_AS(Grid1D(0, 1, 2), PreconditionError);
  CHECK_THROWS_AS(Grid1D(1, 0, 10), PreconditionError);
  const Grid1D g(0, 1, 11);
  CHECK(g.refined().count() == 21);
  CHECK(g.refined().node(2) == doctest::Approx(g.node(1)));
}

}
