#include "freewave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "freewave/classical.hpp"
#include "freewave/niederer.hpp"

namespace freewave::verify {
namespace {

std::vector<double> taus_or(const SuiteOptions& o, std::vector<double> fallback) {
  return o.taus.empty() ? fallback : o.taus;
}

bool order_in_range(double order) { return order >= 1.8 && order <= 2.2; }

SuiteOutcome residual_outcome(const std::string& name, analysis::ResidualReport report,
                              bool check_linf) {
  SuiteOutcome out;
  out.suite = name;
  out.metric = report.linf_residuals.back();
  out.threshold = 1e-6;
  out.pass = order_in_range(report.fitted_order) && (!check_linf || out.metric < out.threshold);
  out.details["fitted_order"] = report.fitted_order;
  out.details["fitted_order_l2"] = report.fitted_order_l2;
  out.residuals = std::move(report);
  return out;
}

SuiteOutcome free_residual(const SuiteOptions& o) {
  const double tau = taus_or(o, {0.5}).front();
  auto out = residual_outcome(
      "free-residual", analysis::free_residual_study(o.params, o.n, tau, o.refinements), true);
  out.details["tau"] = tau;
  return out;
}

SuiteOutcome osc_residual(const SuiteOptions& o) {
  const double t = taus_or(o, {0.3}).front();
  auto out = residual_outcome(
      "osc-residual", analysis::oscillator_residual_study(o.params, o.n, t, o.refinements), true);
  out.details["t"] = t;
  return out;
}

SuiteOutcome free_residual_2d(const SuiteOptions& o) {
  const double tau = taus_or(o, {0.5}).front();
  auto report =
      analysis::free_residual_study_2d(o.params, QuantumNumbers2D(0, o.l), tau, o.refinements);
  auto out = residual_outcome("free-residual-2d", std::move(report), false);
  // Only the order is asserted in 2D.
  out.metric = std::abs(out.details["fitted_order"] - 2.0);
  out.threshold = 0.2;
  out.details["tau"] = tau;
  return out;
}

SuiteOutcome density_scaling(const SuiteOptions& o) {
  SuiteOutcome out{"density-scaling", false, 0.0, 1e-12, std::nullopt, {}};
  for (double tau : taus_or(o, {0.0, 1.0, 4.0, 10.0})) {
    const auto grid = analysis::auto_grid_1d(o.params, o.n, tau, 4001);
    out.metric = std::max(out.metric, analysis::density_scaling_check(o.params, o.n, tau, grid));
  }
  out.pass = out.metric < out.threshold;
  return out;
}

SuiteOutcome unitarity(const SuiteOptions& o) {
  SuiteOutcome out{"unitarity", false, 0.0, 1e-8, std::nullopt, {}};
  const niederer::LiftedState state(o.params, QuantumNumbers1D(o.n));
  const analysis::Evaluator1D chi = [&](double y, double tau) { return state(y, FreeTime{tau}); };
  for (double tau : taus_or(o, {0.0, 3.0})) {
    const auto grid = analysis::auto_grid_1d(o.params, o.n, tau, 4001);
    const double norm = analysis::norm_1d(analysis::sample_field(chi, grid, tau));
    out.metric = std::max(out.metric, std::abs(norm - 1.0));
  }
  out.pass = out.metric < out.threshold;
  return out;
}

SuiteOutcome unitarity_2d(const SuiteOptions& o) {
  SuiteOutcome out{"unitarity-2d", false, 0.0, 1e-7, std::nullopt, {}};
  const QuantumNumbers2D qn(0, o.l);
  for (double tau : taus_or(o, {0.0, 2.0})) {
    const auto grid = analysis::auto_grid_2d(o.params, qn, tau, 401);
    const auto values = kernels::parallel::sample_2d(
        [&](double y1, double y2) {
          const double y[2] = {y1, y2};
          return niederer::lifted_eigenstate_2d(o.params, qn, y, FreeTime{tau});
        },
        grid);
    out.metric = std::max(out.metric, std::abs(analysis::norm_2d(grid, values) - 1.0));
  }
  out.pass = out.metric < out.threshold;
  return out;
}

SuiteOutcome spectral(const SuiteOptions& o) {
  SuiteOutcome out{"spectral", false, 0.0, 1e-6, std::nullopt, {}};
  const double tau = taus_or(o, {1.0}).front();
  const niederer::LiftedState state(o.params, QuantumNumbers1D(o.n));
  const analysis::Evaluator1D chi = [&](double y, double t) { return state(y, FreeTime{t}); };
  const auto grid = analysis::auto_grid_1d(o.params, o.n, tau, 1024);
  const auto propagated =
      analysis::spectral_propagate_free(analysis::sample_field(chi, grid, 0.0), tau, o.params.mass());
  out.metric = analysis::l2_distance(propagated, analysis::sample_field(chi, grid, tau));
  out.details["tau"] = tau;
  out.pass = out.metric < out.threshold;
  return out;
}

SuiteOutcome peak_law(const SuiteOptions& o) {
  SuiteOutcome out{"peak-law", false, 0.0, 1e-6, std::nullopt, {}};
  const auto report = analysis::peak_trajectory_check(o.params, o.n, taus_or(o, {0.0, 1.0, 2.0}));
  out.metric = report.max_position_error;
  out.details["peak_count"] = report.peak_count;
  out.details["max_fwhm_error"] = report.max_fwhm_error;
  out.pass = report.peak_count == o.n + 1 && report.max_position_error < 1e-6 &&
             report.max_fwhm_error < 1e-4;
  return out;
}

SuiteOutcome semiclassical(const SuiteOptions& o) {
  SuiteOutcome out{"semiclassical", false, 0.0, 0.0, std::nullopt, {}};
  const auto ns = o.n_values.empty() ? std::vector<int>{5, 10, 20, 40, 60} : o.n_values;
  const auto gaps = analysis::semiclassical_gap(o.params, ns);
  int violations = 0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    out.details["gap_ratio_n" + std::to_string(gaps[i].n)] = gaps[i].gap_ratio;
    if (!(gaps[i].gap_ratio > 0.0)) ++violations;
    if (i > 0 && !(gaps[i].gap_ratio < gaps[i - 1].gap_ratio)) ++violations;
  }
  out.metric = violations;
  out.pass = violations == 0;
  return out;
}

SuiteOutcome round_trip(const SuiteOptions& o) {
  SuiteOutcome out{"round-trip", false, 0.0, 1e-12, std::nullopt, {}};
  const auto& p = o.params;
  const double w = p.omega();
  const int points = 10000;
  const double half_width = 8.0 * p.length() * std::sqrt(2.0 * o.n + 1.0);
  for (int n = 0; n <= o.n; ++n) {
    const auto psi = niederer::eigenstate_evaluator(p, QuantumNumbers1D(n));
    const niederer::FreeEvaluator lifted = [&](std::span<const double> y, double tau) {
      return niederer::lift_wavefunction(psi, p, y, FreeTime{tau});
    };
    for (double wt : {-1.4, -0.7, 0.0, 0.7, 1.4}) {
      const OscTime t{wt / w};
      std::vector<double> diff(points);
#pragma omp parallel for schedule(static)
      for (int i = 0; i < points; ++i) {
        const double x = -half_width + 2.0 * half_width * i / (points - 1);
        const cplx back = niederer::pull_back_wavefunction(lifted, p, std::span<const double>(&x, 1), t);
        diff[i] = std::abs(back - oscillator::eigenstate_1d(p, QuantumNumbers1D(n), x, t.t));
      }
      out.metric = std::max(out.metric, *std::max_element(diff.begin(), diff.end()));
    }
  }
  out.pass = out.metric < out.threshold;
  return out;
}

SuiteOutcome ehrenfest(const SuiteOptions& o) {
  SuiteOutcome out{"ehrenfest", false, 0.0, 1e-6, std::nullopt, {}};
  const auto& p = o.params;
  const niederer::OscEvaluator mix = [p](std::span<const double> x, double t) {
    return (oscillator::eigenstate_1d(p, QuantumNumbers1D(0), x[0], t) +
            oscillator::eigenstate_1d(p, QuantumNumbers1D(1), x[0], t)) /
           std::numbers::sqrt2;
  };
  const analysis::Evaluator1D chi = [&](double y, double tau) {
    return niederer::lift_wavefunction(mix, p, std::span<const double>(&y, 1), FreeTime{tau});
  };
  const std::vector<double> taus = taus_or(o, {0.0, 0.5, 1.0, 1.5, 2.0});
  std::vector<double> mean;
  for (double tau : taus) {
    const auto grid = analysis::auto_grid_1d(p, 1, tau, 4001);
    mean.push_back(analysis::expectation_position(analysis::sample_field(chi, grid, tau)));
  }
  for (std::size_t i = 1; i + 1 < mean.size(); ++i)
    out.metric = std::max(out.metric, std::abs(mean[i + 1] - 2.0 * mean[i] + mean[i - 1]));
  // Definite-parity states must sit at the origin.
  double parity_mean = 0.0;
  for (int n = 0; n <= 3; ++n) {
    const niederer::LiftedState state(p, QuantumNumbers1D(n));
    for (double tau : taus) {
      const auto field = analysis::sample_field(
          [&](double y, double s) { return state(y, FreeTime{s}); },
          analysis::auto_grid_1d(p, n, tau, 4001), tau);
      parity_mean = std::max(parity_mean, std::abs(analysis::expectation_position(field)));
    }
  }
  out.details["mean_y_first"] = mean.front();
  out.details["mean_y_last"] = mean.back();
  out.details["parity_max_abs_mean"] = parity_mean;
  out.pass = out.metric < out.threshold && parity_mean < 1e-10;
  return out;
}

SuiteOutcome action(const SuiteOptions& o) {
  SuiteOutcome out{"action", false, 0.0, 1e-8, std::nullopt, {}};
  const auto fam = classical::TrajectoryFamily::for_eigenstate(o.params, QuantumNumbers1D(o.n));
  std::mt19937_64 rng(20131015);
  const double edge = 0.49 * std::numbers::pi / o.params.omega();
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> time(-edge, edge);
  for (int k = 0; k < 50; ++k) {
    const classical::PhaseAngle alpha(angle(rng));
    const double t1 = time(rng);
    const double t2 = time(rng);
    out.metric = std::max(out.metric, classical::action_boundary_identity(fam, alpha, t1, t2).defect);
  }
  out.pass = out.metric < out.threshold;
  return out;
}

SuiteOutcome envelope(const SuiteOptions& o) {
  SuiteOutcome out{"envelope", false, -1.0, 1e-10, std::nullopt, {}};
  const auto fam = classical::TrajectoryFamily::for_eigenstate(o.params, QuantumNumbers1D(o.n));
  bool single_touch = true;
  for (int k = 0; k < 100; ++k) {
    const classical::PhaseAngle alpha(2.0 * std::numbers::pi * (k + 0.5) / 100.0);
    const auto contact = classical::envelope_contact(fam, alpha, -10.0, 10.0);
    out.metric = std::max(out.metric, contact.max_excess);
    single_touch = single_touch && contact.touches == 1 && contact.touch_at_tangency;
  }
  const auto env0 = classical::envelope(fam, FreeTime{0.0});
  const auto turn = classical::turning_points(fam);
  const bool matches_turning = env0.y_plus == turn.y_plus && env0.y_minus == turn.y_minus;
  out.details["single_touch"] = single_touch;
  out.details["envelope_equals_turning_points"] = matches_turning;
  out.pass = out.metric <= out.threshold && single_touch && matches_turning;
  return out;
}

using SuiteFn = std::function<SuiteOutcome(const SuiteOptions&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites = {
      {"free-residual", free_residual},
      {"osc-residual", osc_residual},
      {"free-residual-2d", free_residual_2d},
      {"density-scaling", density_scaling},
      {"unitarity", unitarity},
      {"unitarity-2d", unitarity_2d},
      {"spectral", spectral},
      {"peak-law", peak_law},
      {"semiclassical", semiclassical},
      {"round-trip", round_trip},
      {"ehrenfest", ehrenfest},
      {"action", action},
      {"envelope", envelope},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

SuiteOutcome run_suite(const std::string& suite, const SuiteOptions& options) {
  const auto& suites = registry();
  const auto it = suites.find(suite);
  if (it == suites.end()) throw std::invalid_argument("unknown verification suite '" + suite + "'");
  return it->second(options);
}

}  // namespace freewave::verify
