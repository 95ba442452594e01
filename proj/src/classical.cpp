#include "freewave/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "freewave/quadrature.hpp"

namespace freewave::classical {

TrajectoryFamily::TrajectoryFamily(const OscillatorParams& params, double energy)
    : params_(params), energy_(energy) {
  if (!(energy > 0.0) || !std::isfinite(energy))
    throw std::invalid_argument("TrajectoryFamily: energy must be positive");
}

TrajectoryFamily TrajectoryFamily::for_eigenstate(const OscillatorParams& params,
                                                  QuantumNumbers1D qn) {
  return TrajectoryFamily(params, oscillator::energy_1d(params, qn));
}

double TrajectoryFamily::amplitude() const {
  const double w = params_.omega();
  return std::sqrt(2.0 * energy_ / (params_.mass() * w * w));
}

PhaseAngle::PhaseAngle(double alpha) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(alpha, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  alpha_ = a;
}

double oscillator_trajectory(const TrajectoryFamily& fam, PhaseAngle alpha, double t) {
  return fam.amplitude() * std::cos(fam.params().omega() * t + alpha.value());
}

double oscillator_velocity(const TrajectoryFamily& fam, PhaseAngle alpha, double t) {
  const double w = fam.params().omega();
  return -fam.amplitude() * w * std::sin(w * t + alpha.value());
}

double free_trajectory(const TrajectoryFamily& fam, PhaseAngle alpha, FreeTime tau) {
  const double a = alpha.value();
  return fam.amplitude() * (std::cos(a) - fam.params().omega() * tau.tau * std::sin(a));
}

EnvelopeBranches envelope(const TrajectoryFamily& fam, FreeTime tau) {
  const double y = fam.amplitude() * std::hypot(1.0, fam.params().omega() * tau.tau);
  return {y, -y};
}

EnvelopeBranches turning_points(const TrajectoryFamily& fam) {
  return {fam.amplitude(), -fam.amplitude()};
}

Tangency tangency(const TrajectoryFamily& fam, PhaseAngle alpha) {
  const double a = alpha.value();
  const double c = std::cos(a);
  // The reduced angle pi/2 or 3pi/2 evaluates cos to ~6e-17, not 0.
  if (std::abs(c) < 1e-15) {
    const double inf = std::numeric_limits<double>::infinity();
    const int branch = std::sin(a) > 0.0 ? -1 : 1;  // y = -A omega tau sin(alpha) as tau -> +inf
    return {inf, branch * inf, branch, true};
  }
  const double tau_star = -std::tan(a) / fam.params().omega();
  const double y_star = free_trajectory(fam, alpha, FreeTime{tau_star});
  return {tau_star, y_star, c > 0.0 ? 1 : -1, false};
}

EnvelopeContact envelope_contact(const TrajectoryFamily& fam, PhaseAngle alpha, double tau_min,
                                 double tau_max, int samples, double tol) {
  if (!(tau_min < tau_max) || samples < 3)
    throw std::invalid_argument("envelope_contact: need tau_min < tau_max and >= 3 samples");
  const Tangency tan_pt = tangency(fam, alpha);
  if (!tan_pt.asymptotic) {
    tau_min = std::min(tau_min, tan_pt.tau_star - 1.0);
    tau_max = std::max(tau_max, tan_pt.tau_star + 1.0);
  }
  // tau* itself is inserted so the touch is sampled exactly.
  std::vector<double> taus;
  taus.reserve(samples + 1);
  for (int i = 0; i < samples; ++i)
    taus.push_back(tau_min + (tau_max - tau_min) * i / (samples - 1));
  if (!tan_pt.asymptotic) {
    taus.push_back(tan_pt.tau_star);
    std::sort(taus.begin(), taus.end());
  }

  EnvelopeContact out{-std::numeric_limits<double>::infinity(), 0, false};
  bool in_run = false;
  bool run_has_star = false;
  for (double tau : taus) {
    const double y = free_trajectory(fam, alpha, FreeTime{tau});
    const double gap = envelope(fam, FreeTime{tau}).y_plus - std::abs(y);
    out.max_excess = std::max(out.max_excess, -gap);
    const bool touching = gap <= tol;
    if (touching && !in_run) {
      ++out.touches;
      run_has_star = false;
    }
    if (touching && !tan_pt.asymptotic && tau == tan_pt.tau_star) run_has_star = true;
    if (touching) out.touch_at_tangency = out.touch_at_tangency || run_has_star;
    in_run = touching;
  }
  return out;
}

ActionIdentity action_boundary_identity(const TrajectoryFamily& fam, PhaseAngle alpha, double t1,
                                        double t2) {
  const OscillatorParams& p = fam.params();
  niederer::require_half_period(p, OscTime{t1});
  niederer::require_half_period(p, OscTime{t2});
  if (t1 == t2) return {0.0, 0.0, 0.0};

  const double m = p.mass();
  const double w = p.omega();
  constexpr double tol = 1e-12;

  const auto lagrangian = [&](double t) {
    const double x = oscillator_trajectory(fam, alpha, t);
    const double v = oscillator_velocity(fam, alpha, t);
    return 0.5 * m * v * v - 0.5 * m * w * w * x * x;
  };
  const double lhs = quadrature::integrate(lagrangian, t1, t2, tol).value;

  // y(tau) = x(t) / cos(omega t) with t = arctan(omega tau) / omega, hence
  // dy/dtau = cos^2(omega t) d/dt [x / cos(omega t)] = xdot cos(omega t) + x omega sin(omega t).
  const auto free_kinetic = [&](double tau) {
    const double t = niederer::free_to_osc_time(p, FreeTime{tau}).t;
    const double x = oscillator_trajectory(fam, alpha, t);
    const double v = oscillator_velocity(fam, alpha, t);
    const double dy = v * std::cos(w * t) + x * w * std::sin(w * t);
    return 0.5 * m * dy * dy;
  };
  const double tau1 = niederer::osc_to_free_time(p, OscTime{t1}).tau;
  const double tau2 = niederer::osc_to_free_time(p, OscTime{t2}).tau;
  const double kinetic = quadrature::integrate(free_kinetic, tau1, tau2, tol).value;

  const auto boundary = [&](double t) {
    const double x = oscillator_trajectory(fam, alpha, t);
    const double y = niederer::osc_to_free_space(p, OscTime{t}, std::span<const double>(&x, 1))[0];
    return 0.25 * m * w * std::sin(2.0 * w * t) * y * y;
  };
  const double rhs = kinetic - (boundary(t2) - boundary(t1));
  return {lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace freewave::classical
