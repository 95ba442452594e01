#include "freewave/niederer.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include "freewave/errors.hpp"

namespace freewave::niederer {
namespace {

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return s;
}

// Scaled copy of a coordinate vector; small dimensions stay on the stack.
class ScaledPoint {
 public:
  ScaledPoint(std::span<const double> v, double factor) : size_(v.size()) {
    double* dst = v.size() <= inline_.size() ? inline_.data() : (heap_.resize(v.size()), heap_.data());
    for (std::size_t i = 0; i < v.size(); ++i) dst[i] = v[i] * factor;
  }
  std::span<const double> span() const {
    return {size_ <= inline_.size() ? inline_.data() : heap_.data(), size_};
  }

 private:
  std::array<double, 4> inline_{};
  std::vector<double> heap_;
  std::size_t size_;
};

}  // namespace

void require_half_period(const OscillatorParams& params, OscTime t) {
  const double phase = params.omega() * t.t;
  if (!(std::abs(phase) < 0.5 * std::numbers::pi) || !(std::cos(phase) > 0.0)) {
    throw DomainError("oscillator time t=" + std::to_string(t.t) +
                      " lies outside the half-period window |omega t| < pi/2");
  }
}

FreeTime osc_to_free_time(const OscillatorParams& params, OscTime t) {
  require_half_period(params, t);
  return {std::tan(params.omega() * t.t) / params.omega()};
}

OscTime free_to_osc_time(const OscillatorParams& params, FreeTime tau) {
  return {std::atan(params.omega() * tau.tau) / params.omega()};
}

double stretch(const OscillatorParams& params, FreeTime tau) {
  return std::hypot(1.0, params.omega() * tau.tau);
}

std::vector<double> osc_to_free_space(const OscillatorParams& params, OscTime t,
                                      std::span<const double> x) {
  require_half_period(params, t);
  const double c = std::cos(params.omega() * t.t);
  std::vector<double> y(x.begin(), x.end());
  for (double& v : y) v /= c;
  return y;
}

std::vector<double> free_to_osc_space(const OscillatorParams& params, FreeTime tau,
                                      std::span<const double> y) {
  const double inv = 1.0 / stretch(params, tau);
  std::vector<double> x(y.begin(), y.end());
  for (double& v : x) v *= inv;
  return x;
}

cplx lift_wavefunction(const OscEvaluator& psi, const OscillatorParams& params,
                       std::span<const double> y, FreeTime tau) {
  const double m = params.mass();
  const double w = params.omega();
  const double s2 = 1.0 + w * w * tau.tau * tau.tau;
  const double d = static_cast<double>(y.size());
  const double prefactor = std::pow(s2, -0.25 * d);
  const double phase = m * w * w * tau.tau * squared_norm(y) / (2.0 * s2);
  const ScaledPoint x(y, 1.0 / std::sqrt(s2));
  return prefactor * std::polar(1.0, phase) * psi(x.span(), free_to_osc_time(params, tau).t);
}

cplx pull_back_wavefunction(const FreeEvaluator& chi, const OscillatorParams& params,
                            std::span<const double> x, OscTime t) {
  require_half_period(params, t);
  const double m = params.mass();
  const double w = params.omega();
  const double c = std::cos(w * t.t);
  const double tn = std::tan(w * t.t);
  const double d = static_cast<double>(x.size());
  const double prefactor = std::pow(c, -0.5 * d);
  const double phase = -0.5 * m * w * tn * squared_norm(x);
  const ScaledPoint y(x, 1.0 / c);
  return prefactor * std::polar(1.0, phase) * chi(y.span(), tn / w);
}

OscEvaluator eigenstate_evaluator(const OscillatorParams& params, QuantumNumbers1D qn) {
  return [params, qn](std::span<const double> x, double t) {
    if (x.size() != 1) throw std::invalid_argument("1D eigenstate evaluated at a non-1D point");
    return oscillator::eigenstate_1d(params, qn, x[0], t);
  };
}

OscEvaluator eigenstate_evaluator(const OscillatorParams& params, QuantumNumbers2D qn) {
  return [params, qn](std::span<const double> x, double t) {
    if (x.size() != 2) throw std::invalid_argument("2D eigenstate evaluated at a non-2D point");
    return oscillator::eigenstate_2d_xy(params, qn, x[0], x[1], t);
  };
}

cplx lifted_eigenstate_1d(const OscillatorParams& params, QuantumNumbers1D qn, double y,
                          FreeTime tau) {
  const double m = params.mass();
  const double w = params.omega();
  const double wt = w * tau.tau;
  const double s2 = 1.0 + wt * wt;
  const double mw = m * w;
  const double amplitude =
      std::pow(mw / s2, 0.25) * oscillator::hermite_function(qn.n, std::sqrt(mw / s2) * y);
  const double phase = mw * wt * y * y / (2.0 * s2) - (qn.n + 0.5) * std::atan(wt);
  return amplitude * std::polar(1.0, phase);
}

cplx lifted_eigenstate_2d(const OscillatorParams& params, QuantumNumbers2D qn,
                          std::span<const double, 2> y, FreeTime tau) {
  if (qn.n_radial != 0)
    throw std::invalid_argument("lifted_eigenstate_2d: closed form covers n_radial = 0 only");
  const int abs_l = std::abs(qn.l);
  const double mw = params.mass() * params.omega();
  const double wt = params.omega() * tau.tau;
  const double s2 = 1.0 + wt * wt;
  const double r2 = y[0] * y[0] + y[1] * y[1];
  const double radial = oscillator::norm_constant_2d(params, qn) * std::pow(s2, -0.5 * (abs_l + 1)) *
                        std::pow(std::sqrt(r2), abs_l) * std::exp(-mw * r2 / (2.0 * s2));
  const double phase = qn.l * std::atan2(y[1], y[0]) - (abs_l + 1.0) * std::atan(wt) +
                       mw * wt * r2 / (2.0 * s2);
  return radial * std::polar(1.0, phase);
}

LiftedState::LiftedState(const OscillatorParams& params, QuantumNumbers1D qn)
    : params_(params), source_(qn) {}

LiftedState::LiftedState(const OscillatorParams& params, QuantumNumbers2D qn)
    : params_(params), source_(qn) {}

cplx LiftedState::operator()(std::span<const double> y, FreeTime tau) const {
  if (static_cast<int>(y.size()) != dimension())
    throw std::invalid_argument("LiftedState: point dimension " + std::to_string(y.size()) +
                                " does not match state dimension " + std::to_string(dimension()));
  if (const auto* qn1 = std::get_if<QuantumNumbers1D>(&source_))
    return lifted_eigenstate_1d(params_, *qn1, y[0], tau);
  const auto& qn2 = std::get<QuantumNumbers2D>(source_);
  if (qn2.n_radial == 0) return lifted_eigenstate_2d(params_, qn2, y.first<2>(), tau);
  return lift_wavefunction(eigenstate_evaluator(params_, qn2), params_, y, tau);
}

cplx LiftedState::operator()(double y, FreeTime tau) const {
  return (*this)(std::span<const double>(&y, 1), tau);
}

FreeEvaluator LiftedState::evaluator() const {
  return [state = *this](std::span<const double> y, double tau) { return state(y, FreeTime{tau}); };
}

}  // namespace freewave::niederer
