#pragma once

// Niederer's map between the harmonic oscillator on the half-period window
// |omega t| < pi/2 and the free particle of the same mass on all of tau:
//
//   tau = tan(omega t) / omega,       y = x / cos(omega t),
//   t   = arctan(omega tau) / omega,  x = y (1 + omega^2 tau^2)^{-1/2},
//
// together with the wavefunction dressing that carries oscillator solutions
// psi(x, t) to free solutions chi(y, tau) and back.

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "freewave/oscillator.hpp"

namespace freewave {

// Oscillator time; valid only inside the half-period window.
struct OscTime {
  double t = 0.0;
};

// Free-particle time; every real value is valid.
struct FreeTime {
  double tau = 0.0;
};

}  // namespace freewave

namespace freewave::niederer {

// Wavefunction evaluators; the span length is the spatial dimension.
using OscEvaluator = std::function<cplx(std::span<const double> x, double t)>;
using FreeEvaluator = std::function<cplx(std::span<const double> y, double tau)>;

// Throws DomainError unless |omega t| < pi/2.
void require_half_period(const OscillatorParams& params, OscTime t);

FreeTime osc_to_free_time(const OscillatorParams& params, OscTime t);
OscTime free_to_osc_time(const OscillatorParams& params, FreeTime tau);

// Stretch factor sqrt(1 + omega^2 tau^2) = 1 / cos(omega t).
double stretch(const OscillatorParams& params, FreeTime tau);

std::vector<double> osc_to_free_space(const OscillatorParams& params, OscTime t,
                                      std::span<const double> x);
std::vector<double> free_to_osc_space(const OscillatorParams& params, FreeTime tau,
                                      std::span<const double> y);

// chi(y, tau) = (1 + w^2 tau^2)^{-d/4} exp(i m w^2 tau |y|^2 / (2 (1 + w^2 tau^2)))
//               psi(y (1 + w^2 tau^2)^{-1/2}, arctan(w tau) / w)
cplx lift_wavefunction(const OscEvaluator& psi, const OscillatorParams& params,
                       std::span<const double> y, FreeTime tau);

// psi(x, t) = cos(w t)^{-d/2} exp(-i m w tan(w t) |x|^2 / 2) chi(x / cos(w t), tan(w t) / w)
// Throws DomainError outside the half-period window.
cplx pull_back_wavefunction(const FreeEvaluator& chi, const OscillatorParams& params,
                            std::span<const double> x, OscTime t);

// Adapters from the closed-form oscillator states.
OscEvaluator eigenstate_evaluator(const OscillatorParams& params, QuantumNumbers1D qn);
OscEvaluator eigenstate_evaluator(const OscillatorParams& params, QuantumNumbers2D qn);

// Closed-form lift of the 1D eigenstate psi_n (Strange's accelerating packets).
cplx lifted_eigenstate_1d(const OscillatorParams& params, QuantumNumbers1D qn, double y,
                          FreeTime tau);

// Closed-form lift of the 2D state psi_{0,l} (Aiello's packets). Throws
// std::invalid_argument when n_radial != 0; lift eigenstate_evaluator(...)
// through lift_wavefunction for other radial numbers.
cplx lifted_eigenstate_2d(const OscillatorParams& params, QuantumNumbers2D qn,
                          std::span<const double, 2> y, FreeTime tau);

// A free-particle solution obtained by lifting an oscillator eigenstate.
class LiftedState {
 public:
  LiftedState(const OscillatorParams& params, QuantumNumbers1D qn);
  LiftedState(const OscillatorParams& params, QuantumNumbers2D qn);

  const OscillatorParams& params() const { return params_; }
  int dimension() const { return std::holds_alternative<QuantumNumbers1D>(source_) ? 1 : 2; }
  const std::variant<QuantumNumbers1D, QuantumNumbers2D>& source() const { return source_; }

  // y.size() must equal dimension().
  cplx operator()(std::span<const double> y, FreeTime tau) const;
  cplx operator()(double y, FreeTime tau) const;

  FreeEvaluator evaluator() const;

 private:
  OscillatorParams params_;
  std::variant<QuantumNumbers1D, QuantumNumbers2D> source_;
};

}  // namespace freewave::niederer
