#pragma once

// Classical picture behind the lifted states: the one-parameter family of
// oscillator orbits at fixed energy, its image under the Niederer map (a fan
// of straight free-particle lines), the hyperbolic envelope of that fan, and
// the Lagrangian identity that makes the map a symmetry of the action.

#include <utility>

#include "freewave/niederer.hpp"
#include "freewave/oscillator.hpp"

namespace freewave::classical {

class TrajectoryFamily {
 public:
  // Throws std::invalid_argument unless energy > 0.
  TrajectoryFamily(const OscillatorParams& params, double energy);

  // Family for the n-th 1D eigenstate, E = omega (n + 1/2).
  static TrajectoryFamily for_eigenstate(const OscillatorParams& params, QuantumNumbers1D qn);

  const OscillatorParams& params() const { return params_; }
  double energy() const { return energy_; }
  // sqrt(2E / (m omega^2)), the classical turning-point distance.
  double amplitude() const;

 private:
  OscillatorParams params_;
  double energy_;
};

// Orbit phase, stored reduced to [0, 2 pi).
class PhaseAngle {
 public:
  PhaseAngle() = default;
  explicit PhaseAngle(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_ = 0.0;
};

// x(t, alpha) = A cos(omega t + alpha)
double oscillator_trajectory(const TrajectoryFamily& fam, PhaseAngle alpha, double t);
// dx/dt along the same orbit.
double oscillator_velocity(const TrajectoryFamily& fam, PhaseAngle alpha, double t);

// y(tau, alpha) = A (cos alpha - omega tau sin alpha)
double free_trajectory(const TrajectoryFamily& fam, PhaseAngle alpha, FreeTime tau);

struct EnvelopeBranches {
  double y_plus;
  double y_minus;
};

// +-A sqrt(1 + omega^2 tau^2)
EnvelopeBranches envelope(const TrajectoryFamily& fam, FreeTime tau);

// x+- = +-A
EnvelopeBranches turning_points(const TrajectoryFamily& fam);

struct Tangency {
  double tau_star;  // +inf when asymptotic
  double y_star;    // touch point; +-inf when asymptotic
  int branch;       // +1 upper envelope, -1 lower
  bool asymptotic;  // cos(alpha) == 0: the line only meets the envelope at |tau| -> inf
};

// Solves d y(tau, alpha) / d alpha = 0, i.e. omega tau* = -tan(alpha); then
// y* = A / cos(alpha) lies on the branch sign(cos alpha).
Tangency tangency(const TrajectoryFamily& fam, PhaseAngle alpha);

struct EnvelopeContact {
  double max_excess;  // max over samples of |y(tau, alpha)| - envelope(tau); <= 0 up to round-off
  int touches;        // maximal runs of samples with envelope - |y| <= tol
  bool touch_at_tangency;  // the run contains tau* (false when asymptotic)
};

// Samples tau on [tau_min, tau_max] (widened to include tau* when finite) and
// compares the orbit with the upper/lower envelope.
EnvelopeContact envelope_contact(const TrajectoryFamily& fam, PhaseAngle alpha, double tau_min,
                                 double tau_max, int samples = 20001, double tol = 1e-10);

struct ActionIdentity {
  double lhs;     // int_{t1}^{t2} L dt along the oscillator orbit
  double rhs;     // int_{tau1}^{tau2} (m/2) (dy/dtau)^2 dtau - [(m omega / 4) sin(2 omega t) y^2]
  double defect;  // |lhs - rhs|
};

// Evaluates both sides of L dt = (m/2) (dy/dtau)^2 dtau - d((m omega / 4) sin(2 omega t) y^2)
// along one orbit, each by its own adaptive quadrature. The free side uses
// y(tau) obtained by mapping the oscillator orbit, not the closed-form line.
// Throws DomainError if t1 or t2 lies outside the half-period window and
// QuadratureError if either integral fails to converge.
ActionIdentity action_boundary_identity(const TrajectoryFamily& fam, PhaseAngle alpha, double t1,
                                        double t2);

}  // namespace freewave::classical
