#pragma once

// Stationary states of the isotropic harmonic oscillator in one and two
// dimensions. Natural units: hbar = 1; mass and omega stay free.

#include <complex>

namespace freewave {

using cplx = std::complex<double>;

class OscillatorParams {
 public:
  OscillatorParams() = default;
  // Throws std::invalid_argument unless mass > 0 and omega > 0.
  OscillatorParams(double mass, double omega);

  double mass() const { return mass_; }
  double omega() const { return omega_; }
  // Oscillator length 1 / sqrt(m omega).
  double length() const;

  friend bool operator==(const OscillatorParams&, const OscillatorParams&) = default;

 private:
  double mass_ = 1.0;
  double omega_ = 1.0;
};

struct QuantumNumbers1D {
  QuantumNumbers1D() = default;
  explicit QuantumNumbers1D(int n);
  int n = 0;
};

struct QuantumNumbers2D {
  QuantumNumbers2D() = default;
  QuantumNumbers2D(int n_radial, int l);
  int n_radial = 0;
  int l = 0;
};

}  // namespace freewave

namespace freewave::oscillator {

double energy_1d(const OscillatorParams& params, QuantumNumbers1D qn);

// E = omega (2 n_radial + |l| + 1).
double energy_2d(const OscillatorParams& params, QuantumNumbers2D qn);

// Normalized Hermite function (2^n n! sqrt(pi))^{-1/2} exp(-xi^2/2) H_n(xi),
// evaluated by its own three-term recurrence so that no factorial is formed.
double hermite_function(int n, double xi);

// psi_n(x, t) = (m omega / pi)^{1/4} (2^n n!)^{-1/2} e^{-i omega (n + 1/2) t}
//               e^{-m omega x^2 / 2} H_n(sqrt(m omega) x)
cplx eigenstate_1d(const OscillatorParams& params, QuantumNumbers1D qn, double x, double t);

// |psi_n(x, t)|^2, independent of t.
double density_1d(const OscillatorParams& params, QuantumNumbers1D qn, double x);

// Common eigenfunction of energy and angular momentum L_z = l:
//   N e^{-i omega (2n + |l| + 1) t} e^{-m omega r^2 / 2} r^{|l|} 1F1(-n; |l| + 1; m omega r^2) e^{i l phi}
// Throws DomainError for r < 0.
cplx eigenstate_2d(const OscillatorParams& params, QuantumNumbers2D qn, double r, double phi,
                   double t);

// Same state addressed by Cartesian coordinates.
cplx eigenstate_2d_xy(const OscillatorParams& params, QuantumNumbers2D qn, double x1, double x2,
                      double t);

// Unit-norm constant for eigenstate_2d, obtained by radial quadrature.
// Results are cached per (n_radial, |l|); the cache is safe for concurrent use.
// Throws QuadratureError if the radial integral does not converge.
double norm_constant_2d(const OscillatorParams& params, QuantumNumbers2D qn);

}  // namespace freewave::oscillator
