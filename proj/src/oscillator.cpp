#include "freewave/oscillator.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <utility>

#include "freewave/errors.hpp"
#include "freewave/quadrature.hpp"
#include "freewave/specfun.hpp"

namespace freewave {

OscillatorParams::OscillatorParams(double mass, double omega) : mass_(mass), omega_(omega) {
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("OscillatorParams: mass must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw std::invalid_argument("OscillatorParams: omega must be positive");
}

double OscillatorParams::length() const { return 1.0 / std::sqrt(mass_ * omega_); }

QuantumNumbers1D::QuantumNumbers1D(int n_) : n(n_) {
  if (n_ < 0) throw std::invalid_argument("QuantumNumbers1D: n must be >= 0");
}

QuantumNumbers2D::QuantumNumbers2D(int n_radial_, int l_) : n_radial(n_radial_), l(l_) {
  if (n_radial_ < 0) throw std::invalid_argument("QuantumNumbers2D: n_radial must be >= 0");
}

}  // namespace freewave

namespace freewave::oscillator {

double energy_1d(const OscillatorParams& params, QuantumNumbers1D qn) {
  return params.omega() * (qn.n + 0.5);
}

double energy_2d(const OscillatorParams& params, QuantumNumbers2D qn) {
  return params.omega() * (2.0 * qn.n_radial + std::abs(qn.l) + 1.0);
}

double hermite_function(int n, double xi) {
  if (n < 0) throw std::invalid_argument("hermite_function: negative degree");
  // pi^{-1/4}
  constexpr double kGround = 0.75112554446494248286;
  double prev = kGround * std::exp(-0.5 * xi * xi);
  if (n == 0) return prev;
  double cur = std::numbers::sqrt2 * xi * prev;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx eigenstate_1d(const OscillatorParams& params, QuantumNumbers1D qn, double x, double t) {
  const double mw = params.mass() * params.omega();
  const double amplitude = std::pow(mw, 0.25) * hermite_function(qn.n, std::sqrt(mw) * x);
  return amplitude * std::polar(1.0, -energy_1d(params, qn) * t);
}

double density_1d(const OscillatorParams& params, QuantumNumbers1D qn, double x) {
  const double mw = params.mass() * params.omega();
  const double amplitude = std::pow(mw, 0.25) * hermite_function(qn.n, std::sqrt(mw) * x);
  return amplitude * amplitude;
}

namespace {

// Radial integral in the scaled variable u = m omega r^2:
//   I(n, l) = int_0^inf e^{-u} u^{|l|} 1F1(-n; |l|+1; u)^2 du.
double scaled_radial_integral(int n, int abs_l) {
  const double b = abs_l + 1.0;
  const auto integrand = [n, abs_l, b](double u) {
    const double f = specfun::kummer_truncated(n, b, u);
    return std::exp(-u) * std::pow(u, abs_l) * f * f;
  };
  // The integrand peaks near u = 2n + |l|; e^{-100} past that is negligible.
  const double upper = 2.0 * (2.0 * n + abs_l) + 100.0;
  return quadrature::integrate(integrand, 0.0, upper, 1e-14).value;
}

std::shared_mutex cache_mutex;
std::map<std::pair<int, int>, double> radial_cache;

}  // namespace

double norm_constant_2d(const OscillatorParams& params, QuantumNumbers2D qn) {
  const int abs_l = std::abs(qn.l);
  const auto key = std::make_pair(qn.n_radial, abs_l);
  double integral = 0.0;
  bool cached = false;
  {
    std::shared_lock lock(cache_mutex);
    if (auto it = radial_cache.find(key); it != radial_cache.end()) {
      integral = it->second;
      cached = true;
    }
  }
  if (!cached) {
    integral = scaled_radial_integral(qn.n_radial, abs_l);
    std::unique_lock lock(cache_mutex);
    radial_cache.emplace(key, integral);
  }
  // 2 pi int |psi|^2 r dr = pi (m omega)^{-(|l|+1)} I  =>  N = (m omega)^{(|l|+1)/2} / sqrt(pi I)
  const double mw = params.mass() * params.omega();
  return std::pow(mw, 0.5 * (abs_l + 1)) / std::sqrt(std::numbers::pi * integral);
}

cplx eigenstate_2d(const OscillatorParams& params, QuantumNumbers2D qn, double r, double phi,
                   double t) {
  if (r < 0.0) throw DomainError("eigenstate_2d: negative radius");
  const int abs_l = std::abs(qn.l);
  const double mw = params.mass() * params.omega();
  const double u = mw * r * r;
  const double radial = norm_constant_2d(params, qn) * std::exp(-0.5 * u) * std::pow(r, abs_l) *
                        specfun::kummer_truncated(qn.n_radial, abs_l + 1.0, u);
  return radial * std::polar(1.0, qn.l * phi - energy_2d(params, qn) * t);
}

cplx eigenstate_2d_xy(const OscillatorParams& params, QuantumNumbers2D qn, double x1, double x2,
                      double t) {
  return eigenstate_2d(params, qn, std::hypot(x1, x2), std::atan2(x2, x1), t);
}

}  // namespace freewave::oscillator
