#pragma once

// Numerical verification of lifted states: finite-difference residuals and
// their convergence order, a spectral free propagator used as an independent
// oracle, quadrature norms and expectations, and density-peak tracking.

#include <functional>
#include <utility>
#include <vector>

#include "freewave/grid.hpp"
#include "freewave/kernels.hpp"
#include "freewave/niederer.hpp"
#include "freewave/oscillator.hpp"

namespace freewave::analysis {

using kernels::ResidualNorms;

// u(y, time) in one dimension and u(y1, y2, time) in two.
using Evaluator1D = std::function<cplx(double, double)>;
using Evaluator2D = std::function<cplx(double, double, double)>;

struct ResidualReport {
  std::vector<double> spacings;  // strictly decreasing
  std::vector<double> linf_residuals;
  std::vector<double> l2_residuals;
  double fitted_order = 0.0;     // slope of log L-inf residual against log h
  double fitted_order_l2 = 0.0;
};

ComplexField1D sample_field(const Evaluator1D& u, const Grid1D& grid, double time);

// Residual of i u_tau + (1/2m) u_yy = 0 from centred differences of the
// closed form at tau - dt, tau, tau + dt. Throws PreconditionError for dt <= 0.
ResidualNorms free_residual_1d(const Evaluator1D& chi, const Grid1D& grid, double tau,
                               double mass, double dt);

// Residual of i u_t = -(1/2m) u_xx + (m omega^2 / 2) x^2 u.
ResidualNorms oscillator_residual_1d(const Evaluator1D& psi, const Grid1D& grid, double t,
                                     const OscillatorParams& params, double dt);

ResidualNorms free_residual_2d(const Evaluator2D& chi, const Grid2D& grid, double tau,
                               double mass, double dt);

// Least-squares slope of log(residual) against log(h). Needs at least two
// pairs with h strictly decreasing and every residual positive.
double convergence_order(const std::vector<std::pair<double, double>>& residual_pairs);

// Runs residual_at(grid, dt = h) on `levels` successively halved grids
// starting from `coarse` and fits the convergence order.
ResidualReport residual_study_1d(
    const std::function<ResidualNorms(const Grid1D&, double)>& residual_at, const Grid1D& coarse,
    int levels);
ResidualReport residual_study_2d(
    const std::function<ResidualNorms(const Grid2D&, double)>& residual_at, const Grid2D& coarse,
    int levels);

// Standard refinement studies (dt = h on every level) for the lifted states.
// 1D: auto-sized grid, coarse spacing 0.008 l_osc (2n + 1)^{-0.65}, so the
// finest of four levels stays above the round-off floor of the second
// difference for small n and below 1e-6 for n <= 5.
// 2D: square window of half-width (r_turn + 6 l_osc) s, coarse spacing 0.15 l_osc.
ResidualReport free_residual_study(const OscillatorParams& params, int n, double tau,
                                   int levels = 4);
ResidualReport oscillator_residual_study(const OscillatorParams& params, int n, double t,
                                         int levels = 4);
ResidualReport free_residual_study_2d(const OscillatorParams& params, QuantumNumbers2D qn,
                                      double tau, int levels = 4);

// Symmetric grid wide enough for the lifted n-th state at tau:
// half-width (x_turn + 10 l_osc) sqrt(1 + omega^2 tau^2).
Grid1D auto_grid_1d(const OscillatorParams& params, int n, double tau, int count);

// Square grid for the lifted 2D state: half-width (r_turn + 10 l_osc) s per axis.
Grid2D auto_grid_2d(const OscillatorParams& params, QuantumNumbers2D qn, double tau, int count);

// Simpson weights (3/8 rule on the last panel when the interval count is odd).
std::vector<double> simpson_weights(const Grid1D& grid);

double norm_1d(const ComplexField1D& field);
// Tensor-product Simpson quadrature of |u|^2 over a 2D grid (row-major values).
double norm_2d(const Grid2D& grid, std::span<const cplx> values);
// L2 distance between two fields on the same grid.
double l2_distance(const ComplexField1D& a, const ComplexField1D& b);

// <y> for a unit-norm field; throws PreconditionError when |norm - 1| > 1e-6.
double expectation_position(const ComplexField1D& field);

enum class SpectralMethod { direct, fast };

// Exact free evolution of periodised data: each discrete Fourier mode k is
// multiplied by exp(-i k^2 tau / 2m). Requires the data to have decayed at the
// boundary (|u| < 1e-10 max |u| at both ends), else PreconditionError. The fast
// method needs a power-of-two node count.
ComplexField1D spectral_propagate_free(const ComplexField1D& initial, double tau, double mass,
                                       SpectralMethod method = SpectralMethod::direct);

// Max over the grid of | |chi_n(y,tau)|^2 - s^{-1} rho_n(y/s) |, s = sqrt(1 + omega^2 tau^2).
double density_scaling_check(const OscillatorParams& params, int n, double tau, const Grid1D& grid);

struct PeakRecord {
  double tau = 0.0;
  std::vector<double> positions;  // strictly increasing, refined by a quadratic fit
  std::vector<double> heights;
  std::vector<double> fwhm;
};

// Strict interior maxima of |u|^2. Maxima lower than 1e-10 of the tallest one
// are treated as round-off in the tails and skipped. Throws PeakDetectionError
// when no maximum exists, when two maxima are closer than 3h, or when a half
// maximum crossing runs off the grid.
PeakRecord find_density_maxima(const ComplexField1D& field);
PeakRecord find_density_maxima(const Grid1D& grid, const std::vector<double>& density, double tau);

struct PeakLawReport {
  std::vector<PeakRecord> records;  // one per tau, on auto-sized grids
  double max_position_error = 0.0;  // relative, see peak_trajectory_check
  double max_fwhm_error = 0.0;      // relative
  int peak_count = 0;
};

// Tracks the density maxima of the lifted n-th state on auto-sized grids
// with `count` nodes and compares them with y_k(0) sqrt(1 + omega^2 tau^2).
// Position errors are relative to max(|expected|, l_osc s) so that a central
// peak at y = 0 is measured on the packet scale. FWHM errors are relative to
// fwhm_k(0) s. taus must contain 0; throws PeakDetectionError when the peak
// count changes between times.
PeakLawReport peak_trajectory_check(const OscillatorParams& params, int n,
                                    const std::vector<double>& taus, int count = 16001);

struct GapEntry {
  int n = 0;
  double outer_peak = 0.0;
  double turning_point = 0.0;
  double gap_ratio = 0.0;  // (x_turn - outer_peak) / x_turn
};

// Outermost density maximum of rho_n against the classical turning point.
// n_values must be increasing with every n >= 1.
std::vector<GapEntry> semiclassical_gap(const OscillatorParams& params,
                                        const std::vector<int>& n_values);

}  // namespace freewave::analysis
