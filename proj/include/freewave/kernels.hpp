#pragma once

// Grid kernels in two flavours with identical signatures and semantics:
//
//   kernels::serial    plain loops; the reference implementation.
//   kernels::parallel  OpenMP work-sharing over grid nodes (or rows).
//
// Sums are accumulated per node or per row and reduced serially in a fixed
// order, so both flavours return bit-identical results for any thread count.

#include <functional>
#include <span>
#include <vector>

#include "freewave/grid.hpp"

namespace freewave::kernels {

struct ResidualNorms {
  double linf = 0.0;
  double l2 = 0.0;
};

// Three time slices of a field sampled at tau - dt, tau, tau + dt.
struct TimeSlices {
  std::span<const cplx> before;
  std::span<const cplx> now;
  std::span<const cplx> after;
};

namespace serial {

std::vector<cplx> sample_1d(const std::function<cplx(double)>& f, const Grid1D& grid);
std::vector<cplx> sample_2d(const std::function<cplx(double, double)>& f, const Grid2D& grid);

// R = i (u(tau+dt) - u(tau-dt)) / (2 dt) + (1/2m) D2 u - V u at interior nodes,
// D2 the three-point second difference. potential is empty (free) or one
// value per node. Returns max |R| and sqrt(h sum |R|^2).
ResidualNorms schrodinger_residual_1d(const TimeSlices& u, const Grid1D& grid, double dt,
                                      double mass, std::span<const double> potential);

// Free equation with the five-point Laplacian; L2 is sqrt(h1 h2 sum |R|^2).
ResidualNorms free_residual_2d(const TimeSlices& u, const Grid2D& grid, double dt, double mass);

// X_k = sum_j x_j exp(sign 2 pi i j k / N), direct O(N^2) evaluation.
std::vector<cplx> dft(std::span<const cplx> x, int sign);

}  // namespace serial

namespace parallel {

std::vector<cplx> sample_1d(const std::function<cplx(double)>& f, const Grid1D& grid);
std::vector<cplx> sample_2d(const std::function<cplx(double, double)>& f, const Grid2D& grid);
ResidualNorms schrodinger_residual_1d(const TimeSlices& u, const Grid1D& grid, double dt,
                                      double mass, std::span<const double> potential);
ResidualNorms free_residual_2d(const TimeSlices& u, const Grid2D& grid, double dt, double mass);
std::vector<cplx> dft(std::span<const cplx> x, int sign);

}  // namespace parallel

// Iterative radix-2 FFT with the same convention as dft(); x.size() must be
// a power of two.
std::vector<cplx> fft_radix2(std::span<const cplx> x, int sign);

// Number of threads the parallel kernels would use.
int max_threads();

}  // namespace freewave::kernels
