#include "freewave/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "freewave/errors.hpp"

namespace freewave::kernels {
namespace {

void check_slices(const TimeSlices& u, std::size_t n) {
  if (u.before.size() != n || u.now.size() != n || u.after.size() != n)
    throw PreconditionError("residual: time slices do not match the grid size");
}

void check_potential(std::span<const double> potential, std::size_t n) {
  if (!potential.empty() && potential.size() != n)
    throw PreconditionError("residual: potential does not match the grid size");
}

inline cplx residual_1d_at(const TimeSlices& u, std::size_t i, double inv_2dt, double kin,
                           std::span<const double> potential) {
  const cplx dt_term = cplx(0.0, 1.0) * (u.after[i] - u.before[i]) * inv_2dt;
  const cplx lap = u.now[i - 1] - 2.0 * u.now[i] + u.now[i + 1];
  cplx r = dt_term + kin * lap;
  if (!potential.empty()) r -= potential[i] * u.now[i];
  return r;
}

inline cplx residual_2d_at(const TimeSlices& u, std::size_t idx, std::size_t stride,
                           double inv_2dt, double kin1, double kin2) {
  const cplx dt_term = cplx(0.0, 1.0) * (u.after[idx] - u.before[idx]) * inv_2dt;
  const cplx c = u.now[idx];
  const cplx lap1 = u.now[idx - stride] - 2.0 * c + u.now[idx + stride];
  const cplx lap2 = u.now[idx - 1] - 2.0 * c + u.now[idx + 1];
  return dt_term + kin1 * lap1 + kin2 * lap2;
}

std::vector<cplx> twiddles(std::size_t n, int sign) {
  std::vector<cplx> w(n);
  for (std::size_t m = 0; m < n; ++m)
    w[m] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(m) / n);
  return w;
}

inline cplx dft_coefficient(std::span<const cplx> x, const std::vector<cplx>& w, std::size_t k) {
  const std::size_t n = x.size();
  cplx acc = 0.0;
  std::size_t m = 0;  // (j * k) mod n, advanced incrementally
  for (std::size_t j = 0; j < n; ++j) {
    acc += x[j] * w[m];
    m += k;
    if (m >= n) m -= n;
  }
  return acc;
}

void check_dft_input(std::span<const cplx> x, int sign) {
  if (x.empty()) throw PreconditionError("dft: empty input");
  if (sign != 1 && sign != -1) throw std::invalid_argument("dft: sign must be +1 or -1");
}

}  // namespace

namespace serial {

std::vector<cplx> sample_1d(const std::function<cplx(double)>& f, const Grid1D& grid) {
  std::vector<cplx> out(grid.count());
  for (int i = 0; i < grid.count(); ++i) out[i] = f(grid.node(i));
  return out;
}

std::vector<cplx> sample_2d(const std::function<cplx(double, double)>& f, const Grid2D& grid) {
  const int n1 = grid.axis1.count();
  const int n2 = grid.axis2.count();
  std::vector<cplx> out(grid.size());
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      out[static_cast<std::size_t>(i) * n2 + j] = f(grid.axis1.node(i), grid.axis2.node(j));
  return out;
}

ResidualNorms schrodinger_residual_1d(const TimeSlices& u, const Grid1D& grid, double dt,
                                      double mass, std::span<const double> potential) {
  const std::size_t n = grid.count();
  check_slices(u, n);
  check_potential(potential, n);
  const double h = grid.spacing();
  const double inv_2dt = 0.5 / dt;
  const double kin = 1.0 / (2.0 * mass * h * h);
  double linf = 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double a = std::abs(residual_1d_at(u, i, inv_2dt, kin, potential));
    linf = std::max(linf, a);
    sum += a * a;
  }
  return {linf, std::sqrt(h * sum)};
}

ResidualNorms free_residual_2d(const TimeSlices& u, const Grid2D& grid, double dt, double mass) {
  const std::size_t n1 = grid.axis1.count();
  const std::size_t n2 = grid.axis2.count();
  check_slices(u, grid.size());
  const double h1 = grid.axis1.spacing();
  const double h2 = grid.axis2.spacing();
  const double inv_2dt = 0.5 / dt;
  const double kin1 = 1.0 / (2.0 * mass * h1 * h1);
  const double kin2 = 1.0 / (2.0 * mass * h2 * h2);
  std::vector<double> row_max(n1, 0.0);
  std::vector<double> row_sum(n1, 0.0);
  for (std::size_t i = 1; i + 1 < n1; ++i) {
    double mx = 0.0;
    double s = 0.0;
    for (std::size_t j = 1; j + 1 < n2; ++j) {
      const double a = std::abs(residual_2d_at(u, i * n2 + j, n2, inv_2dt, kin1, kin2));
      mx = std::max(mx, a);
      s += a * a;
    }
    row_max[i] = mx;
    row_sum[i] = s;
  }
  double linf = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n1; ++i) {
    linf = std::max(linf, row_max[i]);
    sum += row_sum[i];
  }
  return {linf, std::sqrt(h1 * h2 * sum)};
}

std::vector<cplx> dft(std::span<const cplx> x, int sign) {
  check_dft_input(x, sign);
  const auto w = twiddles(x.size(), sign);
  std::vector<cplx> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = dft_coefficient(x, w, k);
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<cplx> sample_1d(const std::function<cplx(double)>& f, const Grid1D& grid) {
  const int n = grid.count();
  std::vector<cplx> out(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) out[i] = f(grid.node(i));
  return out;
}

std::vector<cplx> sample_2d(const std::function<cplx(double, double)>& f, const Grid2D& grid) {
  const int n1 = grid.axis1.count();
  const int n2 = grid.axis2.count();
  std::vector<cplx> out(grid.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n1; ++i) {
    const double y1 = grid.axis1.node(i);
    for (int j = 0; j < n2; ++j) out[static_cast<std::size_t>(i) * n2 + j] = f(y1, grid.axis2.node(j));
  }
  return out;
}

ResidualNorms schrodinger_residual_1d(const TimeSlices& u, const Grid1D& grid, double dt,
                                      double mass, std::span<const double> potential) {
  const std::size_t n = grid.count();
  check_slices(u, n);
  check_potential(potential, n);
  const double h = grid.spacing();
  const double inv_2dt = 0.5 / dt;
  const double kin = 1.0 / (2.0 * mass * h * h);
  std::vector<double> mag(n, 0.0);
  const long interior_end = static_cast<long>(n) - 1;
#pragma omp parallel for schedule(static)
  for (long i = 1; i < interior_end; ++i)
    mag[i] = std::abs(residual_1d_at(u, static_cast<std::size_t>(i), inv_2dt, kin, potential));
  double linf = 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    linf = std::max(linf, mag[i]);
    sum += mag[i] * mag[i];
  }
  return {linf, std::sqrt(h * sum)};
}

ResidualNorms free_residual_2d(const TimeSlices& u, const Grid2D& grid, double dt, double mass) {
  const std::size_t n1 = grid.axis1.count();
  const std::size_t n2 = grid.axis2.count();
  check_slices(u, grid.size());
  const double h1 = grid.axis1.spacing();
  const double h2 = grid.axis2.spacing();
  const double inv_2dt = 0.5 / dt;
  const double kin1 = 1.0 / (2.0 * mass * h1 * h1);
  const double kin2 = 1.0 / (2.0 * mass * h2 * h2);
  std::vector<double> row_max(n1, 0.0);
  std::vector<double> row_sum(n1, 0.0);
  const long rows_end = static_cast<long>(n1) - 1;
#pragma omp parallel for schedule(static)
  for (long ii = 1; ii < rows_end; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double mx = 0.0;
    double s = 0.0;
    for (std::size_t j = 1; j + 1 < n2; ++j) {
      const double a = std::abs(residual_2d_at(u, i * n2 + j, n2, inv_2dt, kin1, kin2));
      mx = std::max(mx, a);
      s += a * a;
    }
    row_max[i] = mx;
    row_sum[i] = s;
  }
  double linf = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n1; ++i) {
    linf = std::max(linf, row_max[i]);
    sum += row_sum[i];
  }
  return {linf, std::sqrt(h1 * h2 * sum)};
}

std::vector<cplx> dft(std::span<const cplx> x, int sign) {
  check_dft_input(x, sign);
  const auto w = twiddles(x.size(), sign);
  std::vector<cplx> out(x.size());
  const long n = static_cast<long>(x.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) out[k] = dft_coefficient(x, w, static_cast<std::size_t>(k));
  return out;
}

}  // namespace parallel

std::vector<cplx> fft_radix2(std::span<const cplx> x, int sign) {
  check_dft_input(x, sign);
  const std::size_t n = x.size();
  if ((n & (n - 1)) != 0) throw PreconditionError("fft_radix2: size must be a power of two");
  std::vector<cplx> a(x.begin(), x.end());
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        // Twiddles from polar() directly; the running product drifts for large n.
        const cplx w = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / len);
        const cplx even = a[start + k];
        const cplx odd = a[start + k + half] * w;
        a[start + k] = even + odd;
        a[start + k + half] = even - odd;
      }
    }
  }
  return a;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace freewave::kernels
