#include "freewave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "freewave/errors.hpp"

namespace freewave::analysis {
namespace {

void require_positive_dt(double dt) {
  if (!(dt > 0.0)) throw PreconditionError("residual: dt must be positive");
}

std::vector<double> densities(const std::vector<cplx>& values) {
  std::vector<double> d(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) d[i] = std::norm(values[i]);
  return d;
}

double turning_point(const OscillatorParams& params, int n) {
  return std::sqrt((2.0 * n + 1.0) / (params.mass() * params.omega()));
}

double half_max_crossing(const Grid1D& grid, const std::vector<double>& d, int peak, double half,
                         int direction) {
  int j = peak;
  while (j + direction >= 0 && j + direction < grid.count() && d[j] >= half) j += direction;
  if (d[j] >= half)
    throw PeakDetectionError("half-maximum crossing of the peak near y=" +
                             std::to_string(grid.node(peak)) + " runs off the grid");
  // Linear interpolation between node j (below half) and its inner neighbour.
  const int inner = j - direction;
  const double frac = (half - d[j]) / (d[inner] - d[j]);
  return grid.node(j) - direction * frac * grid.spacing();
}

}  // namespace

ComplexField1D sample_field(const Evaluator1D& u, const Grid1D& grid, double time) {
  auto values = kernels::parallel::sample_1d([&](double y) { return u(y, time); }, grid);
  return {grid, std::move(values), time};
}

ResidualNorms free_residual_1d(const Evaluator1D& chi, const Grid1D& grid, double tau,
                               double mass, double dt) {
  require_positive_dt(dt);
  const auto before = sample_field(chi, grid, tau - dt);
  const auto now = sample_field(chi, grid, tau);
  const auto after = sample_field(chi, grid, tau + dt);
  return kernels::parallel::schrodinger_residual_1d({before.values, now.values, after.values}, grid,
                                                    dt, mass, {});
}

ResidualNorms oscillator_residual_1d(const Evaluator1D& psi, const Grid1D& grid, double t,
                                     const OscillatorParams& params, double dt) {
  require_positive_dt(dt);
  const double w = params.omega();
  std::vector<double> potential(grid.count());
  for (int i = 0; i < grid.count(); ++i) {
    const double x = grid.node(i);
    potential[i] = 0.5 * params.mass() * w * w * x * x;
  }
  const auto before = sample_field(psi, grid, t - dt);
  const auto now = sample_field(psi, grid, t);
  const auto after = sample_field(psi, grid, t + dt);
  return kernels::parallel::schrodinger_residual_1d({before.values, now.values, after.values}, grid,
                                                    dt, params.mass(), potential);
}

ResidualNorms free_residual_2d(const Evaluator2D& chi, const Grid2D& grid, double tau,
                               double mass, double dt) {
  require_positive_dt(dt);
  const auto slice = [&](double time) {
    return kernels::parallel::sample_2d([&](double y1, double y2) { return chi(y1, y2, time); },
                                        grid);
  };
  const auto before = slice(tau - dt);
  const auto now = slice(tau);
  const auto after = slice(tau + dt);
  return kernels::parallel::free_residual_2d({before, now, after}, grid, dt, mass);
}

double convergence_order(const std::vector<std::pair<double, double>>& residual_pairs) {
  if (residual_pairs.size() < 2)
    throw PreconditionError("convergence_order: need at least two (h, residual) pairs");
  for (std::size_t i = 0; i < residual_pairs.size(); ++i) {
    const auto [h, r] = residual_pairs[i];
    if (!(r > 0.0) || !std::isfinite(r))
      throw PreconditionError("convergence_order: residuals must be positive and finite");
    if (!(h > 0.0)) throw PreconditionError("convergence_order: spacings must be positive");
    if (i > 0 && !(h < residual_pairs[i - 1].first))
      throw PreconditionError("convergence_order: spacings must be strictly decreasing");
  }
  const double count = static_cast<double>(residual_pairs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [h, r] : residual_pairs) {
    mean_x += std::log(h);
    mean_y += std::log(r);
  }
  mean_x /= count;
  mean_y /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [h, r] : residual_pairs) {
    const double dx = std::log(h) - mean_x;
    sxy += dx * (std::log(r) - mean_y);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

template <typename GridT>
ResidualReport residual_study(const std::function<ResidualNorms(const GridT&, double)>& residual_at,
                              GridT grid, int levels, double (*spacing)(const GridT&)) {
  if (levels < 2) throw PreconditionError("residual study: need at least two levels");
  ResidualReport report;
  for (int level = 0; level < levels; ++level) {
    const double h = spacing(grid);
    const auto norms = residual_at(grid, h);
    report.spacings.push_back(h);
    report.linf_residuals.push_back(norms.linf);
    report.l2_residuals.push_back(norms.l2);
    if (level + 1 < levels) grid = grid.refined();
  }
  std::vector<std::pair<double, double>> linf;
  std::vector<std::pair<double, double>> l2;
  for (std::size_t i = 0; i < report.spacings.size(); ++i) {
    linf.emplace_back(report.spacings[i], report.linf_residuals[i]);
    l2.emplace_back(report.spacings[i], report.l2_residuals[i]);
  }
  report.fitted_order = convergence_order(linf);
  report.fitted_order_l2 = convergence_order(l2);
  return report;
}

double spacing_1d(const Grid1D& g) { return g.spacing(); }
double spacing_2d(const Grid2D& g) { return std::max(g.axis1.spacing(), g.axis2.spacing()); }

}  // namespace

ResidualReport residual_study_1d(
    const std::function<ResidualNorms(const Grid1D&, double)>& residual_at, const Grid1D& coarse,
    int levels) {
  return residual_study<Grid1D>(residual_at, coarse, levels, &spacing_1d);
}

ResidualReport residual_study_2d(
    const std::function<ResidualNorms(const Grid2D&, double)>& residual_at, const Grid2D& coarse,
    int levels) {
  return residual_study<Grid2D>(residual_at, coarse, levels, &spacing_2d);
}

namespace {

Grid1D grid_with_spacing(double half_width, double spacing) {
  const int intervals = static_cast<int>(std::ceil(2.0 * half_width / spacing));
  return Grid1D(-half_width, half_width, intervals + 1);
}

double study_spacing_1d(const OscillatorParams& params, int n) {
  return 0.008 * params.length() * std::pow(2.0 * n + 1.0, -0.65);
}

}  // namespace

ResidualReport free_residual_study(const OscillatorParams& params, int n, double tau, int levels) {
  const niederer::LiftedState state(params, QuantumNumbers1D(n));
  const Evaluator1D chi = [&state](double y, double time) { return state(y, FreeTime{time}); };
  const double half_width = auto_grid_1d(params, n, tau, 3).y_max();
  return residual_study_1d(
      [&](const Grid1D& g, double dt) { return free_residual_1d(chi, g, tau, params.mass(), dt); },
      grid_with_spacing(half_width, study_spacing_1d(params, n)), levels);
}

ResidualReport oscillator_residual_study(const OscillatorParams& params, int n, double t,
                                         int levels) {
  const QuantumNumbers1D qn(n);
  const Evaluator1D psi = [&](double x, double time) {
    return oscillator::eigenstate_1d(params, qn, x, time);
  };
  const double half_width = auto_grid_1d(params, n, 0.0, 3).y_max();
  return residual_study_1d(
      [&](const Grid1D& g, double dt) { return oscillator_residual_1d(psi, g, t, params, dt); },
      grid_with_spacing(half_width, study_spacing_1d(params, n)), levels);
}

ResidualReport free_residual_study_2d(const OscillatorParams& params, QuantumNumbers2D qn,
                                      double tau, int levels) {
  const niederer::LiftedState state(params, qn);
  const Evaluator2D chi = [&state](double y1, double y2, double time) {
    const double y[2] = {y1, y2};
    return state(y, FreeTime{time});
  };
  const double r_turn = std::sqrt(2.0 * oscillator::energy_2d(params, qn) /
                                  (params.mass() * params.omega() * params.omega()));
  const double half_width =
      (r_turn + 6.0 * params.length()) * niederer::stretch(params, FreeTime{tau});
  const Grid1D axis = grid_with_spacing(half_width, 0.15 * params.length());
  return residual_study_2d(
      [&](const Grid2D& g, double dt) { return free_residual_2d(chi, g, tau, params.mass(), dt); },
      Grid2D{axis, axis}, levels);
}

Grid1D auto_grid_1d(const OscillatorParams& params, int n, double tau, int count) {
  const double half_width = (turning_point(params, n) + 10.0 * params.length()) *
                            niederer::stretch(params, FreeTime{tau});
  return Grid1D(-half_width, half_width, count);
}

Grid2D auto_grid_2d(const OscillatorParams& params, QuantumNumbers2D qn, double tau, int count) {
  const double r_turn = std::sqrt(2.0 * oscillator::energy_2d(params, qn) /
                                  (params.mass() * params.omega() * params.omega()));
  const double half_width =
      (r_turn + 10.0 * params.length()) * niederer::stretch(params, FreeTime{tau});
  const Grid1D axis(-half_width, half_width, count);
  return {axis, axis};
}

std::vector<double> simpson_weights(const Grid1D& grid) {
  const int n = grid.count();
  const double h = grid.spacing();
  std::vector<double> w(n, 0.0);
  const int intervals = n - 1;
  // Simpson panels over an even number of intervals, 3/8 rule over the last three if odd.
  const int simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  for (int i = 0; i < simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (simpson_end != intervals) {
    const int s = simpson_end;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

double norm_1d(const ComplexField1D& field) {
  const auto w = simpson_weights(field.grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * std::norm(field.values[i]);
  return sum;
}

double norm_2d(const Grid2D& grid, std::span<const cplx> values) {
  if (values.size() != grid.size()) throw PreconditionError("norm_2d: value count does not match the grid");
  const auto w1 = simpson_weights(grid.axis1);
  const auto w2 = simpson_weights(grid.axis2);
  const std::size_t n2 = w2.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < w1.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n2; ++j) row += w2[j] * std::norm(values[i * n2 + j]);
    sum += w1[i] * row;
  }
  return sum;
}

double l2_distance(const ComplexField1D& a, const ComplexField1D& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size())
    throw PreconditionError("l2_distance: fields live on different grids");
  const auto w = simpson_weights(a.grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * std::norm(a.values[i] - b.values[i]);
  return std::sqrt(sum);
}

double expectation_position(const ComplexField1D& field) {
  const double norm = norm_1d(field);
  if (std::abs(norm - 1.0) > 1e-6)
    throw PreconditionError("expectation_position: field norm " + std::to_string(norm) +
                            " differs from 1 by more than 1e-6");
  const auto w = simpson_weights(field.grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    sum += w[i] * field.grid.node(static_cast<int>(i)) * std::norm(field.values[i]);
  return sum;
}

ComplexField1D spectral_propagate_free(const ComplexField1D& initial, double tau, double mass,
                                       SpectralMethod method) {
  if (!(mass > 0.0)) throw PreconditionError("spectral_propagate_free: mass must be positive");
  const auto& v = initial.values;
  const std::size_t n = v.size();
  if (n != static_cast<std::size_t>(initial.grid.count()))
    throw PreconditionError("spectral_propagate_free: value count does not match the grid");
  double peak = 0.0;
  for (const cplx& c : v) peak = std::max(peak, std::abs(c));
  const double edge = std::max(std::abs(v.front()), std::abs(v.back()));
  if (!(edge < 1e-10 * peak))
    throw PreconditionError("spectral_propagate_free: data not decayed at the boundary (|u|=" +
                            std::to_string(edge) + ", max " + std::to_string(peak) + ")");
  if (tau == 0.0) return initial;

  const auto transform = [method](std::span<const cplx> x, int sign) {
    return method == SpectralMethod::fast ? kernels::fft_radix2(x, sign)
                                          : kernels::parallel::dft(x, sign);
  };
  auto modes = transform(v, -1);
  const double period = static_cast<double>(n) * initial.grid.spacing();
  for (std::size_t j = 0; j < n; ++j) {
    // Only k^2 enters, so the Nyquist mode's sign convention does not matter.
    const double index = j <= n / 2 ? static_cast<double>(j) : static_cast<double>(j) - n;
    const double k = 2.0 * std::numbers::pi * index / period;
    modes[j] *= std::polar(1.0 / static_cast<double>(n), -k * k * tau / (2.0 * mass));
  }
  return {initial.grid, transform(modes, +1), initial.time_label + tau};
}

double density_scaling_check(const OscillatorParams& params, int n, double tau, const Grid1D& grid) {
  const QuantumNumbers1D qn(n);
  const double s = niederer::stretch(params, FreeTime{tau});
  std::vector<double> deviation(grid.count());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.count(); ++i) {
    const double y = grid.node(i);
    const double lifted = std::norm(niederer::lifted_eigenstate_1d(params, qn, y, FreeTime{tau}));
    const double scaled = oscillator::density_1d(params, qn, y / s) / s;
    deviation[i] = std::abs(lifted - scaled);
  }
  return *std::max_element(deviation.begin(), deviation.end());
}

PeakRecord find_density_maxima(const Grid1D& grid, const std::vector<double>& d, double tau) {
  if (d.size() != static_cast<std::size_t>(grid.count()))
    throw PreconditionError("find_density_maxima: density size does not match the grid");
  const double global = *std::max_element(d.begin(), d.end());
  if (!(global > 0.0)) throw PeakDetectionError("find_density_maxima: density vanishes identically");
  const double floor = 1e-10 * global;

  std::vector<int> peaks;
  for (int i = 1; i + 1 < grid.count(); ++i) {
    if (d[i] > d[i - 1] && d[i] > d[i + 1] && d[i] >= floor) peaks.push_back(i);
  }
  if (peaks.empty()) throw PeakDetectionError("find_density_maxima: no interior maximum");
  for (std::size_t k = 1; k < peaks.size(); ++k) {
    if (peaks[k] - peaks[k - 1] < 3)
      throw PeakDetectionError("find_density_maxima: maxima near y=" +
                               std::to_string(grid.node(peaks[k])) +
                               " are closer than 3 grid spacings; refine the grid");
  }

  PeakRecord rec;
  rec.tau = tau;
  const double h = grid.spacing();
  for (int i : peaks) {
    const double left = d[i - 1];
    const double mid = d[i];
    const double right = d[i + 1];
    const double curvature = left - 2.0 * mid + right;  // < 0 at a strict maximum
    const double offset = 0.5 * (left - right) / curvature;
    const double height = mid - 0.25 * (left - right) * offset;
    rec.positions.push_back(grid.node(i) + offset * h);
    rec.heights.push_back(height);
    const double half = 0.5 * height;
    rec.fwhm.push_back(half_max_crossing(grid, d, i, half, +1) -
                       half_max_crossing(grid, d, i, half, -1));
  }
  return rec;
}

PeakRecord find_density_maxima(const ComplexField1D& field) {
  return find_density_maxima(field.grid, densities(field.values), field.time_label);
}

PeakLawReport peak_trajectory_check(const OscillatorParams& params, int n,
                                    const std::vector<double>& taus, int count) {
  if (std::find(taus.begin(), taus.end(), 0.0) == taus.end())
    throw PreconditionError("peak_trajectory_check: tau list must contain 0");
  const niederer::LiftedState state(params, QuantumNumbers1D(n));
  const Evaluator1D chi = [&state](double y, double tau) { return state(y, FreeTime{tau}); };

  PeakLawReport report;
  for (double tau : taus) {
    const auto grid = auto_grid_1d(params, n, tau, count);
    report.records.push_back(find_density_maxima(sample_field(chi, grid, tau)));
  }
  const auto ref = std::find_if(report.records.begin(), report.records.end(),
                                [](const PeakRecord& r) { return r.tau == 0.0; });
  report.peak_count = static_cast<int>(ref->positions.size());
  for (const auto& rec : report.records) {
    if (rec.positions.size() != ref->positions.size())
      throw PeakDetectionError("peak count changed from " + std::to_string(ref->positions.size()) +
                               " at tau=0 to " + std::to_string(rec.positions.size()) +
                               " at tau=" + std::to_string(rec.tau));
    const double s = niederer::stretch(params, FreeTime{rec.tau});
    for (std::size_t k = 0; k < rec.positions.size(); ++k) {
      const double expected = ref->positions[k] * s;
      const double scale = std::max(std::abs(expected), params.length() * s);
      report.max_position_error =
          std::max(report.max_position_error, std::abs(rec.positions[k] - expected) / scale);
      const double expected_width = ref->fwhm[k] * s;
      report.max_fwhm_error = std::max(report.max_fwhm_error,
                                       std::abs(rec.fwhm[k] - expected_width) / expected_width);
    }
  }
  return report;
}

std::vector<GapEntry> semiclassical_gap(const OscillatorParams& params,
                                        const std::vector<int>& n_values) {
  std::vector<GapEntry> out;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    const int n = n_values[i];
    if (n < 1) throw PreconditionError("semiclassical_gap: every n must be >= 1");
    if (i > 0 && n <= n_values[i - 1])
      throw PreconditionError("semiclassical_gap: n values must be increasing");
    const double x_turn = turning_point(params, n);
    // Maxima of rho_n are about pi / sqrt(2n) l_osc apart; 400 nodes per
    // oscillator length keep them far beyond the 3h separation limit.
    const double width = x_turn + 10.0 * params.length();
    const int count = static_cast<int>(std::ceil(400.0 * width / params.length())) + 1;
    const Grid1D grid(0.0, width, count);
    std::vector<double> rho(count);
    const QuantumNumbers1D qn(n);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < count; ++j) rho[j] = oscillator::density_1d(params, qn, grid.node(j));
    const auto peaks = find_density_maxima(grid, rho, 0.0);
    const double outer = peaks.positions.back();
    out.push_back({n, outer, x_turn, (x_turn - outer) / x_turn});
  }
  return out;
}

}  // namespace freewave::analysis
