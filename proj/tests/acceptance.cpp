// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "freewave/analysis.hpp"
#include "freewave/classical.hpp"
#include "freewave/errors.hpp"
#include "freewave/kernels.hpp"
#include "freewave/niederer.hpp"

using namespace freewave;
namespace an = freewave::analysis;

namespace {

// Pinned tolerances.
constexpr double kOrderLo = 1.8;
constexpr double kOrderHi = 2.2;
constexpr double kFinestResidual = 1e-6;
constexpr double kRoundTrip = 1e-12;
constexpr double kDensityScaling = 1e-12;
constexpr double kPeakPosition = 1e-6;
constexpr double kPeakWidth = 1e-4;
constexpr double kUnitarity1D = 1e-8;
constexpr double kUnitarity2D = 1e-7;
constexpr double kSpectral = 1e-6;
constexpr double kEhrenfestCurvature = 1e-6;
constexpr double kParityMean = 1e-10;
constexpr double kActionDefect = 1e-8;
constexpr double kEnvelopeExcess = 1e-10;

const OscillatorParams kUnit(1.0, 1.0);

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

an::Evaluator1D lifted(int n) {
  const niederer::LiftedState state(kUnit, QuantumNumbers1D(n));
  return [state](double y, double tau) { return state(y, FreeTime{tau}); };
}

bool order_ok(double p) { return p >= kOrderLo && p <= kOrderHi; }

Verdict free_residual() {
  Verdict v;
  double worst_linf = 0.0;
  double lo = 10.0;
  double hi = 0.0;
  for (int n : {0, 1, 2, 5})
    for (double tau : {0.5, 2.0}) {
      const auto r = an::free_residual_study(kUnit, n, tau, 4);
      lo = std::min(lo, r.fitted_order);
      hi = std::max(hi, r.fitted_order);
      worst_linf = std::max(worst_linf, r.linf_residuals.back());
      v.pass = v.pass && order_ok(r.fitted_order) && r.linf_residuals.back() < kFinestResidual;
    }
  v.detail = "order in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "], finest Linf " +
             fmt("%.3e", worst_linf);
  return v;
}

Verdict oscillator_residual() {
  Verdict v;
  double worst_linf = 0.0;
  double lo = 10.0;
  double hi = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const auto r = an::oscillator_residual_study(kUnit, n, 0.3, 4);
    lo = std::min(lo, r.fitted_order);
    hi = std::max(hi, r.fitted_order);
    worst_linf = std::max(worst_linf, r.linf_residuals.back());
    v.pass = v.pass && order_ok(r.fitted_order) && r.linf_residuals.back() < kFinestResidual;
  }
  v.detail = "order in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "], finest Linf " +
             fmt("%.3e", worst_linf);
  return v;
}

Verdict round_trip() {
  double worst = 0.0;
  const int points = 10000;
  for (int n = 0; n <= 5; ++n) {
    const auto psi = niederer::eigenstate_evaluator(kUnit, QuantumNumbers1D(n));
    const niederer::FreeEvaluator chi = [&](std::span<const double> y, double tau) {
      return niederer::lift_wavefunction(psi, kUnit, y, FreeTime{tau});
    };
    const double edge = 8.0 * std::sqrt(2.0 * n + 1.0);
    // 10^4 (x, t) points per state: 2000 positions times 5 times in |t| <= 1.4.
    for (double t : {-1.4, -0.7, 0.0, 0.7, 1.4})
      for (int i = 0; i < points / 5; ++i) {
        const double x = -edge + 2.0 * edge * i / (points / 5 - 1);
        const cplx back =
            niederer::pull_back_wavefunction(chi, kUnit, std::span<const double>(&x, 1), OscTime{t});
        worst = std::max(worst, std::abs(back - oscillator::eigenstate_1d(kUnit, QuantumNumbers1D(n), x, t)));
      }
  }
  return {worst < kRoundTrip, "max |pull_back(lift(psi)) - psi| " + fmt("%.3e", worst)};
}

Verdict density_scaling() {
  double worst = 0.0;
  for (int n = 0; n <= 10; ++n)
    for (double tau : {0.0, 1.0, 4.0, 10.0})
      worst = std::max(worst, an::density_scaling_check(kUnit, n, tau, an::auto_grid_1d(kUnit, n, tau, 4001)));
  return {worst < kDensityScaling, "max deviation " + fmt("%.3e", worst)};
}

Verdict peak_law() {
  bool counts = true;
  double pos = 0.0;
  double width = 0.0;
  for (int n : {1, 2, 5}) {
    const auto r = an::peak_trajectory_check(kUnit, n, {0.0, 1.0, 2.0}, 16001);
    for (const auto& rec : r.records)
      counts = counts && static_cast<int>(rec.positions.size()) == n + 1;
    pos = std::max(pos, r.max_position_error);
    width = std::max(width, r.max_fwhm_error);
  }
  return {counts && pos < kPeakPosition && width < kPeakWidth,
          std::string("n+1 peaks at every tau ") + (counts ? "yes" : "no") + ", position err " +
              fmt("%.3e", pos) + ", FWHM err " + fmt("%.3e", width)};
}

Verdict unitarity() {
  double worst1 = 0.0;
  for (int n = 0; n <= 10; ++n)
    for (double tau : {0.0, 3.0}) {
      const auto g = an::auto_grid_1d(kUnit, n, tau, 4001);
      worst1 = std::max(worst1, std::abs(an::norm_1d(an::sample_field(lifted(n), g, tau)) - 1.0));
    }
  double worst2 = 0.0;
  for (int l = 0; l <= 3; ++l)
    for (double tau : {0.0, 3.0}) {
      const QuantumNumbers2D qn(0, l);
      const auto g = an::auto_grid_2d(kUnit, qn, tau, 401);
      const auto values = kernels::parallel::sample_2d(
          [&](double a, double b) {
            const double y[2] = {a, b};
            return niederer::lifted_eigenstate_2d(kUnit, qn, y, FreeTime{tau});
          },
          g);
      worst2 = std::max(worst2, std::abs(an::norm_2d(g, values) - 1.0));
    }
  return {worst1 < kUnitarity1D && worst2 < kUnitarity2D,
          "1D |norm-1| " + fmt("%.3e", worst1) + ", 2D |norm-1| " + fmt("%.3e", worst2)};
}

Verdict spectral() {
  const auto chi = lifted(2);
  const auto g = an::auto_grid_1d(kUnit, 2, 1.0, 1024);
  const auto moved = an::spectral_propagate_free(an::sample_field(chi, g, 0.0), 1.0, 1.0);
  const double d = an::l2_distance(moved, an::sample_field(chi, g, 1.0));
  return {d < kSpectral, "L2 difference " + fmt("%.3e", d)};
}

Verdict ehrenfest() {
  const auto psi0 = lifted(0);
  const auto psi1 = lifted(1);
  const an::Evaluator1D mix = [&](double y, double tau) {
    return (psi0(y, tau) + psi1(y, tau)) / std::numbers::sqrt2;
  };
  const std::vector<double> taus = {0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> mean;
  for (double tau : taus)
    mean.push_back(an::expectation_position(an::sample_field(mix, an::auto_grid_1d(kUnit, 1, tau, 4001), tau)));
  double curvature = 0.0;
  for (std::size_t i = 1; i + 1 < mean.size(); ++i)
    curvature = std::max(curvature, std::abs(mean[i + 1] - 2.0 * mean[i] + mean[i - 1]));
  double parity = 0.0;
  for (int n = 0; n <= 5; ++n)
    for (double tau : taus)
      parity = std::max(parity, std::abs(an::expectation_position(
                                    an::sample_field(lifted(n), an::auto_grid_1d(kUnit, n, tau, 4001), tau))));
  return {curvature < kEhrenfestCurvature && parity < kParityMean,
          "second difference " + fmt("%.3e", curvature) + ", parity-state |<y>| " + fmt("%.3e", parity)};
}

Verdict action() {
  const auto fam = classical::TrajectoryFamily::for_eigenstate(kUnit, QuantumNumbers1D(2));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> time(-0.49 * std::numbers::pi, 0.49 * std::numbers::pi);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const classical::PhaseAngle alpha(angle(rng));
    const double t1 = time(rng);
    const double t2 = time(rng);
    worst = std::max(worst, classical::action_boundary_identity(fam, alpha, t1, t2).defect);
  }
  return {worst < kActionDefect, "max defect over 50 samples " + fmt("%.3e", worst)};
}

Verdict envelope() {
  const auto fam = classical::TrajectoryFamily::for_eigenstate(kUnit, QuantumNumbers1D(2));
  double excess = -1.0;
  int bad_touch = 0;
  for (int k = 0; k < 100; ++k) {
    const classical::PhaseAngle alpha(2.0 * std::numbers::pi * (k + 0.5) / 100.0);
    const auto c = classical::envelope_contact(fam, alpha, -10.0, 10.0, 20001, kEnvelopeExcess);
    excess = std::max(excess, c.max_excess);
    if (c.touches != 1 || !c.touch_at_tangency) ++bad_touch;
  }
  const auto e0 = classical::envelope(fam, FreeTime{0.0});
  const auto tp = classical::turning_points(fam);
  const bool exact = e0.y_plus == tp.y_plus && e0.y_minus == tp.y_minus;
  return {excess <= kEnvelopeExcess && bad_touch == 0 && exact,
          "max excess " + fmt("%.3e", excess) + ", angles without a single touch " +
              std::to_string(bad_touch) + ", envelope(0) == turning points " + (exact ? "yes" : "no")};
}

Verdict semiclassical() {
  const auto gaps = an::semiclassical_gap(kUnit, {5, 10, 20, 40, 60});
  bool ok = true;
  std::string d = "gap ratios";
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    ok = ok && gaps[i].gap_ratio > 0.0 && (i == 0 || gaps[i].gap_ratio < gaps[i - 1].gap_ratio);
    d += " " + std::to_string(gaps[i].n) + ":" + fmt("%.5f", gaps[i].gap_ratio);
  }
  return {ok, d};
}

Verdict aiello_residual() {
  Verdict v;
  std::string d = "order";
  for (int l : {0, 1, 2}) {
    const auto r = an::free_residual_study_2d(kUnit, QuantumNumbers2D(0, l), 0.5, 4);
    v.pass = v.pass && order_ok(r.fitted_order);
    d += " l=" + std::to_string(l) + ":" + fmt("%.4f", r.fitted_order);
  }
  v.detail = d;
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict cli_determinism() {
  const std::vector<std::string> gen = {"gen1d", "--n", "2", "--omega", "1", "--mass", "1", "--tau", "0,1,2",
                                        "--grid", "-20:20:2001", "--format", "csv"};
  const std::vector<std::string> env = {"envelope", "--energy-from-n", "2", "--tau", "-5:5:101"};
  const auto g1 = testing::run_cli(gen);
  const auto g2 = testing::run_cli(gen);
  const auto e1 = testing::run_cli(env);
  const auto e2 = testing::run_cli(env);
  const bool repeat = g1.code == 0 && e1.code == 0 && g1.out == g2.out && e1.out == e2.out;
  const std::string dir = FREEWAVE_GOLDEN_DIR;
  const bool golden_gen = g1.out == read_file(dir + "/gen1d_n2.csv");
  const bool golden_env = e1.out == read_file(dir + "/envelope_n2.csv");
  return {repeat && golden_gen && golden_env,
          std::string("repeat runs identical ") + (repeat ? "yes" : "no") + ", gen1d golden " +
              (golden_gen ? "match" : "MISMATCH") + ", envelope golden " + (golden_env ? "match" : "MISMATCH")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"free-equation residual", free_residual},
      {"oscillator-equation residual", oscillator_residual},
      {"round-trip identity", round_trip},
      {"density scaling", density_scaling},
      {"peak law", peak_law},
      {"unitarity", unitarity},
      {"spectral oracle", spectral},
      {"ehrenfest", ehrenfest},
      {"classical action identity", action},
      {"envelope", envelope},
      {"semiclassical gap", semiclassical},
      {"2D lifted state residual", aiello_residual},
      {"cli determinism", cli_determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("%s %2d %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", index, name.c_str(), v.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
