// Serial vs OpenMP kernels on representative grid sizes.
// Usage: bench_kernels [repeats]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "freewave/analysis.hpp"
#include "freewave/kernels.hpp"
#include "freewave/niederer.hpp"

using namespace freewave;
namespace k = freewave::kernels;

namespace {

double best_of(int repeats, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %9.4f s   parallel %9.4f s   speedup %5.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, repeats: %d (best time reported)\n", k::max_threads(), repeats);

  const OscillatorParams p(1.0, 1.0);
  const niederer::LiftedState s1(p, QuantumNumbers1D(5));
  const auto f1 = [&](double y) { return s1(y, FreeTime{1.0}); };
  const Grid1D g1 = analysis::auto_grid_1d(p, 5, 1.0, 400001);
  report("sample_1d (400001)", best_of(repeats, [&] { k::serial::sample_1d(f1, g1); }),
         best_of(repeats, [&] { k::parallel::sample_1d(f1, g1); }));

  const niederer::LiftedState s2(p, QuantumNumbers2D(0, 2));
  const auto f2 = [&](double a, double b) {
    const double y[2] = {a, b};
    return s2(y, FreeTime{1.0});
  };
  const Grid2D g2 = analysis::auto_grid_2d(p, QuantumNumbers2D(0, 2), 1.0, 601);
  report("sample_2d (601^2)", best_of(repeats, [&] { k::serial::sample_2d(f2, g2); }),
         best_of(repeats, [&] { k::parallel::sample_2d(f2, g2); }));

  const auto u = k::serial::sample_1d(f1, g1);
  std::vector<double> v(g1.count());
  for (int i = 0; i < g1.count(); ++i) v[i] = 0.5 * g1.node(i) * g1.node(i);
  const k::TimeSlices slices{u, u, u};
  report("schrodinger_residual_1d",
         best_of(repeats, [&] { k::serial::schrodinger_residual_1d(slices, g1, 1e-3, 1.0, v); }),
         best_of(repeats, [&] { k::parallel::schrodinger_residual_1d(slices, g1, 1e-3, 1.0, v); }));

  const auto u2 = k::serial::sample_2d(f2, g2);
  const k::TimeSlices slices2{u2, u2, u2};
  report("free_residual_2d", best_of(repeats, [&] { k::serial::free_residual_2d(slices2, g2, 1e-3, 1.0); }),
         best_of(repeats, [&] { k::parallel::free_residual_2d(slices2, g2, 1e-3, 1.0); }));

  for (int n : {1024, 4096}) {
    std::vector<cplx> x(n);
    for (int i = 0; i < n; ++i) x[i] = cplx(std::sin(0.01 * i * i), std::cos(0.3 * i));
    const double ds = best_of(repeats, [&] { k::serial::dft(x, -1); });
    const double dp = best_of(repeats, [&] { k::parallel::dft(x, -1); });
    char name[64];
    std::snprintf(name, sizeof name, "dft (%d)", n);
    report(name, ds, dp);
    const double ff = best_of(repeats, [&] { k::fft_radix2(x, -1); });
    std::printf("%-28s %9.6f s   (%.0fx faster than the serial DFT)\n", "  fft_radix2", ff, ds / ff);
  }
  return 0;
}
