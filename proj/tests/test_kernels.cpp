#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "freewave/kernels.hpp"

using namespace freewave;
namespace k = freewave::kernels;

namespace {

cplx bump(double y, double t) {
  return std::exp(cplx(-0.5 * y * y, 0.3 * y - 0.7 * t + 0.1 * y * y * t));
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("serial and parallel sampling are identical") {
  const Grid1D g(-4, 4, 1001);
  const auto f = [](double y) { return bump(y, 0.2); };
  CHECK(k::serial::sample_1d(f, g) == k::parallel::sample_1d(f, g));
  const Grid2D g2{Grid1D(-3, 3, 81), Grid1D(-2, 2, 61)};
  const auto f2 = [](double a, double b) { return bump(a, b); };
  const auto s = k::serial::sample_2d(f2, g2);
  CHECK(s == k::parallel::sample_2d(f2, g2));
  CHECK(s.size() == g2.size());
  // row-major, axis 1 outermost
  CHECK(s[5 * 61 + 7] == bump(g2.axis1.node(5), g2.axis2.node(7)));
}

TEST_CASE("serial and parallel residuals are identical") {
  const Grid1D g(-5, 5, 2001);
  const double dt = 1e-3;
  const auto at = [&](double t) { return k::serial::sample_1d([&](double y) { return bump(y, t); }, g); };
  const auto b = at(-dt);
  const auto n = at(0);
  const auto a = at(dt);
  std::vector<double> v(g.count());
  for (int i = 0; i < g.count(); ++i) v[i] = 0.5 * g.node(i) * g.node(i);
  for (const auto& pot : {std::vector<double>{}, v}) {
    const auto rs = k::serial::schrodinger_residual_1d({b, n, a}, g, dt, 1.3, pot);
    const auto rp = k::parallel::schrodinger_residual_1d({b, n, a}, g, dt, 1.3, pot);
    CHECK(rs.linf == rp.linf);
    CHECK(rs.l2 == rp.l2);
    CHECK(rs.linf > 0.0);
  }
  const Grid2D g2{Grid1D(-3, 3, 121), Grid1D(-3, 3, 121)};
  const auto at2 = [&](double t) {
    return k::serial::sample_2d([&](double x, double y) { return bump(x, t) * bump(y, t); }, g2);
  };
  const auto b2 = at2(-dt);
  const auto n2 = at2(0);
  const auto a2 = at2(dt);
  const auto ss = k::serial::free_residual_2d({b2, n2, a2}, g2, dt, 0.8);
  const auto pp = k::parallel::free_residual_2d({b2, n2, a2}, g2, dt, 0.8);
  CHECK(ss.linf == pp.linf);
  CHECK(ss.l2 == pp.l2);
}

TEST_CASE("zero field has zero residual") {
  const Grid1D g(-1, 1, 11);
  const std::vector<cplx> z(g.count());
  const auto r = k::parallel::schrodinger_residual_1d({z, z, z}, g, 0.1, 1.0, {});
  CHECK(r.linf == 0.0);
  CHECK(r.l2 == 0.0);
  const Grid2D g2{g, g};
  const std::vector<cplx> z2(g2.size());
  CHECK(k::parallel::free_residual_2d({z2, z2, z2}, g2, 0.1, 1.0).linf == 0.0);
}

TEST_CASE("plane wave residual falls four-fold per halving") {
  const double kk = 2.0;
  const double m = 1.0;
  const auto wave = [&](double y, double t) { return std::polar(1.0, kk * y - kk * kk * t / (2 * m)); };
  double prev = 0.0;
  Grid1D g(-1, 1, 41);
  for (int level = 0; level < 4; ++level) {
    const double h = g.spacing();
    const auto slice = [&](double t) {
      return k::serial::sample_1d([&](double y) { return wave(y, t); }, g);
    };
    const auto b = slice(-h);
    const auto n = slice(0);
    const auto a = slice(h);
    const double r = k::serial::schrodinger_residual_1d({b, n, a}, g, h, m, {}).linf;
    if (level > 0) CHECK(prev / r == doctest::Approx(4.0).epsilon(0.02));
    prev = r;
    g = g.refined();
  }
}

TEST_CASE("dft: serial, parallel and fft agree") {
  std::vector<cplx> x(256);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = cplx(std::sin(0.1 * i * i), std::cos(0.37 * i));
  for (int sign : {-1, 1}) {
    const auto ds = k::serial::dft(x, sign);
    CHECK(ds == k::parallel::dft(x, sign));
    const auto f = k::fft_radix2(x, sign);
    double err = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(f[i] - ds[i]));
    CHECK(err < 1e-11);
  }
  // inverse up to 1/N
  const auto back = k::fft_radix2(k::fft_radix2(x, -1), 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(std::abs(back[i] / 256.0 - x[i]) < 1e-13);
}

TEST_CASE("dft of a single mode") {
  const int n = 16;
  std::vector<cplx> x(n);
  for (int j = 0; j < n; ++j) x[j] = std::polar(1.0, 2 * std::numbers::pi * 3 * j / n);
  const auto X = k::serial::dft(x, -1);
  for (int q = 0; q < n; ++q) CHECK(std::abs(X[q] - (q == 3 ? cplx(n) : cplx(0))) < 1e-12);
}

TEST_CASE("fft rejects non-power-of-two sizes") {
  std::vector<cplx> x(12);
  CHECK_THROWS(k::fft_radix2(x, 1));
}

TEST_CASE("thread count is positive") { CHECK(k::max_threads() >= 1); }

}
