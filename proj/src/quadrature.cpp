#include "freewave/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "freewave/errors.hpp"

namespace freewave::quadrature {
namespace {

constexpr int kOrder = 16;

struct Rule {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};
};

// Legendre roots by Newton iteration from the Chebyshev-like initial guess.
Rule make_rule() {
  Rule rule;
  for (int i = 0; i < kOrder; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= kOrder; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

double composite(const std::function<double(double)>& f, double a, double b, int intervals) {
  const Rule& r = rule();
  const double width = (b - a) / intervals;
  double total = 0.0;
  for (int j = 0; j < intervals; ++j) {
    const double mid = a + (j + 0.5) * width;
    double part = 0.0;
    for (int i = 0; i < kOrder; ++i) part += r.weights[i] * f(mid + 0.5 * width * r.nodes[i]);
    total += 0.5 * width * part;
  }
  return total;
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int max_intervals) {
  if (a == b) return {0.0, 0};
  int intervals = 1;
  double previous = composite(f, a, b, intervals);
  while (intervals < max_intervals) {
    intervals *= 2;
    const double current = composite(f, a, b, intervals);
    if (std::abs(current - previous) <= tol * std::max(1.0, std::abs(current))) {
      return {current, intervals};
    }
    previous = current;
  }
  throw QuadratureError("quadrature did not converge on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "] with " + std::to_string(max_intervals) +
                        " intervals");
}

}  // namespace freewave::quadrature
