#pragma once

#include <functional>

namespace freewave::quadrature {

struct Result {
  double value = 0.0;
  int intervals = 0;
};

// Composite 16-point Gauss-Legendre rule on [a, b] with the interval count
// doubled until two successive estimates differ by less than
// tol * max(1, |value|). Throws QuadratureError if that does not happen
// within max_intervals. a == b yields exactly 0.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_intervals = 1 << 14);

}  // namespace freewave::quadrature
