#include "freewave/specfun.hpp"

#include <stdexcept>

namespace freewave::specfun {

double hermite(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double kummer_truncated(int n, double b, double z) {
  if (n < 0) throw std::invalid_argument("kummer_truncated: negative n");
  if (!(b > 0.0)) throw std::invalid_argument("kummer_truncated: b must be positive");
  // Contiguous relation in the degree, F_k = 1F1(-k; b; z):
  //   (b + k) F_{k+1} = (2k + b - z) F_k - k F_{k-1}.
  // Summing the series directly cancels badly once z exceeds a few units.
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - z / b;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + b - z) * cur - k * prev) / (b + k);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace freewave::specfun
