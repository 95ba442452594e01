#pragma once

// Polynomial special functions used by the oscillator eigenstates.
//
// Both functions are evaluated by forward recurrences. Absolute precision
// degrades for degrees beyond roughly 200 (intermediate values grow like
// (2x)^n); the rest of the library stays well below that.

namespace freewave::specfun {

// Physicists' Hermite polynomial H_n(x):
// H_0 = 1, H_1 = 2x, H_{k+1} = 2x H_k - 2k H_{k-1}.
double hermite(int n, double x);

// Terminating Kummer series 1F1(-n; b; z) = sum_{k=0}^{n} (-n)_k / (b)_k z^k / k!.
// Requires n >= 0 and b > 0.
double kummer_truncated(int n, double b, double z);

}  // namespace freewave::specfun
