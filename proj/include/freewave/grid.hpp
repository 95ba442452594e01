#pragma once

#include <complex>
#include <vector>

namespace freewave {

using cplx = std::complex<double>;

// Uniform nodes y_i = y_min + i h, i = 0 .. count-1, h = (y_max - y_min) / (count - 1).
class Grid1D {
 public:
  // Throws PreconditionError unless y_min < y_max and count >= 3.
  Grid1D(double y_min, double y_max, int count);

  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  int count() const { return count_; }
  double spacing() const { return spacing_; }
  double node(int i) const { return y_min_ + i * spacing_; }

  // Same interval with the spacing halved; every old node is kept.
  Grid1D refined() const { return Grid1D(y_min_, y_max_, 2 * (count_ - 1) + 1); }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double y_min_;
  double y_max_;
  int count_;
  double spacing_;
};

// Tensor-product grid; values are stored row-major with axis 1 outermost,
// index = i1 * axis2.count() + i2.
struct Grid2D {
  Grid1D axis1;
  Grid1D axis2;

  std::size_t size() const {
    return static_cast<std::size_t>(axis1.count()) * static_cast<std::size_t>(axis2.count());
  }
  Grid2D refined() const { return {axis1.refined(), axis2.refined()}; }
};

struct ComplexField1D {
  Grid1D grid;
  std::vector<cplx> values;
  double time_label = 0.0;
};

}  // namespace freewave
