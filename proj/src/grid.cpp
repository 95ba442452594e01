#include "freewave/grid.hpp"

#include <cmath>
#include <string>

#include "freewave/errors.hpp"

namespace freewave {

Grid1D::Grid1D(double y_min, double y_max, int count)
    : y_min_(y_min), y_max_(y_max), count_(count), spacing_(0.0) {
  if (!std::isfinite(y_min) || !std::isfinite(y_max) || !(y_min < y_max))
    throw PreconditionError("Grid1D: need finite y_min < y_max");
  if (count < 3) throw PreconditionError("Grid1D: need at least 3 nodes, got " + std::to_string(count));
  spacing_ = (y_max - y_min) / (count - 1);
}

}  // namespace freewave
