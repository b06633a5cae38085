#pragma once

#include <span>
#include <vector>

#include "aclab/grid.hpp"
#include "aclab/parallel.hpp"

namespace aclab {

/// Cell values on a Grid. Immutable after construction; all values finite.
class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<double> values);
  ScalarField(Grid grid, double fill);

  /// Samples f(center) at every cell center.
  template <class F>
  static ScalarField sample(const Grid& grid, F&& f) {
    std::vector<double> v(grid.size());
    parallel_for(grid.size(), [&](std::size_t c) { v[c] = f(grid.center(c)); });
    return ScalarField(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t cell) const { return values_[cell]; }
  std::size_t size() const { return values_.size(); }

  double max_abs() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// One ScalarField per spatial axis.
using VectorField = std::vector<ScalarField>;

}  // namespace aclab
