#include "aclab/scalar_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aclab {

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("ScalarField: " + std::to_string(values_.size()) +
                                " values for a grid of " + std::to_string(grid_.size()) + " cells");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("ScalarField: non-finite value at cell " + std::to_string(i));
    }
  }
}

ScalarField::ScalarField(Grid grid, double fill)
    : ScalarField(grid, std::vector<double>(grid.size(), fill)) {}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace aclab
