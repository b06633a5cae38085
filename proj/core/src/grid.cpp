#include "aclab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aclab {

Grid::Grid(int dim, std::vector<int> resolution, std::vector<double> extent,
           std::vector<Boundary> boundary, std::vector<double> origin)
    : dim_(dim),
      resolution_(std::move(resolution)),
      extent_(std::move(extent)),
      boundary_(std::move(boundary)),
      origin_(std::move(origin)) {
  if (dim_ < 1 || dim_ > 3) throw std::invalid_argument("Grid: dimension must be 1, 2 or 3");
  const auto n = static_cast<std::size_t>(dim_);
  if (origin_.empty()) origin_.assign(n, 0.0);
  if (resolution_.size() != n || extent_.size() != n || boundary_.size() != n ||
      origin_.size() != n) {
    throw std::invalid_argument("Grid: per-axis parameter count does not match dimension");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (resolution_[a] < kMinResolution) {
      throw std::invalid_argument("Grid: resolution " + std::to_string(resolution_[a]) +
                                  " below minimum " + std::to_string(kMinResolution));
    }
    if (!(extent_[a] > 0.0) || !std::isfinite(extent_[a])) {
      throw std::invalid_argument("Grid: extent must be positive and finite");
    }
    if (!std::isfinite(origin_[a])) throw std::invalid_argument("Grid: origin must be finite");
  }
  h_ = extent_[0] / resolution_[0];
  for (std::size_t a = 1; a < n; ++a) {
    const double ha = extent_[a] / resolution_[a];
    if (std::abs(ha - h_) > 1e-12 * h_) {
      throw std::invalid_argument("Grid: spacing must be identical on every axis");
    }
  }
  stride_.assign(n, 1);
  for (std::size_t a = n - 1; a > 0; --a) {
    stride_[a - 1] = stride_[a] * static_cast<std::size_t>(resolution_[a]);
  }
  size_ = stride_[0] * static_cast<std::size_t>(resolution_[0]);
  cell_volume_ = std::pow(h_, dim_);
}

Grid Grid::cube(int dim, int resolution, double extent, Boundary boundary, double origin) {
  const auto n = static_cast<std::size_t>(dim);
  return Grid(dim, std::vector<int>(n, resolution), std::vector<double>(n, extent),
              std::vector<Boundary>(n, boundary), std::vector<double>(n, origin));
}

double Grid::domain_volume() const {
  double v = 1.0;
  for (double e : extent_) v *= e;
  return v;
}

std::array<int, 3> Grid::index(std::size_t cell) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = 0; a < dim_; ++a) {
    const auto s = stride_[static_cast<std::size_t>(a)];
    idx[static_cast<std::size_t>(a)] = static_cast<int>(cell / s);
    cell %= s;
  }
  return idx;
}

std::size_t Grid::flat(const std::array<int, 3>& idx) const {
  std::size_t cell = 0;
  for (int a = 0; a < dim_; ++a) {
    cell += stride_[static_cast<std::size_t>(a)] * static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
  }
  return cell;
}

Point Grid::center(std::size_t cell) const {
  const auto idx = index(cell);
  Point p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    p[ua] = origin_[ua] + (idx[ua] + 0.5) * h_;
  }
  return p;
}

bool Grid::has_neighbor(std::size_t cell, int axis, int dir) const {
  const auto ua = static_cast<std::size_t>(axis);
  if (boundary_[ua] == Boundary::periodic) return true;
  const int i = static_cast<int>((cell / stride_[ua]) % static_cast<std::size_t>(resolution_[ua]));
  return dir > 0 ? i + 1 < resolution_[ua] : i > 0;
}

std::size_t Grid::neighbor(std::size_t cell, int axis, int dir) const {
  const auto ua = static_cast<std::size_t>(axis);
  const auto s = stride_[ua];
  const int n = resolution_[ua];
  const int i = static_cast<int>((cell / s) % static_cast<std::size_t>(n));
  int j = i + dir;
  if (j < 0 || j >= n) {
    if (boundary_[ua] == Boundary::reflective) return cell;
    j = (j + n) % n;
  }
  return cell + static_cast<std::size_t>(j) * s - static_cast<std::size_t>(i) * s;
}

bool Grid::contains_ball(const Point& c, double radius) const {
  for (int a = 0; a < dim_; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (c[ua] - radius <= origin_[ua] || c[ua] + radius >= origin_[ua] + extent_[ua]) return false;
  }
  return true;
}

bool Grid::same_shape(const Grid& other) const {
  return dim_ == other.dim_ && resolution_ == other.resolution_ && extent_ == other.extent_ &&
         origin_ == other.origin_ && boundary_ == other.boundary_;
}

}  // namespace aclab
