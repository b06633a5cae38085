#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace aclab {

/// A point in R^n, n <= 3. Unused trailing coordinates are zero.
using Point = std::array<double, 3>;

enum class Boundary { periodic, reflective };

/// Uniform isotropic cell-centered grid on the box origin + [0, extent].
///
/// Cells are stored row-major: axis 0 varies slowest. Reflective boundaries
/// mirror about the outer cell face (homogeneous Neumann).
class Grid {
 public:
  static constexpr int kMinResolution = 8;

  Grid(int dim, std::vector<int> resolution, std::vector<double> extent,
       std::vector<Boundary> boundary, std::vector<double> origin = {});

  /// Same resolution, extent, boundary and origin on every axis.
  static Grid cube(int dim, int resolution, double extent, Boundary boundary = Boundary::periodic,
                   double origin = 0.0);

  int dim() const { return dim_; }
  int resolution(int axis) const { return resolution_[static_cast<std::size_t>(axis)]; }
  double extent(int axis) const { return extent_[static_cast<std::size_t>(axis)]; }
  double origin(int axis) const { return origin_[static_cast<std::size_t>(axis)]; }
  Boundary boundary(int axis) const { return boundary_[static_cast<std::size_t>(axis)]; }
  double spacing() const { return h_; }
  double cell_volume() const { return cell_volume_; }
  double domain_volume() const;
  std::size_t size() const { return size_; }
  std::size_t stride(int axis) const { return stride_[static_cast<std::size_t>(axis)]; }

  std::array<int, 3> index(std::size_t cell) const;
  std::size_t flat(const std::array<int, 3>& idx) const;
  Point center(std::size_t cell) const;

  /// Neighbor of `cell` one step along `axis` in direction `dir` (+1 or -1).
  /// Periodic axes wrap; reflective axes return the cell itself at the edge.
  std::size_t neighbor(std::size_t cell, int axis, int dir) const;
  /// True when `cell` has a real neighbor in direction `dir` along `axis`.
  bool has_neighbor(std::size_t cell, int axis, int dir) const;

  /// True when the closed ball lies inside the box (not touching its faces).
  bool contains_ball(const Point& center, double radius) const;

  bool same_shape(const Grid& other) const;

 private:
  int dim_;
  std::vector<int> resolution_;
  std::vector<double> extent_;
  std::vector<Boundary> boundary_;
  std::vector<double> origin_;
  std::vector<std::size_t> stride_;
  double h_ = 0.0;
  double cell_volume_ = 0.0;
  std::size_t size_ = 0;
};

}  // namespace aclab
