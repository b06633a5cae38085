#pragma once

#include <optional>
#include <span>

#include "aclab/scalar_field.hpp"
#include "aclab/test_function.hpp"

namespace aclab {

/// Second-order central-difference gradient, one component per axis.
VectorField spatial_gradient(const ScalarField& f);

/// (2n+1)-point Laplacian.
ScalarField laplacian(const ScalarField& f);

/// Forward differences D+ f, one component per axis. On reflective axes the
/// last cell has zero forward difference (mirror ghost).
VectorField forward_gradient(const ScalarField& f);

/// Backward-difference divergence D- . g; applied to forward_gradient(f)
/// it reproduces laplacian(f).
ScalarField backward_divergence(std::span<const ScalarField> g);

/// sum_axes ((D+ f)^2 + (D- f)^2) / 2 per cell. Its integral equals the
/// face-based Dirichlet energy sum |D+ f|^2 h^n exactly.
ScalarField face_averaged_gradient_sq(const ScalarField& f);

/// Integration domain: the whole grid or the cells whose centers lie in a
/// closed ball. Balls must have radius at least 2h.
struct Region {
  std::optional<Point> ball_center;
  double ball_radius = 0.0;

  static Region all() { return {}; }
  static Region ball(const Point& c, double r) { return {c, r}; }
};

/// Midpoint rule sum f * h^n over the region.
double integrate(const ScalarField& f, const Region& region = Region::all());
/// Midpoint rule sum f * phi(., t) * h^n over the region.
double integrate(const ScalarField& f, const TestFunction& weight, double t,
                 const Region& region = Region::all());

}  // namespace aclab
