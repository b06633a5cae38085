#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "aclab/phase_field.hpp"
#include "aclab/potential.hpp"

namespace aclab {

/// Constructive shape with a signed distance that is positive inside.
///
/// Primitive distances are exact. Union takes the max and intersection the
/// min of the operands, which is exact only while the operands' transition
/// bands do not meet; prepare_initial_data refuses shapes where they do.
class Shape {
 public:
  static Shape ball(const Point& center, double radius);
  /// {x : (x - point) . normal <= 0}; `normal` points out of the shape.
  static Shape half_space(const Point& point, const Point& normal);
  /// Axis-aligned box over the first `dim` axes.
  static Shape box(const Point& lo, const Point& hi, int dim);
  static Shape unite(Shape a, Shape b);
  static Shape intersect(Shape a, Shape b);
  static Shape complement(Shape a);

  double signed_distance(const Point& x) const;
  /// signed_distance passed through smooth_clamp(., level).
  double truncated_distance(const Point& x, double level) const;

  bool is_primitive() const;

  /// Throws std::invalid_argument when sampled distances on the grid are
  /// not 1-Lipschitz, or when the operands of a union come within `band` of
  /// their interfaces at the same cell.
  void check_regular(const Grid& grid, double band) const;

  struct Node;

 private:
  explicit Shape(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Identity on [-level/2, level/2], then a C^2 tanh saturation towards
/// +-level. |smooth_clamp(d, level)| < level everywhere.
double smooth_clamp(double d, double level);

/// Exact sphere flows used as references.
struct ReferenceFlow {
  enum class Kind { smooth_sphere, truncated_sphere };

  Kind kind = Kind::smooth_sphere;
  double r0 = 1.0;
  int dim = 2;
  /// Time at which the truncated sphere vanishes.
  double t_cut = 0.0;
  Point center{0.0, 0.0, 0.0};

  /// Throws when the parameters do not describe a valid flow.
  void validate() const;
  double extinction_time() const;
  /// Time at which the set becomes empty (t_cut for the truncated sphere).
  double vanishing_time() const;
};

/// Radius of E_t, 0 once the set is empty.
double exact_flow_radius(const ReferenceFlow& flow, double t);
/// d(radius)/dt = -(n - 1) / radius while the set is nonempty, else 0.
double exact_flow_radius_rate(const ReferenceFlow& flow, double t);

/// Well-prepared data phi0 = Psi(d~(x) / eps) with d~ the signed distance
/// clamped at 10 eps.
///
/// Refuses: eps < 2h; an interface closer than 10 eps to a periodic face;
/// an interface meeting a reflective face other than orthogonally; shapes
/// failing Shape::check_regular.
PhaseField prepare_initial_data(const Shape& shape, double eps, const Grid& grid,
                                const Potential& potential);

/// Profile Psi((r(t) - |x - c|) / eps) of a reference flow sampled at the
/// given times, with analytic rates. Empty sets give phi = -1.
PhaseTrajectory sample_reference_flow(const ReferenceFlow& flow, const Grid& grid, double eps,
                                      std::span<const double> times, const Potential& potential);

/// 1 where phi >= 0, else 0.
ScalarField phase_indicator(const PhaseField& phase);

struct VolumePerimeter {
  double volume = 0.0;
  /// (1/sigma) int sqrt(2W(phi)) |grad phi|.
  double perimeter_modica_mortola = 0.0;
  /// Measure of the extracted phi = 0 level set (point count in 1-D, curve
  /// length in 2-D, surface area in 3-D).
  double perimeter_contour = 0.0;
};

VolumePerimeter volume_and_perimeter(const PhaseField& phase, const Potential& potential);

/// Integral of `weight` over {phi_h >= 0}, where phi_h interpolates the cell
/// values linearly on the Kuhn simplices of the dual grid. The weight is
/// taken at each simplex centroid; dual cells that wrap around a periodic
/// face use unwrapped coordinates.
double interpolated_phase_integral(const PhaseField& phase,
                                   const std::function<double(const Point&)>& weight);

/// Level-set measure of {f = 0} by zero-crossing count (1-D), marching
/// squares (2-D) or marching tetrahedra (3-D).
double zero_level_set_measure(const ScalarField& f);

}  // namespace aclab
