#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aclab/phase_field.hpp"
#include "aclab/potential.hpp"

namespace aclab {

/// Energy measure and discrepancy of one snapshot.
///
/// The gradient term uses the face-averaged squared difference, so the total
/// energy is exactly the Lyapunov functional of the explicit scheme.
struct DensitySnapshot {
  double time = 0.0;
  double eps = 0.0;
  /// e = eps |grad phi|^2 / 2 + W(phi) / eps.
  ScalarField energy;
  /// e / sigma.
  ScalarField normalized;
  /// xi = eps |grad phi|^2 / 2 - W(phi) / eps.
  ScalarField discrepancy;
  /// integrate(e) / sigma.
  double normalized_total = 0.0;
  /// integrate(|xi|) / sigma.
  double discrepancy_total = 0.0;
};

DensitySnapshot density_snapshot(const PhaseField& phase, const Potential& potential);

/// Normalized total energy mu(all) without building the per-cell fields.
double normalized_energy(const PhaseField& phase, const Potential& potential);

struct BandOptions {
  double level = 0.95;
  /// Gradient floor as a fraction of Psi'(0) / eps.
  double floor_fraction = 0.1;
};

/// Normal, velocity and curvature on the interface band
/// {|phi| < level, |grad phi| > floor}. Stored sparsely, one entry per band cell.
struct InterfaceFields {
  bool empty = true;
  std::vector<std::size_t> cells;
  /// nu = -grad phi / |grad phi|, pointing out of {phi >= 0}.
  std::vector<Point> normal;
  /// V = d(phi)/dt / |grad phi|.
  std::vector<double> velocity;
  /// kappa = div(grad phi / |grad phi|), which approximates h . nu.
  std::vector<double> curvature;
  std::vector<double> grad_norm;
};

/// Band quantities of a snapshot; the rate is the PDE right-hand side stored
/// with the snapshot. An empty band yields a flagged empty result.
InterfaceFields interface_fields(const Snapshot& snapshot, const Potential& potential,
                                 const BandOptions& options = {});

struct DensityRatio {
  double radius = 0.0;
  /// mu(B_r(center)) / r^(n-1); absent when the ball was refused.
  std::optional<double> ratio;
  std::string refusal;
};

/// Density ratios for each radius. Radii below 2h and balls leaving the
/// domain are refused individually.
std::vector<DensityRatio> density_ratio(const DensitySnapshot& snapshot, const Point& center,
                                        const std::vector<double>& radii);
/// Same, from the normalized density field alone.
std::vector<DensityRatio> density_ratio(const ScalarField& normalized, const Point& center,
                                        const std::vector<double>& radii);

/// Median of the values (mean of the middle pair for even counts).
double median(std::vector<double> values);

}  // namespace aclab
