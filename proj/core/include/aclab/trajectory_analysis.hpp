#pragma once

#include <memory>
#include <vector>

#include "aclab/measures.hpp"

namespace aclab {

/// Per-snapshot quantities shared by the checks.
struct SnapshotAnalysis {
  double time = 0.0;
  /// e / sigma per cell.
  ScalarField normalized;
  double normalized_total = 0.0;
  double discrepancy_total = 0.0;
  /// (1/sigma) integrate(eps (d phi/dt)^2).
  double dissipation = 0.0;
  /// h^n * #{phi >= 0}.
  double volume = 0.0;
  InterfaceFields band;
  /// sqrt(2 W(phi)) |grad phi| / sigma on the band cells, i.e. |grad w(phi)| / sigma.
  std::vector<double> boundary_density;
};

/// A trajectory together with its cached measures. Holds the trajectory
/// by shared ownership; the analysis is immutable once built.
class AnalyzedTrajectory {
 public:
  AnalyzedTrajectory(std::shared_ptr<const PhaseTrajectory> trajectory, Potential potential,
                     BandOptions band = {});

  const PhaseTrajectory& trajectory() const { return *trajectory_; }
  const Potential& potential() const { return potential_; }
  const Grid& grid() const { return trajectory_->grid(); }
  double eps() const { return trajectory_->eps(); }
  std::size_t size() const { return snapshots_.size(); }
  const SnapshotAnalysis& operator[](std::size_t k) const { return snapshots_[k]; }
  double time(std::size_t k) const { return snapshots_[k].time; }

  /// mu_0(all).
  double initial_energy() const { return snapshots_.front().normalized_total; }

  /// Snapshot indices [k1, k2] matching t1 < t2. Throws when the times are
  /// not snapshot times or the cadence exceeds (t2 - t1) / 20.
  std::pair<std::size_t, std::size_t> window(double t1, double t2) const;

  /// Trapezoid weights for snapshots k1..k2 (zero-based within the range).
  std::vector<double> trapezoid_weights(std::size_t k1, std::size_t k2) const;

 private:
  std::shared_ptr<const PhaseTrajectory> trajectory_;
  Potential potential_;
  std::vector<SnapshotAnalysis> snapshots_;
};

}  // namespace aclab
