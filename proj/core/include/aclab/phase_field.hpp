#pragma once

#include <string>
#include <vector>

#include "aclab/scalar_field.hpp"

namespace aclab {

/// One time snapshot of the phase variable at interface width eps.
class PhaseField {
 public:
  /// Allowed excursion outside [-1, 1].
  static constexpr double kOvershoot = 1e-3;

  PhaseField(ScalarField field, double eps, double time);

  const ScalarField& field() const { return field_; }
  const Grid& grid() const { return field_.grid(); }
  std::span<const double> values() const { return field_.values(); }
  double eps() const { return eps_; }
  double time() const { return time_; }

 private:
  ScalarField field_;
  double eps_;
  double time_;
};

/// A snapshot together with its instantaneous rate d(phi)/dt.
struct Snapshot {
  PhaseField phase;
  ScalarField rate;
};

/// Ordered snapshots of one run, with uniform eps and strictly increasing times.
class PhaseTrajectory {
 public:
  PhaseTrajectory(std::string scheme, double dt) : scheme_(std::move(scheme)), dt_(dt) {}

  void append(Snapshot snapshot, double normalized_energy);

  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  const Snapshot& operator[](std::size_t k) const { return snapshots_[k]; }
  std::size_t size() const { return snapshots_.size(); }
  const std::vector<double>& energy_log() const { return energy_; }

  const std::string& scheme() const { return scheme_; }
  double dt() const { return dt_; }
  double eps() const;
  const Grid& grid() const;
  double time(std::size_t k) const { return snapshots_[k].phase.time(); }
  double start_time() const { return time(0); }
  double end_time() const { return time(size() - 1); }
  /// Largest spacing between consecutive snapshot times.
  double max_cadence() const;
  /// Index of the snapshot at time t, matched within dt / 2 (or a relative
  /// 1e-9 of the time span for analytic trajectories with dt = 0).
  std::size_t index_at(double t) const;

  /// Largest per-step increase of the normalized energy seen by the solver,
  /// when it was monitored.
  double max_step_energy_increase = 0.0;
  bool step_energy_monitored = false;

 private:
  std::string scheme_;
  double dt_;
  std::vector<Snapshot> snapshots_;
  std::vector<double> energy_;
};

}  // namespace aclab
