#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "aclab/phase_field.hpp"
#include "aclab/potential.hpp"

namespace aclab {

/// Largest explicit step: safety * min(h^2 / (4n), eps^2 / (2 max|W''|)).
/// For the quartic well the second term is eps^2 / 8.
double stable_dt(int dim, double eps, double h, double safety, double curvature_bound = 4.0);

struct EvolveOptions {
  double safety = 1.0;
  /// Record the energy after every step and keep the largest increase.
  bool monitor_energy = false;
  /// Write one ACF1 dump per snapshot into this directory.
  std::optional<std::filesystem::path> dump_dir;
  std::string dump_stem = "phase";
};

/// Forward-Euler integrator for d(phi)/dt = lap_h phi - W'(phi) / eps^2.
class AllenCahnSolver {
 public:
  explicit AllenCahnSolver(Potential potential = Potential()) : potential_(std::move(potential)) {}

  const Potential& potential() const { return potential_; }

  double stable_dt(const PhaseField& phase, double safety = 1.0) const;

  /// lap_h phi - W'(phi) / eps^2.
  ScalarField rhs(const PhaseField& phase) const;

  /// One explicit step. Refuses dt above stable_dt(phase, 1); throws
  /// std::runtime_error when the update produces a non-finite value.
  PhaseField step(const PhaseField& phase, double dt) const;

  /// Snapshots at start + k * snapshot_every up to t_end (and at t_end).
  /// Every interval is split into equal steps no larger than the stable step.
  PhaseTrajectory evolve(const PhaseField& initial, double t_end, double snapshot_every,
                         const EvolveOptions& options = {}) const;

 private:
  Potential potential_;
};

}  // namespace aclab
