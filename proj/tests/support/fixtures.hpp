#pragma once

// Small trajectories shared by the check tests. Each is built once per
// process.

#include <memory>

#include "aclab/geometry.hpp"
#include "aclab/solver.hpp"
#include "aclab/trajectory_analysis.hpp"

namespace fixture {

/// Circle r0 = 0.2 on a 64^2 periodic grid over [-0.7, 0.7]^2, eps = 0.05,
/// snapshots every 2e-4 up to 4e-3.
inline const aclab::AnalyzedTrajectory& small_circle() {
  static const aclab::AnalyzedTrajectory traj = [] {
    const aclab::Potential pot;
    const auto grid = aclab::Grid::cube(2, 64, 1.4, aclab::Boundary::periodic, -0.7);
    const auto phase = aclab::prepare_initial_data(aclab::Shape::ball({0, 0, 0}, 0.2), 0.05, grid, pot);
    auto run = std::make_shared<aclab::PhaseTrajectory>(aclab::AllenCahnSolver(pot).evolve(phase, 4e-3, 2e-4));
    return aclab::AnalyzedTrajectory(run, pot);
  }();
  return traj;
}

/// Planar front at x = 0.5 on a reflective 256-cell interval, eps = 0.05.
inline const aclab::AnalyzedTrajectory& planar() {
  static const aclab::AnalyzedTrajectory traj = [] {
    const aclab::Potential pot;
    const auto grid = aclab::Grid::cube(1, 256, 1.0, aclab::Boundary::reflective);
    const auto phase =
        aclab::prepare_initial_data(aclab::Shape::half_space({0.5, 0, 0}, {1, 0, 0}), 0.05, grid, pot);
    auto run = std::make_shared<aclab::PhaseTrajectory>(aclab::AllenCahnSolver(pot).evolve(phase, 2e-3, 1e-4));
    return aclab::AnalyzedTrajectory(run, pot);
  }();
  return traj;
}

inline aclab::ReferenceFlow circle_flow() {
  aclab::ReferenceFlow f;
  f.r0 = 0.2;
  f.dim = 2;
  return f;
}

}  // namespace fixture
