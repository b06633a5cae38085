#include <gtest/gtest.h>

#include <cmath>

#include "aclab/geometry.hpp"
#include "aclab/measures.hpp"
#include "aclab/parallel.hpp"
#include "aclab/solver.hpp"
#include "support/oracles.hpp"

namespace {

using namespace aclab;

PhaseField uniform(const Grid& g, double value, double eps) { return PhaseField(ScalarField(g, value), eps, 0.0); }

TEST(StableDt, FollowsDiffusionAndReactionLimits) {
  EXPECT_DOUBLE_EQ(stable_dt(2, 0.02, 0.01, 1.0), 0.01 * 0.01 / 8.0);
  EXPECT_DOUBLE_EQ(stable_dt(1, 0.01, 0.01, 1.0), 0.01 * 0.01 / 8.0);
  EXPECT_DOUBLE_EQ(stable_dt(1, 0.01, 0.1, 0.5), 0.5 * 0.01 * 0.01 / 8.0);
  EXPECT_THROW(stable_dt(2, 0.02, 0.01, 0.0), std::invalid_argument);
  EXPECT_THROW(stable_dt(2, 0.02, 0.01, 1.5), std::invalid_argument);
}

TEST(Solver, RefusesUnstableStep) {
  const AllenCahnSolver solver;
  const Grid g = Grid::cube(2, 16, 1.0);
  const auto phase = uniform(g, 0.2, 0.2);
  const double dt = solver.stable_dt(phase);
  EXPECT_NO_THROW(solver.step(phase, dt));
  EXPECT_THROW(solver.step(phase, 1.01 * dt), std::invalid_argument);
}

TEST(Solver, UniformFieldFollowsReactionOde) {
  // A constant field has zero Laplacian, so phi' = -W'(phi) / eps^2.
  const AllenCahnSolver solver;
  const double eps = 0.1;
  const Grid g = Grid::cube(2, 32, 1.0);
  const double t_end = 0.02;
  const auto traj = solver.evolve(uniform(g, 0.3, eps), t_end, t_end);
  const double dt = traj.dt();
  const long steps = std::lround(t_end / dt);
  double euler = 0.3;
  for (long i = 0; i < steps; ++i) euler -= dt * oracle::quartic_prime(euler) / (eps * eps);
  const double exact = oracle::rk4([&](double y) { return -oracle::quartic_prime(y) / (eps * eps); }, 0.3, t_end, 20000);
  const double got = traj[traj.size() - 1].phase.values()[5];
  EXPECT_NEAR(got, euler, 1e-12);
  EXPECT_NEAR(got, exact, 50.0 * dt / (eps * eps) * std::abs(exact));
}

TEST(Solver, SnapshotsAtRequestedTimes) {
  const AllenCahnSolver solver;
  const Grid g = Grid::cube(1, 32, 1.0, Boundary::reflective);
  const auto traj = solver.evolve(uniform(g, 0.5, 0.1), 0.01, 0.004);
  ASSERT_EQ(traj.size(), 4u);
  EXPECT_DOUBLE_EQ(traj.time(1), 0.004);
  EXPECT_DOUBLE_EQ(traj.time(2), 0.008);
  EXPECT_DOUBLE_EQ(traj.time(3), 0.01);
  EXPECT_EQ(traj.scheme(), "forward-euler");
}

TEST(Solver, EnergyNeverIncreasesAndValuesStayBounded) {
  const AllenCahnSolver solver;
  const Potential pot;
  const Grid g = Grid::cube(2, 256, 1.0);
  const auto shape = Shape::unite(Shape::ball({0.25, 0.5, 0}, 0.1), Shape::ball({0.75, 0.5, 0}, 0.1));
  const auto phase = prepare_initial_data(shape, 0.012, g, pot);
  EvolveOptions opts;
  opts.monitor_energy = true;
  const auto traj = solver.evolve(phase, 0.004, 0.001, opts);
  EXPECT_TRUE(traj.step_energy_monitored);
  EXPECT_LE(traj.max_step_energy_increase, 1e-13);
  for (std::size_t k = 1; k < traj.size(); ++k) EXPECT_LE(traj.energy_log()[k], traj.energy_log()[k - 1]);
  for (double v : traj[traj.size() - 1].phase.values()) EXPECT_LE(std::abs(v), 1.0);
}

TEST(Solver, PlanarProfileIsNearlyStationary) {
  const AllenCahnSolver solver;
  const Potential pot;
  const Grid g = Grid::cube(1, 256, 1.0, Boundary::reflective);
  const auto phase = prepare_initial_data(Shape::half_space({0.5, 0, 0}, {1, 0, 0}), 0.05, g, pot);
  const auto rate = solver.rhs(phase);
  // The continuum profile solves the ODE; the discrete residual is O(h^2 / eps^4).
  EXPECT_LT(rate.max_abs(), 2.0);
  const auto next = solver.evolve(phase, 0.001, 0.001);
  double drift = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) drift = std::max(drift, std::abs(next[1].phase.values()[c] - phase.values()[c]));
  EXPECT_LT(drift, 1e-3);
}

TEST(Solver, ResultsIndependentOfThreadCount) {
  const AllenCahnSolver solver;
  const Potential pot;
  const Grid g = Grid::cube(3, 48, 2.0, Boundary::periodic, -1.0);
  const auto phase = prepare_initial_data(Shape::ball({0, 0, 0}, 0.1), 0.085, g, pot);
  std::vector<double> one, many;
  {
    ThreadCountScope s(1);
    const auto t = solver.evolve(phase, 0.001, 0.001);
    one.assign(t[1].phase.values().begin(), t[1].phase.values().end());
  }
  {
    ThreadCountScope s(8);
    const auto t = solver.evolve(phase, 0.001, 0.001);
    many.assign(t[1].phase.values().begin(), t[1].phase.values().end());
  }
  EXPECT_EQ(one, many);
}

}  // namespace
