#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aclab/report.hpp"
#include "aclab/scenario.hpp"
#include "aclab/trajectory_analysis.hpp"

namespace aclab {

/// Command-line overrides of a scenario.
struct RunOptions {
  std::optional<std::filesystem::path> out;
  /// Cell-loop workers per trajectory.
  int threads = 1;
  bool dump_fields = false;
};

/// Simulation horizon and snapshot cadence for one eps.
struct Schedule {
  double t_end = 0.0;
  double snapshot_every = 0.0;
};

Schedule schedule_for(const ScenarioConfig& config, double eps);

/// One trajectory of the scenario: a PDE run from the prepared initial data,
/// or samples of the analytic reference flow.
std::shared_ptr<const PhaseTrajectory> run_trajectory(
    const ScenarioConfig& config, double eps, int threads,
    const std::optional<std::filesystem::path>& dump_dir = std::nullopt);

/// One trajectory per eps, ordered like config.epsilons. At most
/// config.workers trajectories run at once.
std::vector<std::shared_ptr<const PhaseTrajectory>> run_sweep(const ScenarioConfig& config,
                                                              const RunOptions& options);

/// Runs the sweep and evaluates every configured check.
VerificationReport verify_scenario(const ScenarioConfig& config, const RunOptions& options);

/// Evaluates the configured checks on already computed trajectories.
VerificationReport evaluate_checks(const ScenarioConfig& config,
                                   const std::vector<std::shared_ptr<const PhaseTrajectory>>& runs,
                                   int threads);

/// Dispatches simulate | sweep | verify | report. Returns the exit status:
/// 0 pass, 1 check failure, 2 configuration or IO error.
int run_command(const std::string& command, const std::filesystem::path& config_path,
                const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace aclab
