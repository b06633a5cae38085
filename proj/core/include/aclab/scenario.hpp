#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aclab/geometry.hpp"
#include "aclab/test_function.hpp"

namespace aclab {

/// Invalid or inconsistent scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CheckScope {
  per_epsilon,  ///< one row per eps
  sweep,        ///< one row per scenario from all eps levels
  flow,         ///< one row per scenario from analytic formulas only
};

struct CheckDefinition {
  std::string name;
  CheckScope scope;
  /// Parameter names with defaults; NaN means "derived from the scenario".
  std::vector<std::pair<std::string, double>> defaults;
  /// Name of the default test list, empty when the check takes none.
  std::string tests;
  bool needs_flow = false;
  bool needs_shape = false;
};

/// All known checks, in a fixed order.
const std::vector<CheckDefinition>& check_registry();
const CheckDefinition& find_check(const std::string& name);

struct CheckConfig {
  std::string name;
  std::map<std::string, double> params;
  std::string tests;
  /// Restricts a per-eps check to these eps values when nonempty.
  std::vector<double> only_epsilons;

  double param(const std::string& key) const;
  bool has(const std::string& key) const;
};

enum class Source { pde, analytic };

struct ScenarioConfig {
  std::string name;
  int dim = 2;
  std::vector<double> extent;
  std::vector<double> origin;
  /// Resolution at the reference eps (or for every eps with fixed scaling).
  std::vector<int> resolution;
  std::vector<Boundary> boundary;
  /// With matched scaling the resolution scales as reference_eps / eps, so eps / h is fixed.
  bool matched_scaling = false;
  double reference_eps = 0.0;

  Source source = Source::pde;
  std::optional<Shape> shape;
  std::optional<ReferenceFlow> flow;

  std::vector<double> epsilons;
  double safety = 1.0;
  std::optional<double> t_end;
  std::optional<long> steps;
  std::optional<double> snapshot_every;
  std::optional<int> snapshots;
  int workers = 1;
  bool monitor_energy = false;

  std::map<std::string, std::vector<TestFunction>> tests;
  std::vector<CheckConfig> checks;

  std::filesystem::path output;
  bool dump_fields = false;

  /// Grid for one eps of the sweep.
  Grid grid_for(double eps) const;
  const std::vector<TestFunction>& test_list(const std::string& name) const;
};

/// Parses and validates a JSON scenario. Throws ConfigError naming the
/// first violated constraint.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace aclab
