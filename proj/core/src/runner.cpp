#include "aclab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <ostream>
#include <sstream>

#include "aclab/checks.hpp"
#include "aclab/field_io.hpp"
#include "aclab/parallel.hpp"
#include "aclab/solver.hpp"

namespace aclab {

namespace {

std::string eps_tag(double eps) { return "eps_" + format_number(eps); }

std::filesystem::path output_dir(const ScenarioConfig& config, const RunOptions& options) {
  return options.out ? *options.out : config.output;
}

std::string grid_text(const Grid& g) {
  std::ostringstream s;
  for (int a = 0; a < g.dim(); ++a) s << (a ? "x" : "") << g.resolution(a);
  s << " h=" << format_number(g.spacing());
  return s.str();
}

void write_energy_log(const std::filesystem::path& path, const PhaseTrajectory& traj) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "time,energy\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << format_number(traj.time(k)) << ',' << format_number(traj.energy_log()[k]) << '\n';
  }
}

double ball_volume(int dim, double r) {
  switch (dim) {
    case 1: return 2.0 * r;
    case 2: return std::numbers::pi * r * r;
    default: return 4.0 / 3.0 * std::numbers::pi * r * r * r;
  }
}

// The BV checks take a single test function per row.
const TestFunction& single_test(const ScenarioConfig& config, const CheckConfig& check) {
  const auto& list = config.test_list(check.tests);
  if (list.size() != 1) {
    throw ConfigError("checks." + check.name + ": test list '" + check.tests + "' must hold one test");
  }
  return list.front();
}

double param_or(const CheckConfig& check, const std::string& key, double fallback) {
  return check.has(key) ? check.param(key) : fallback;
}

BlockProxyOptions block_options(const CheckConfig& check) {
  BlockProxyOptions o;
  o.block_cells = static_cast<int>(check.param("block_cells"));
  o.block_intervals = static_cast<int>(check.param("block_intervals"));
  o.delta = check.param("delta");
  o.eta = check.param("eta");
  return o;
}

class Evaluator {
 public:
  Evaluator(const ScenarioConfig& config, std::vector<std::unique_ptr<AnalyzedTrajectory>> analyses)
      : config_(config), analyses_(std::move(analyses)) {
    for (const auto& a : analyses_) sweep_.push_back(a.get());
  }

  void run(VerificationReport& report) const {
    for (const auto& check : config_.checks) {
      const auto& def = find_check(check.name);
      if (def.scope == CheckScope::per_epsilon) {
        for (std::size_t i = 0; i < analyses_.size(); ++i) {
          const double eps = config_.epsilons[i];
          if (!check.only_epsilons.empty() &&
              std::find(check.only_epsilons.begin(), check.only_epsilons.end(), eps) ==
                  check.only_epsilons.end()) {
            continue;
          }
          timed(report, check.name, eps, [&] { return per_epsilon(check, *analyses_[i]); });
        }
      } else if (def.scope == CheckScope::sweep) {
        timed(report, check.name, std::nullopt, [&] { return over_sweep(check); });
      } else {
        timed(report, check.name, std::nullopt, [&] { return over_flow(check); });
      }
    }
  }

 private:
  template <class F>
  void timed(VerificationReport& report, const std::string& name, std::optional<double> eps,
             F&& body) const {
    const auto start = std::chrono::steady_clock::now();
    CheckOutcome outcome = body();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report.add(ReportRow{config_.name, eps, name, std::move(outcome), elapsed.count()});
  }

  double t1(const CheckConfig& check, const AnalyzedTrajectory& a) const {
    return param_or(check, "t1", a.time(0));
  }
  double t2(const CheckConfig& check, const AnalyzedTrajectory& a) const {
    return param_or(check, "t2", a.time(a.size() - 1));
  }
  double end_time(const CheckConfig& check) const {
    const AnalyzedTrajectory& a = *analyses_.front();
    return param_or(check, "time", a.time(a.size() - 1));
  }

  CheckOutcome per_epsilon(const CheckConfig& check, const AnalyzedTrajectory& a) const {
    const std::string& n = check.name;
    if (n == "energy_dissipation") return energy_dissipation_check(a, check.param("slack"));
    if (n == "equipartition") return equipartition_check(a, check.param("tolerance"));
    if (n == "discrepancy_bound") return discrepancy_bound_check(a, check.param("fraction"));
    if (n == "profile_fidelity") return profile_fidelity_check(a, *config_.shape, check.param("tolerance"));
    if (n == "radius_law") {
      return radius_law_check(a, *config_.flow, param_or(check, "time", a.time(a.size() - 1)),
                              check.param("tolerance"));
    }
    if (n == "brakke") {
      return brakke_check(a, config_.test_list(check.tests), t1(check, a), t2(check, a),
                          check.param("fraction"));
    }
    if (n == "bv_residual") {
      return bv_residual_check(a, single_test(config_, check), t1(check, a), t2(check, a),
                               check.param("tolerance"), check.param("floor"));
    }
    if (n == "bv_jump_detect") {
      const TestFunction& test = single_test(config_, check);
      double expected = 0.0;
      if (check.has("expected")) {
        expected = check.param("expected");
      } else {
        // Volume of the set just before it vanishes, weighted by a test that is constant on it.
        const ReferenceFlow& flow = *config_.flow;
        const double r = exact_flow_radius(flow, std::nextafter(flow.vanishing_time(), 0.0));
        if (test.kind() != TestFunction::Kind::constant_on_window || test.window() ||
            test.radius() < r + std::hypot(test.center()[0] - flow.center[0],
                                           test.center()[1] - flow.center[1],
                                           test.center()[2] - flow.center[2])) {
          throw ConfigError("checks.bv_jump_detect: an automatic expected value needs a "
                            "time-independent test constant on the vanishing set");
        }
        expected = test.amplitude() * ball_volume(flow.dim, r);
      }
      return bv_jump_detect_check(a, test, t1(check, a), t2(check, a), expected,
                                  check.param("tolerance"));
    }
    if (n == "l2_flow") return l2_flow_check(a, config_.test_list(check.tests), check.param("slack"));
    if (n == "l2_amplitude_invariance") {
      return l2_amplitude_invariance_check(a, config_.test_list(check.tests), check.param("factor"),
                                           check.param("tolerance"));
    }
    if (n == "spacetime_identity") return spacetime_identity_check(a, check.param("tolerance"));
    if (n == "abscont_blocks") return abscont_blocks_check(a, block_options(check));
    if (n == "abscont_jump_detect") {
      const double probe = param_or(check, "time", config_.flow->vanishing_time());
      return abscont_jump_detect_check(a, block_options(check), probe, check.param("min_blocks"));
    }
    if (n == "density_ratio") {
      return density_ratio_check(a, check.param("t_min"), check.param("r_max"),
                                 static_cast<int>(check.param("radii")), check.param("bound"));
    }
    throw std::logic_error("no per-eps evaluator for " + n);
  }

  CheckOutcome over_sweep(const CheckConfig& check) const {
    const std::string& n = check.name;
    if (n == "discrepancy_decay") return discrepancy_decay_check(sweep_);
    if (n == "discrepancy_ratio") return discrepancy_ratio_check(sweep_, check.param("bound"));
    if (n == "bv_convergence") {
      const AnalyzedTrajectory& a = *analyses_.front();
      return bv_convergence_check(sweep_, single_test(config_, check), t1(check, a), t2(check, a),
                                  check.param("floor"));
    }
    if (n == "mfp_lsc" || n == "mfp_pairing_gap") {
      const double t = end_time(check);
      std::vector<MeasureFunctionPair> pairs;
      for (const auto* a : sweep_) pairs.push_back(velocity_pair(*a, a->trajectory().index_at(t)));
      const auto limit = sphere_pair(*config_.flow, t, static_cast<int>(check.param("samples")));
      if (n == "mfp_lsc") return mfp_lsc_check(pairs, limit, check.param("slack"), check.param("spread"));
      const auto& suite = config_.test_list(check.tests);
      auto outcome = mfp_pairing_gap_check(pairs, limit, suite, t);
      // Diagnostic: the same gaps with V kept down to |grad phi| = 1e-3 Psi'(0) / eps.
      std::vector<MeasureFunctionPair> wide;
      for (const auto* a : sweep_) {
        wide.push_back(velocity_pair(*a, a->trajectory().index_at(t), BandOptions{0.9995, 1e-3}));
      }
      const auto diag = mfp_pairing_gap_check(wide, limit, suite, t);
      outcome.details.emplace_back("wide_band.violations", diag.value);
      for (const auto& [key, value] : diag.details) outcome.details.emplace_back("wide_band." + key, value);
      return outcome;
    }
    throw std::logic_error("no sweep evaluator for " + n);
  }

  CheckOutcome over_flow(const CheckConfig& check) const {
    ReferenceFlow flow;
    flow.r0 = check.param("r0");
    flow.dim = static_cast<int>(check.param("dim"));
    flow.validate();
    if (check.name == "geometric_identities") {
      const double t_max = param_or(check, "t_max", 0.9 * flow.extinction_time());
      const int samples = static_cast<int>(check.param("samples"));
      if (samples < 2) throw ConfigError("checks.geometric_identities.samples: needs at least 2");
      std::vector<double> times;
      for (int i = 0; i < samples; ++i) times.push_back(t_max * i / (samples - 1));
      return geometric_identity_check(flow, times, check.param("tolerance"));
    }
    if (check.name == "coarea_mesh") {
      return coarea_mesh_check(flow, check.param("time"), check.param("size"), check.param("tolerance"));
    }
    throw std::logic_error("no flow evaluator for " + check.name);
  }

  const ScenarioConfig& config_;
  std::vector<std::unique_ptr<AnalyzedTrajectory>> analyses_;
  Sweep sweep_;
};

}  // namespace

Schedule schedule_for(const ScenarioConfig& config, double eps) {
  Schedule s;
  if (config.t_end) {
    s.t_end = *config.t_end;
  } else {
    const Grid g = config.grid_for(eps);
    const Potential potential;
    s.t_end = static_cast<double>(*config.steps) *
              stable_dt(g.dim(), eps, g.spacing(), config.safety, potential.curvature_bound());
  }
  s.snapshot_every = config.snapshot_every ? *config.snapshot_every : s.t_end / *config.snapshots;
  if (!(s.snapshot_every > 0.0)) throw ConfigError("snapshot cadence must be positive");
  return s;
}

std::shared_ptr<const PhaseTrajectory> run_trajectory(const ScenarioConfig& config, double eps,
                                                      int threads,
                                                      const std::optional<std::filesystem::path>& dump_dir) {
  ThreadCountScope scope(threads);
  const Grid grid = config.grid_for(eps);
  const Potential potential;
  const Schedule sched = schedule_for(config, eps);
  if (config.source == Source::analytic) {
    std::vector<double> times;
    const auto count = static_cast<long>(std::llround(sched.t_end / sched.snapshot_every));
    for (long k = 0; k <= count; ++k) times.push_back(std::min(sched.t_end, k * sched.snapshot_every));
    auto traj = std::make_shared<PhaseTrajectory>(
        sample_reference_flow(*config.flow, grid, eps, times, potential));
    if (dump_dir) {
      std::filesystem::create_directories(*dump_dir);
      for (std::size_t k = 0; k < traj->size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "phase_%05zu.acf", k);
        write_field_dump(*dump_dir / name, (*traj)[k].phase.field(), eps, traj->time(k));
      }
    }
    return traj;
  }
  const PhaseField initial = prepare_initial_data(*config.shape, eps, grid, potential);
  const AllenCahnSolver solver(potential);
  EvolveOptions opts;
  opts.safety = config.safety;
  opts.monitor_energy = config.monitor_energy;
  opts.dump_dir = dump_dir;
  return std::make_shared<PhaseTrajectory>(solver.evolve(initial, sched.t_end, sched.snapshot_every, opts));
}

std::vector<std::shared_ptr<const PhaseTrajectory>> run_sweep(const ScenarioConfig& config,
                                                              const RunOptions& options) {
  const auto root = output_dir(config, options);
  const bool dump = options.dump_fields || config.dump_fields;
  std::vector<std::shared_ptr<const PhaseTrajectory>> runs(config.epsilons.size());
  const auto workers = static_cast<std::size_t>(std::max(1, config.workers));
  for (std::size_t begin = 0; begin < runs.size(); begin += workers) {
    const std::size_t end = std::min(runs.size(), begin + workers);
    std::vector<std::future<std::shared_ptr<const PhaseTrajectory>>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      const double eps = config.epsilons[i];
      std::optional<std::filesystem::path> dir;
      if (dump) dir = root / eps_tag(eps);
      batch.push_back(std::async(end - begin > 1 ? std::launch::async : std::launch::deferred,
                                 [&config, eps, dir, &options] {
                                   return run_trajectory(config, eps, options.threads, dir);
                                 }));
    }
    for (std::size_t i = begin; i < end; ++i) runs[i] = batch[i - begin].get();
  }
  return runs;
}

VerificationReport evaluate_checks(const ScenarioConfig& config,
                                   const std::vector<std::shared_ptr<const PhaseTrajectory>>& runs,
                                   int threads) {
  ThreadCountScope scope(threads);
  std::vector<std::unique_ptr<AnalyzedTrajectory>> analyses;
  for (const auto& run : runs) analyses.push_back(std::make_unique<AnalyzedTrajectory>(run, Potential()));

  VerificationReport report;
  Evaluator(config, std::move(analyses)).run(report);
  report.sort();

  std::string eps_list;
  for (double e : config.epsilons) eps_list += (eps_list.empty() ? "" : " ") + format_number(e);
  report.add_metadata("scenario", config.name);
  report.add_metadata("epsilons", eps_list);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::string tag = eps_tag(config.epsilons[i]);
    report.add_metadata("grid." + tag, grid_text(runs[i]->grid()));
    report.add_metadata("scheme." + tag, runs[i]->scheme());
    report.add_metadata("dt." + tag, format_number(runs[i]->dt()));
    report.add_metadata("snapshots." + tag, std::to_string(runs[i]->size()));
  }
  report.add_metadata("stand_in_constants",
                      "l2_flow cap 2(mu_0 + dissipation) and the density ratio bound are computable "
                      "stand-ins for existential constants");
  return report;
}

VerificationReport verify_scenario(const ScenarioConfig& config, const RunOptions& options) {
  const auto runs = run_sweep(config, options);
  return evaluate_checks(config, runs, options.threads);
}

int run_command(const std::string& command, const std::filesystem::path& config_path,
                const RunOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const ScenarioConfig config = load_scenario(config_path);
    const auto root = output_dir(config, options);
    if (options.threads < 1) throw ConfigError("--threads must be positive");

    if (command == "simulate" || command == "sweep") {
      ScenarioConfig run_config = config;
      if (command == "simulate") run_config.epsilons.resize(1);
      RunOptions run_options = options;
      run_options.dump_fields = options.dump_fields || command == "simulate";
      const auto runs = run_sweep(run_config, run_options);
      for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto dir = root / eps_tag(run_config.epsilons[i]);
        std::filesystem::create_directories(dir);
        write_energy_log(dir / "energy.csv", *runs[i]);
        out << config.name << " eps=" << format_number(run_config.epsilons[i]) << ": "
            << runs[i]->size() << " snapshots to t=" << format_number(runs[i]->end_time()) << " in "
            << dir.string() << '\n';
      }
      return 0;
    }
    if (command == "verify") {
      const VerificationReport report = verify_scenario(config, options);
      report.write_files(root);
      report.write_summary(out);
      return report.all_pass() ? 0 : 1;
    }
    if (command == "report") {
      const auto path = root / "report.csv";
      if (!std::filesystem::exists(path)) throw ConfigError("no report at " + path.string());
      const VerificationReport report = VerificationReport::read_csv(path);
      report.write_summary(out);
      return report.all_pass() ? 0 : 1;
    }
    err << "unknown command '" << command << "'\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "refused: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace aclab
