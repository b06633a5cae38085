// Acceptance suite: one PASS/FAIL line per criterion, driven by the bundled
// scenarios through the same entry point as the command-line tool.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aclab/potential.hpp"
#include "aclab/report.hpp"
#include "aclab/runner.hpp"

namespace fs = std::filesystem;
using aclab::ReportRow;
using aclab::VerificationReport;

namespace {

const fs::path kScenarios = ACLAB_SCENARIO_DIR;
const fs::path kWork = ACLAB_ACCEPTANCE_OUT;

struct Run {
  int status = -1;
  double seconds = 0.0;
  VerificationReport report;
  std::string csv;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run verify(const std::string& scenario, const std::string& tag, int threads) {
  const fs::path out = kWork / (scenario + "." + tag);
  fs::remove_all(out);
  aclab::RunOptions opts;
  opts.out = out;
  opts.threads = threads;
  std::ostringstream sink;
  Run run;
  const auto start = std::chrono::steady_clock::now();
  run.status = aclab::run_command("verify", kScenarios / (scenario + ".json"), opts, sink, std::cerr);
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (fs::exists(out / "report.csv")) {
    run.csv = slurp(out / "report.csv");
    run.report = VerificationReport::read_csv(out / "report.csv");
  }
  std::fprintf(stderr, "  %s (%s, %d thread%s): exit %d, %.1f s\n", scenario.c_str(), tag.c_str(),
               threads, threads == 1 ? "" : "s", run.status, run.seconds);
  return run;
}

std::vector<const ReportRow*> select(const Run& run, const std::string& check,
                                     std::optional<double> eps = std::nullopt) {
  std::vector<const ReportRow*> out;
  for (const auto& r : run.report.rows()) {
    if (r.check != check) continue;
    if (eps && !(r.epsilon && std::abs(*r.epsilon - *eps) < 1e-12)) continue;
    out.push_back(&r);
  }
  return out;
}

// Every selected row passes and at least one was found.
bool all_pass(const std::vector<const ReportRow*>& rows, std::string& detail) {
  if (rows.empty()) {
    detail += " [no rows]";
    return false;
  }
  bool ok = true;
  for (const auto* r : rows) {
    ok = ok && r->outcome.pass;
    detail += " " + r->scenario + "/" + r->check;
    if (r->epsilon) detail += "@" + aclab::format_number(*r->epsilon);
    detail += "=" + aclab::format_number(r->outcome.value) +
              (r->outcome.pass ? "" : "(fail)");
  }
  return ok;
}

struct Criterion {
  int id;
  std::string title;
  bool pass;
  std::string detail;
};

}  // namespace

int main() {
  fs::create_directories(kWork);
  std::vector<Criterion> results;
  auto record = [&](int id, std::string title, bool pass, std::string detail) {
    results.push_back({id, std::move(title), pass, std::move(detail)});
  };

  std::fprintf(stderr, "running bundled scenarios\n");
  const Run planar = verify("planar-profile-1d", "a", 1);
  const Run radius = verify("shrinking-circle-2d-radius", "a", 1);
  const Run truncated = verify("truncated-sphere-analytic", "a", 1);
  const Run sphere = verify("shrinking-sphere-3d-small", "a", 1);
  const Run circle = verify("shrinking-circle-2d", "a", 1);
  const std::vector<const Run*> pde{&planar, &radius, &sphere, &circle};

  {
    const double sigma = aclab::Potential().sigma();
    const bool ok = std::abs(sigma - 4.0 / 3.0) <= 1e-12;
    record(1, "sigma quadrature", ok,
           "sigma=" + aclab::format_number(sigma) + " |err|=" +
               aclab::format_number(std::abs(sigma - 4.0 / 3.0)));
  }
  {
    std::string d;
    bool ok = all_pass(select(planar, "profile_fidelity"), d);
    ok = all_pass(select(planar, "equipartition"), d) && ok;
    ok = ok && planar.seconds < 10.0;
    record(2, "planar profile fidelity", ok, d + " runtime=" + std::to_string(planar.seconds) + "s");
  }
  {
    std::string d;
    const bool ok = all_pass(select(radius, "radius_law", 0.02), d) && radius.seconds < 300.0;
    record(3, "radius law", ok, d + " runtime=" + std::to_string(radius.seconds) + "s");
  }
  {
    std::string d;
    bool ok = true;
    for (const Run* r : pde) ok = all_pass(select(*r, "energy_dissipation"), d) && ok;
    record(4, "energy dissipation", ok, d);
  }
  {
    std::string d;
    bool ok = all_pass(select(circle, "discrepancy_decay"), d);
    ok = all_pass(select(circle, "discrepancy_ratio"), d) && ok;
    record(5, "discrepancy vanishing", ok, d);
  }
  {
    std::string d;
    const bool ok = all_pass(select(circle, "brakke", 0.02), d);
    record(6, "Brakke inequality", ok, d);
  }
  {
    std::string d;
    bool ok = all_pass(select(circle, "bv_residual", 0.02), d);
    ok = all_pass(select(circle, "bv_convergence"), d) && ok;
    record(7, "volume-change formula", ok, d);
  }
  {
    std::string d;
    bool ok = all_pass(select(truncated, "bv_jump_detect"), d);
    ok = all_pass(select(truncated, "abscont_jump_detect"), d) && ok;
    record(8, "counterexample detection", ok, d);
  }
  {
    std::string d;
    bool ok = true;
    for (const Run* r : pde) ok = all_pass(select(*r, "spacetime_identity"), d) && ok;
    record(9, "space-time identity", ok, d);
  }
  {
    std::string d;
    bool ok = all_pass(select(circle, "geometric_identities"), d);
    ok = all_pass(select(circle, "coarea_mesh"), d) && ok;
    record(10, "co-area and slicing identities", ok, d);
  }
  {
    std::string d;
    const bool ok = all_pass(select(circle, "density_ratio"), d);
    record(11, "density ratio", ok, d);
  }
  {
    std::string d;
    bool ok = true;
    for (const Run* r : pde) {
      ok = all_pass(select(*r, "l2_flow"), d) && ok;
      ok = all_pass(select(*r, "l2_amplitude_invariance"), d) && ok;
    }
    record(12, "L2 flow bound", ok, d);
  }
  {
    std::string d;
    bool ok = all_pass(select(circle, "mfp_lsc"), d);
    ok = all_pass(select(circle, "mfp_pairing_gap"), d) && ok;
    record(13, "measure-function pairs", ok, d);
  }
  {
    std::fprintf(stderr, "determinism reruns\n");
    std::string d;
    bool ok = true;
    const std::vector<std::pair<std::string, const Run*>> cases{
        {"planar-profile-1d", &planar},
        {"truncated-sphere-analytic", &truncated},
        {"shrinking-circle-2d-radius", &radius}};
    for (const auto& [name, first] : cases) {
      const Run again = verify(name, "b", 1);
      const Run wide = verify(name, "c", 8);
      const bool same = !first->csv.empty() && first->csv == again.csv && first->csv == wide.csv;
      ok = ok && same;
      d += " " + name + (same ? "=identical" : "=differs");
    }
    record(14, "determinism", ok, d);
  }

  int failed = 0;
  for (const auto& c : results) {
    std::printf("criterion %2d %s: %s |%s\n", c.id, c.pass ? "PASS" : "FAIL", c.title.c_str(),
                c.detail.c_str());
    failed += c.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
