#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "aclab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Allen-Cahn mean curvature flow lab"};
  app.require_subcommand(1, 1);

  std::string config;
  std::string out;
  int threads = 1;
  bool dump_fields = false;

  const char* commands[][2] = {
      {"simulate", "Evolve the first eps of the scenario; write dumps and an energy log"},
      {"sweep", "Run every eps of the scenario"},
      {"verify", "Run the sweep and write report.csv, report.json and report.timing.csv"},
      {"report", "Summarize an existing report.csv"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "Scenario JSON")->required();
    sub->add_option("--out", out, "Output directory (overrides the config)");
    sub->add_option("--threads", threads, "Cell-loop workers per run")->check(CLI::PositiveNumber);
    sub->add_flag("--dump-fields", dump_fields, "Write ACF1 dumps of every snapshot");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  aclab::RunOptions options;
  if (!out.empty()) options.out = out;
  options.threads = threads;
  options.dump_fields = dump_fields;
  const std::string command = app.get_subcommands().front()->get_name();
  return aclab::run_command(command, config, options, std::cout, std::cerr);
}
