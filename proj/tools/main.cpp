// Copyright 2026 The insitu developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "insitu/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRunFailure = 1;
constexpr int kExitSpecError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw insitu::SpecError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CommonFlags {
  std::string spec_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int workers = 0;
  std::string format = "csv";
  bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_spec = true) {
  auto* spec = cmd->add_option("--spec", flags.spec_path, "experiment spec file");
  if (needs_spec) spec->required();
  cmd->add_option("--out", flags.out_dir, "output directory (overrides the spec)");
  cmd->add_option("--seed", flags.seed, "master seed (overrides the spec)");
  cmd->add_option("--workers", flags.workers,
                  "worker threads (0 = spec, then INSITU_WORKERS, then hardware)");
  cmd->add_option("--format", flags.format, "summary format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-timestamp", flags.no_timestamp,
                "omit the timestamp header for byte-identical artifacts");
}

int run_command(const CommonFlags& flags,
                std::optional<insitu::ExperimentKind> implied_kind) {
  const insitu::ExperimentSpec spec =
      insitu::parse_spec(read_file(flags.spec_path), implied_kind);
  insitu::RunOptions opt;
  opt.out_dir = flags.out_dir;
  opt.seed = flags.seed;
  opt.workers = flags.workers;
  opt.include_timestamp = !flags.no_timestamp;
  opt.format = flags.format;
  const insitu::RunArtifacts artifacts = insitu::run_experiment(spec, opt);
  for (const std::string& path : artifacts.paths) std::cout << path << "\n";
  if (artifacts.run_failed) {
    std::cerr << "run failed: " << artifacts.failure_reason << "\n";
    return kExitRunFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"in-situ control-pulse learning simulator"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string plot_input, plot_output;

  CLI::App* run = app.add_subcommand("run", "run the experiment named by the spec's kind");
  add_common(run, flags);
  CLI::App* trace = app.add_subcommand("trace", "single optimization run with per-iteration fidelities");
  add_common(trace, flags);
  CLI::App* psucc = app.add_subcommand("psucc", "success probability over seeded repeats");
  add_common(psucc, flags);
  CLI::App* anum = app.add_subcommand("anum-threshold", "measurement accuracy where p_succ crosses the target");
  add_common(anum, flags);
  CLI::App* cost = app.add_subcommand("cost", "run-count and wall-time decomposition");
  add_common(cost, flags);
  CLI::App* perturb = app.add_subcommand("perturb", "gate fidelity vs local estimator under random perturbations");
  add_common(perturb, flags);
  CLI::App* plot = app.add_subcommand("plot", "render an artifact CSV as an SVG line chart");
  plot->add_option("input", plot_input, "artifact CSV")->required();
  plot->add_option("--out", plot_output, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSpecError;
  }

  try {
    if (run->parsed()) return run_command(flags, std::nullopt);
    if (trace->parsed())
      return run_command(flags, insitu::ExperimentKind::fidelity_trace);
    if (psucc->parsed())
      return run_command(flags, insitu::ExperimentKind::psucc);
    if (anum->parsed())
      return run_command(flags, insitu::ExperimentKind::anum_scaling);
    if (cost->parsed()) {
      CommonFlags cost_flags = flags;
      if (cost_flags.format == "csv" && !cost->get_option("--format")->count())
        cost_flags.format = "json";  // cost is a summary; default to JSON
      return run_command(cost_flags, insitu::ExperimentKind::cost);
    }
    if (perturb->parsed())
      return run_command(flags, insitu::ExperimentKind::perturbation);
    if (plot->parsed()) {
      std::filesystem::path out = plot_output.empty()
          ? std::filesystem::path(plot_input).replace_extension(".svg")
          : std::filesystem::path(plot_output);
      insitu::plot_csv_to_svg(plot_input, out);
      std::cout << out.string() << "\n";
      return kExitOk;
    }
  } catch (const insitu::SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitSpecError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRunFailure;
  }
  return kExitSpecError;
}
