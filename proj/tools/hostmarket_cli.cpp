// hostmarket: command-line front end for the listing-policy market model.
//
//   hostmarket solve    --scenario s.json [--out DIR] [--format csv|summary]
//   hostmarket simulate --scenario s.json [--seed N] [--runs K] [--jobs J]
//   hostmarket sweep    --scenario s.json [--jobs J]
//   hostmarket curves   --scenario s.json [--grid G]
//   hostmarket validate --scenario s.json
//
// Exit codes: 0 success, 2 validation error, 3 numeric/solver error.

#include "hostmarket/reports.hpp"
#include "hostmarket/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace hostmarket;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct CommonOptions {
  std::string scenario;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--scenario", opts.scenario, "Scenario file (JSON)")->required();
  cmd->add_option("--out", opts.out_dir, "Output directory for CSV files (default: current directory)");
  cmd->add_option("--seed", opts.seed, "Override the simulation seed");
  cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "summary"}));
}

fs::path output_dir(const CommonOptions& opts) {
  fs::path dir = opts.out_dir.empty() ? fs::current_path() : fs::path(opts.out_dir);
  fs::create_directories(dir);
  return dir;
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  writer(out);
  std::cout << "wrote " << path.string() << '\n';
}

// Summary goes to stdout, and also to DIR/summary.json when --out is given.
void emit_summary(const CommonOptions& opts, const std::string& json) {
  std::cout << json;
  if (!opts.out_dir.empty()) {
    std::ofstream out(output_dir(opts) / "summary.json", std::ios::binary);
    out << json;
  }
}

Scenario load(const CommonOptions& opts) {
  Scenario s = load_scenario(opts.scenario);
  if (opts.seed) {
    if (!s.abm) s.abm = ABMConfig{};
    s.abm->seed = *opts.seed;
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Listing-policy sorting equilibrium solver and tenant-sorting simulator"};
  app.require_subcommand(1);

  CommonOptions opts;
  int runs = 1;
  int jobs = 1;
  int grid = 101;

  auto* solve = app.add_subcommand("solve", "Solve the free-listing, sorting and planner regimes");
  add_common(solve, opts);
  auto* simulate = app.add_subcommand("simulate", "Run the agent-based sorting simulation");
  add_common(simulate, opts);
  simulate->add_option("--runs", runs, "Number of consecutive seeds to run")->check(CLI::PositiveNumber);
  simulate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* sweep = app.add_subcommand("sweep", "Comparative statics over the scenario's sweep block");
  add_common(sweep, opts);
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* curves = app.add_subcommand("curves", "Tenant utility by building type over theta");
  add_common(curves, opts);
  curves->add_option("--grid", grid, "Number of theta grid points (>= 2)");
  auto* validate_cmd = app.add_subcommand("validate", "Load and validate a scenario file");
  add_common(validate_cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    const Scenario scenario = load(opts);
    const bool summary = opts.format == "summary";

    if (validate_cmd->parsed()) {
      std::cout << "ok: scenario '" << scenario.name << "' is valid\n";
    } else if (solve->parsed()) {
      Scenario closed = scenario;
      closed.abm.reset();
      const ScenarioRun run = run_scenario(closed);
      if (summary) {
        emit_summary(opts, summary_json(closed, run));
      } else {
        write_file(output_dir(opts) / "equilibria.csv", [&](std::ostream& out) { write_equilibria_csv(out, run); });
      }
    } else if (simulate->parsed()) {
      if (!scenario.abm) throw ScenarioError("scenario '" + scenario.name + "' has no abm block");
      std::vector<std::uint64_t> seeds(static_cast<std::size_t>(runs));
      std::iota(seeds.begin(), seeds.end(), scenario.abm->seed);
      const auto results = run_batch(scenario.market, scenario.demand, scenario.supply, *scenario.abm, seeds, jobs);
      if (summary) {
        emit_summary(opts, summary_json(scenario, seeds, results));
      } else {
        const fs::path dir = output_dir(opts);
        for (std::size_t i = 0; i < results.size(); ++i) {
          write_file(dir / ("trajectory_" + std::to_string(seeds[i]) + ".csv"),
                     [&](std::ostream& out) { write_trajectory_csv(out, results[i]); });
        }
      }
    } else if (sweep->parsed()) {
      const SweepTable table = run_sweep(scenario, jobs);
      if (summary) {
        emit_summary(opts, summary_json(scenario, table));
      } else {
        write_file(output_dir(opts) / "sweep.csv", [&](std::ostream& out) { write_sweep_csv(out, table); });
      }
    } else if (curves->parsed()) {
      const auto points = emit_utility_curves(scenario, grid);
      if (summary) {
        emit_summary(opts, summary_json(scenario, points));
      } else {
        write_file(output_dir(opts) / "utility_curves.csv",
                   [&](std::ostream& out) { write_utility_curves_csv(out, points); });
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
