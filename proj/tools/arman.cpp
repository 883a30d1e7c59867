// SPDX-License-Identifier: Apache-2.0
//
// arman: simulator and design-space-exploration front end for
// reconfigurable systolic-array accelerators.

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "arman/common.hpp"
#include "arman/dse.hpp"
#include "arman/energy.hpp"
#include "arman/reconfig.hpp"
#include "arman/report.hpp"
#include "arman/workload.hpp"

namespace {

namespace fs = std::filesystem;
using namespace arman;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

constexpr double kNonReconfigClockHz = 826e6;

struct CommonOpts {
  std::string out_dir = ".";
  std::string tech_path;
  bool fixed_clock = false;
  bool nonreconfig_clock = false;
  unsigned jobs = 0;
};

std::string timestamp(bool fixed) {
  if (fixed) return "fixed";
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::string resolve_tech_path(const CommonOpts& opts, bool required) {
  if (!opts.tech_path.empty()) return opts.tech_path;
  if (const char* env = std::getenv("ARMAN_TECH"); env && *env) return env;
  if (required) {
    throw ParseError("no tech parameter file: pass --tech or set ARMAN_TECH");
  }
  return {};
}

energy::TechParams load_tech(const std::string& path, bool nonreconfig) {
  energy::TechParams tech = energy::load_tech_params(path);
  if (nonreconfig) tech.clock_hz = kNonReconfigClockHz;
  return tech;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path.string());
  out << content;
  if (!out) throw IoError("cannot write output file: " + path.string());
}

timing::Dataflow parse_flow(const std::string& name) {
  if (auto flow = timing::dataflow_from_string(name)) return *flow;
  throw ParseError("unknown dataflow '" + name + "'; valid names: OS, WS, IS");
}

std::vector<timing::Dataflow> parse_flows(const std::vector<std::string>& names) {
  std::vector<timing::Dataflow> flows;
  for (const std::string& n : names) flows.push_back(parse_flow(n));
  return flows;
}

std::vector<fabric::Arrangement> parse_arrangements(
    const std::vector<std::string>& names) {
  std::vector<fabric::Arrangement> arrs;
  for (const std::string& n : names) {
    arrs.push_back(fabric::arrangement_from_string(n));
  }
  return arrs;
}

// Validated flag values for the subcommand that actually runs; filled
// during the usage-error phase, consumed during the input phase.
struct SimulateArgs {
  std::string topology;
  std::uint64_t rows = 64, cols = 64;
  std::string dataflow = "OS";
  timing::Dataflow flow = timing::Dataflow::OS;
};

struct SweepArgs {
  std::string topology;
  std::vector<std::uint64_t> bases{32, 64, 128, 256, 512};
  std::vector<std::string> dataflows{"OS", "WS", "IS"};
  std::vector<std::string> arrangements;
  std::vector<timing::Dataflow> flows;
  std::vector<fabric::Arrangement> arrs;
};

struct DseArgs {
  std::vector<std::string> models;
  double alpha = 0.30;
  std::vector<std::uint64_t> bases{32, 64, 128, 256, 512};
  std::vector<std::string> dataflows{"OS", "WS", "IS"};
  std::vector<timing::Dataflow> flows;
};

struct SelectArgs {
  std::string topology;
  std::string dataflow = "OS";
  timing::Dataflow flow = timing::Dataflow::OS;
  std::uint64_t base = 64;
  std::string objective = "cycles";
  reconfig::Objective obj = reconfig::Objective::cycles;
  std::string baseline = "2x2";
  fabric::Arrangement baseline_arr = fabric::Arrangement::a2x2;
};

struct SelectorsArgs {
  std::string arrangement;
  fabric::Arrangement arr = fabric::Arrangement::a1x1;
};

int run_simulate(const SimulateArgs& args, const CommonOpts& opts) {
  const workload::NetworkModel net = workload::parse_topology_csv(args.topology);
  const std::string tech_path = resolve_tech_path(opts, false);
  std::optional<energy::TechParams> tech;
  if (!tech_path.empty()) {
    tech = load_tech(tech_path, opts.nonreconfig_clock);
  }

  const fs::path out_dir(opts.out_dir);
  fs::create_directories(out_dir);
  const report::SimulateReport rep = report::simulate_report(
      net, timing::ArrayDims{args.rows, args.cols}, args.flow, tech,
      "manifest.json");

  std::vector<std::pair<std::string, std::string>> inputs{
      {"topology", args.topology}};
  if (!tech_path.empty()) inputs.emplace_back("tech", tech_path);
  const std::string manifest = report::manifest_json(
      "simulate", timestamp(opts.fixed_clock), inputs,
      {{"rows", std::to_string(args.rows)},
       {"cols", std::to_string(args.cols)},
       {"dataflow", args.dataflow},
       {"nonreconfig_clock", opts.nonreconfig_clock ? "true" : "false"}},
      {"simulate_layers.csv", "simulate_summary.json"});

  write_file(out_dir / "simulate_layers.csv", rep.csv);
  write_file(out_dir / "simulate_summary.json", rep.summary_json);
  write_file(out_dir / "manifest.json", manifest);
  return kExitOk;
}

int run_sweep(const SweepArgs& args, const CommonOpts& opts) {
  const workload::NetworkModel net = workload::parse_topology_csv(args.topology);
  const energy::TechParams tech =
      load_tech(resolve_tech_path(opts, true), opts.nonreconfig_clock);

  const std::vector<report::SweepRow> rows =
      report::run_sweep(net, args.bases, args.flows, args.arrs, tech, opts.jobs);

  const fs::path out_dir(opts.out_dir);
  fs::create_directories(out_dir);
  std::string bases_echo, flows_echo, arrs_echo;
  for (const auto b : args.bases) {
    if (!bases_echo.empty()) bases_echo += ",";
    bases_echo += std::to_string(b);
  }
  for (const auto& f : args.dataflows) {
    if (!flows_echo.empty()) flows_echo += ",";
    flows_echo += f;
  }
  for (const auto a : args.arrs) {
    if (!arrs_echo.empty()) arrs_echo += ",";
    arrs_echo += fabric::to_string(a);
  }
  const std::string manifest = report::manifest_json(
      "sweep", timestamp(opts.fixed_clock),
      {{"topology", args.topology}, {"tech", resolve_tech_path(opts, true)}},
      {{"bases", bases_echo},
       {"dataflows", flows_echo},
       {"arrangements", arrs_echo},
       {"nonreconfig_clock", opts.nonreconfig_clock ? "true" : "false"}},
      {"sweep.csv"});

  write_file(out_dir / "sweep.csv", report::sweep_csv(rows, "manifest.json"));
  write_file(out_dir / "manifest.json", manifest);
  return kExitOk;
}

int run_dse(const DseArgs& args, const CommonOpts& opts) {
  std::vector<workload::NetworkModel> models;
  for (const std::string& path : args.models) {
    models.push_back(workload::parse_topology_csv(path));
  }
  const energy::TechParams tech =
      load_tech(resolve_tech_path(opts, true), opts.nonreconfig_clock);

  const dse::DesignSpace space = dse::make_design_space(args.flows, args.bases, {});
  const dse::DseResult result =
      dse::run_dse(models, space, tech, args.alpha, opts.jobs);

  const fs::path out_dir(opts.out_dir);
  fs::create_directories(out_dir);
  std::vector<std::pair<std::string, std::string>> inputs;
  for (std::size_t i = 0; i < args.models.size(); ++i) {
    inputs.emplace_back("model." + std::to_string(i), args.models[i]);
  }
  inputs.emplace_back("tech", resolve_tech_path(opts, true));
  const std::string manifest = report::manifest_json(
      "dse", timestamp(opts.fixed_clock), inputs,
      {{"alpha", report::fmt_double(args.alpha)},
       {"nonreconfig_clock", opts.nonreconfig_clock ? "true" : "false"}},
      {"dse_points.csv", "dse_summary.json"});

  write_file(out_dir / "dse_points.csv", report::dse_csv(result, "manifest.json"));
  write_file(out_dir / "dse_summary.json",
             report::dse_json(result, "manifest.json"));
  write_file(out_dir / "manifest.json", manifest);
  return kExitOk;
}

int run_select(const SelectArgs& args, const CommonOpts& opts) {
  const workload::NetworkModel net = workload::parse_topology_csv(args.topology);
  const energy::TechParams tech =
      load_tech(resolve_tech_path(opts, true), opts.nonreconfig_clock);

  const reconfig::ReconfigDecision decision = reconfig::select_arrangement(
      net, dse::ArchConfig{args.flow, args.base}, tech, args.obj,
      args.baseline_arr);

  const fs::path out_dir(opts.out_dir);
  fs::create_directories(out_dir);
  const std::string manifest = report::manifest_json(
      "select", timestamp(opts.fixed_clock),
      {{"topology", args.topology}, {"tech", resolve_tech_path(opts, true)}},
      {{"dataflow", args.dataflow},
       {"base", std::to_string(args.base)},
       {"objective", args.objective},
       {"baseline", args.baseline},
       {"nonreconfig_clock", opts.nonreconfig_clock ? "true" : "false"}},
      {"decision.json"});

  write_file(out_dir / "decision.json",
             report::decision_json(decision, net.name, "manifest.json"));
  write_file(out_dir / "manifest.json", manifest);
  std::cout << fabric::to_string(decision.chosen) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Systolic-array accelerator simulator and DSE toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonOpts opts;
  SimulateArgs sim_args;
  SweepArgs sweep_args;
  DseArgs dse_args;
  SelectArgs select_args;
  SelectorsArgs selectors_args;

  auto add_common = [&](CLI::App* cmd, bool with_jobs) {
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--tech", opts.tech_path,
                    "Tech parameter file (default: $ARMAN_TECH)");
    cmd->add_flag("--fixed-clock", opts.fixed_clock,
                  "Write 'fixed' instead of a timestamp into the manifest");
    cmd->add_flag("--nonreconfig-clock", opts.nonreconfig_clock,
                  "Use the 826 MHz non-reconfigurable clock");
    if (with_jobs) {
      cmd->add_option("--jobs", opts.jobs,
                      "Parallel workers (0 = available parallelism)");
    }
  };

  CLI::App* sim = app.add_subcommand("simulate", "Per-layer timing on one array");
  sim->add_option("--topology", sim_args.topology, "Topology CSV")->required();
  sim->add_option("--rows", sim_args.rows, "Array rows");
  sim->add_option("--cols", sim_args.cols, "Array cols");
  sim->add_option("--dataflow", sim_args.dataflow, "OS, WS, or IS");
  add_common(sim, false);

  CLI::App* sweep = app.add_subcommand("sweep", "Metrics over the config grid");
  sweep->add_option("--topology", sweep_args.topology, "Topology CSV")->required();
  sweep->add_option("--bases", sweep_args.bases, "Base sizes");
  sweep->add_option("--dataflows", sweep_args.dataflows, "Dataflows");
  sweep->add_option("--arrangements", sweep_args.arrangements,
                    "Arrangements (default: all ten)");
  add_common(sweep, true);

  CLI::App* dse_cmd = app.add_subcommand("dse", "Architecture selection");
  dse_cmd->add_option("--models", dse_args.models, "Topology CSVs")->required();
  dse_cmd->add_option("--alpha", dse_args.alpha, "Pruning ratio in [0,1)");
  dse_cmd->add_option("--bases", dse_args.bases, "Base sizes");
  dse_cmd->add_option("--dataflows", dse_args.dataflows, "Dataflows");
  add_common(dse_cmd, true);

  CLI::App* select = app.add_subcommand("select", "Per-network arrangement pick");
  select->add_option("--topology", select_args.topology, "Topology CSV")->required();
  select->add_option("--dataflow", select_args.dataflow, "OS, WS, or IS");
  select->add_option("--base", select_args.base, "Base size");
  select->add_option("--objective", select_args.objective,
                     "cycles, power, energy, edp, or utilization");
  select->add_option("--baseline", select_args.baseline, "Baseline arrangement");
  add_common(select, false);

  CLI::App* selectors =
      app.add_subcommand("selectors", "Print an arrangement's selector string");
  selectors->add_option("arrangement", selectors_args.arrangement, "Arrangement")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  // Name-shaped flag values are validated before any file is touched;
  // failures here are usage errors.
  try {
    if (sim->parsed()) sim_args.flow = parse_flow(sim_args.dataflow);
    if (sweep->parsed()) {
      sweep_args.flows = parse_flows(sweep_args.dataflows);
      sweep_args.arrs = sweep_args.arrangements.empty()
                            ? std::vector<fabric::Arrangement>(
                                  fabric::kAllArrangements.begin(),
                                  fabric::kAllArrangements.end())
                            : parse_arrangements(sweep_args.arrangements);
      if (sweep_args.bases.empty()) throw ParseError("--bases must be non-empty");
    }
    if (dse_cmd->parsed()) {
      dse_args.flows = parse_flows(dse_args.dataflows);
      if (!(dse_args.alpha >= 0.0) || !(dse_args.alpha < 1.0)) {
        throw ParseError("--alpha must be in [0, 1)");
      }
      dse::make_design_space(dse_args.flows, dse_args.bases, {});
    }
    if (select->parsed()) {
      select_args.flow = parse_flow(select_args.dataflow);
      select_args.obj = reconfig::objective_from_string(select_args.objective);
      select_args.baseline_arr =
          fabric::arrangement_from_string(select_args.baseline);
    }
    if (selectors->parsed()) {
      selectors_args.arr =
          fabric::arrangement_from_string(selectors_args.arrangement);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (sim->parsed()) return run_simulate(sim_args, opts);
    if (sweep->parsed()) return run_sweep(sweep_args, opts);
    if (dse_cmd->parsed()) return run_dse(dse_args, opts);
    if (select->parsed()) return run_select(select_args, opts);
    if (selectors->parsed()) {
      std::cout << fabric::selector_config(selectors_args.arr).to_string()
                << "\n";
      return kExitOk;
    }
  } catch (const ConsistencyError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
