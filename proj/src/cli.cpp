#include "leoplace/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <numbers>

#include "CLI11.hpp"
#include "leoplace/errors.hpp"
#include "leoplace/orbitsim.hpp"
#include "leoplace/presets.hpp"

namespace leoplace::cli {
namespace {

namespace fs = std::filesystem;

struct PlaceArgs {
  std::string shell;
  std::string slo;
  std::string out;
  std::string config;
};

struct SimulateArgs {
  std::string placement;
  std::string out;
  std::optional<double> duration_s;
  std::optional<double> step_s;
  std::string config;
  bool per_node = false;
  bool paper_scale = false;
  unsigned threads = 0;
  double phase_offset_deg = 0.0;
};

struct VerifyArgs {
  std::string ts;
  std::string slo;
  std::string nodes;
  std::string placement;
  double slack_km = 0.0;
};

// Error carrying its exit code.
struct Failure {
  ExitCode code;
  std::string message;
};

wplace::SloSpec parse_slo_arg(const std::string& text) {
  try {
    return wplace::parse_slo(text);
  } catch (const wplace::SloSyntaxError& e) {
    throw Failure{kUsage, e.what()};
  }
}

void write_or_fail(const fs::path& path, std::string_view text) {
  try {
    io::write_text(path, text);
  } catch (const std::ios_base::failure& e) {
    throw Failure{kOutputFile, e.what()};
  }
}

int cmd_shells(std::ostream& out) {
  out << std::left << std::setw(12) << "name" << std::right << std::setw(8)
      << "planes" << std::setw(10) << "sats" << std::setw(12) << "alt_km"
      << std::setw(10) << "incl_deg" << std::setw(8) << "nodes" << '\n';
  for (const ShellPreset& p : shell_presets()) {
    out << std::left << std::setw(12) << p.name << std::right << std::setw(8)
        << p.params.planes << std::setw(10) << p.params.sats_per_plane
        << std::setw(12) << p.params.altitude_km << std::setw(10)
        << p.params.inclination_deg << std::setw(8) << p.params.node_count()
        << '\n';
  }
  return kOk;
}

int cmd_place(const PlaceArgs& args, std::ostream& out) {
  const wplace::SloSpec slo = parse_slo_arg(args.slo);

  geom::ShellParams shell;
  geom::PhysicalConstants consts;
  std::string shell_name = args.shell;
  if (const auto preset = find_preset(args.shell)) {
    shell = preset->params;
  } else if (fs::is_regular_file(args.shell)) {
    const io::KeyValues kv = io::read_config(args.shell);
    shell = io::shell_from_config(kv);
    io::apply_constants(kv, consts);
    const auto it = kv.find("shell.preset");
    shell_name = it != kv.end() ? it->second : "custom";
  } else {
    throw Failure{kInputFile, "'" + args.shell +
                                  "' is neither a shell preset nor a config "
                                  "file (see `leoplace shells`)"};
  }
  if (!args.config.empty()) {
    io::apply_constants(io::read_config(args.config), consts);
  }

  const wplace::SloPlacement placement =
      wplace::placement_for_slo(shell, slo, consts);
  const io::PlacementFile file = io::make_placement_file(placement, shell_name);
  write_or_fail(args.out, io::format_placement(file));

  out << "shell: " << shell_name << " (" << shell.planes << "x"
      << shell.sats_per_plane << ")\n"
      << "slo: " << slo.to_string() << '\n'
      << "branch: " << file.branch << '\n'
      << "resources: " << file.resources.size() << '\n'
      << "epsilon_km: " << io::format_number(file.epsilon_km) << '\n'
      << "wrote: " << args.out << '\n';
  return kOk;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  const io::PlacementFile file = io::read_placement(args.placement);

  orbitsim::SimConfig sim = orbitsim::SimConfig::one_period(file.shell, file.constants);
  if (args.paper_scale) {
    sim.duration_s = 86400.0;
    sim.step_s = 1.0;
  }
  if (!args.config.empty()) io::apply_sim(io::read_config(args.config), sim);
  if (args.duration_s) sim.duration_s = *args.duration_s;
  if (args.step_s) sim.step_s = *args.step_s;
  sim.threads = args.threads;
  sim.keep_per_node = args.per_node;
  sim.plane_phase_offset_rad = args.phase_offset_deg * std::numbers::pi / 180.0;
  try {
    sim.validate();
  } catch (const DomainError& e) {
    throw Failure{kUsage, e.what()};
  }

  const orbitsim::TimeSeries ts =
      orbitsim::run_simulation(file.shell, file.constants, file.assignment, sim);
  write_or_fail(args.out, io::format_aggregate_csv(ts));
  out << "samples: " << ts.samples() << '\n'
      << "max_km: "
      << io::format_number(*std::max_element(ts.max_km.begin(), ts.max_km.end()))
      << '\n'
      << "wrote: " << args.out << '\n';
  if (args.per_node) {
    const fs::path nodes = io::per_node_path(args.out);
    write_or_fail(nodes, io::format_per_node_csv(ts));
    out << "wrote: " << nodes.string() << '\n';
  }
  return kOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const wplace::SloSpec slo = parse_slo_arg(args.slo);
  if (!slo.is_distance()) {
    throw Failure{kUsage,
                  "hop SLOs are a property of the placement; verify a "
                  "simulated series against max:<v> or mean:<v>"};
  }
  geom::PhysicalConstants consts;
  double slack = args.slack_km;
  if (!args.placement.empty()) {
    const io::PlacementFile file = io::read_placement(args.placement);
    consts = file.constants;
    slack = std::max(slack, file.epsilon_km);
  }

  const auto rows = io::parse_aggregate_csv(io::read_text(args.ts));
  std::optional<std::vector<io::NodeTimeMean>> nodes;
  fs::path nodes_path = args.nodes;
  if (nodes_path.empty() && slo.kind == wplace::SloKind::kMeanDistance) {
    nodes_path = io::per_node_path(args.ts);
  }
  if (!nodes_path.empty()) {
    if (!fs::is_regular_file(nodes_path)) {
      throw Failure{kInputFile, "mean SLO verification needs per-node data; '" +
                                    nodes_path.string() +
                                    "' not found (simulate with --per-node)"};
    }
    nodes = io::parse_per_node_csv(io::read_text(nodes_path));
  }

  const VerifyReport report = verify_series(rows, nodes, slo, consts, slack);
  out << "slo: " << slo.to_string() << '\n'
      << "limit_km: " << io::format_number(report.limit_km) << '\n'
      << "worst_km: " << io::format_number(report.worst_km) << " at "
      << report.where << '\n'
      << "margin_km: " << io::format_number(report.margin_km) << '\n'
      << (report.adherent ? "ADHERENT" : "VIOLATED") << '\n';
  return report.adherent ? kOk : kSloViolation;
}

}  // namespace

VerifyReport verify_series(const std::vector<io::AggregateRow>& rows,
                           const std::optional<std::vector<io::NodeTimeMean>>& nodes,
                           const wplace::SloSpec& slo,
                           const geom::PhysicalConstants& consts,
                           double slack_km) {
  if (!slo.is_distance()) {
    throw std::invalid_argument("hop SLOs cannot be verified from distances");
  }
  VerifyReport report;
  report.limit_km = slo.distance_km(consts) + slack_km;
  if (slo.kind == wplace::SloKind::kMaxDistance) {
    if (rows.empty()) throw io::SchemaError("no samples to verify");
    const auto worst = std::max_element(
        rows.begin(), rows.end(),
        [](const auto& a, const auto& b) { return a.max_km < b.max_km; });
    report.worst_km = worst->max_km;
    report.where = "t=" + io::format_number(worst->t_s) + "s";
  } else {
    if (!nodes || nodes->empty()) {
      throw io::SchemaError("mean SLO verification needs per-node data");
    }
    const auto worst = std::max_element(
        nodes->begin(), nodes->end(),
        [](const auto& a, const auto& b) { return a.mean_km < b.mean_km; });
    report.worst_km = worst->mean_km;
    report.where = "node (" + std::to_string(worst->plane) + ", " +
                   std::to_string(worst->slot) + ")";
  }
  report.margin_km = report.limit_km - report.worst_km;
  report.adherent = report.margin_km >= 0.0;
  return report;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"QoS-aware resource placement on LEO satellite shells"};
  app.require_subcommand(1);

  app.add_subcommand("shells", "List built-in shell presets");

  PlaceArgs place;
  auto* place_cmd = app.add_subcommand("place", "Compute a resource placement");
  place_cmd->add_option("--shell", place.shell, "Preset name or config file")
      ->required();
  place_cmd
      ->add_option("--slo", place.slo,
                   "hops:<int> | max:<v><ms|km> | mean:<v><ms|km>")
      ->required();
  place_cmd->add_option("--out", place.out, "Placement file to write")->required();
  place_cmd->add_option("--config", place.config,
                        "key = value file with constants.* overrides");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a placement over time");
  sim_cmd->add_option("--placement", sim.placement, "Placement file")->required();
  sim_cmd->add_option("--out", sim.out, "Aggregate CSV to write")->required();
  sim_cmd->add_option("--duration", sim.duration_s,
                      "Seconds to simulate (default: one orbital period)");
  sim_cmd->add_option("--step", sim.step_s, "Step in seconds (default: 10)");
  sim_cmd->add_option("--config", sim.config, "key = value file with sim.* keys");
  sim_cmd->add_flag("--per-node", sim.per_node,
                    "Also write <out stem>.nodes.csv with per-node distances");
  sim_cmd->add_flag("--paper-scale", sim.paper_scale,
                    "One day at 1 s steps unless --duration/--step given");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  sim_cmd->add_option("--phase-offset-deg", sim.phase_offset_deg,
                      "Phase offset between adjacent planes");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a simulated series against an SLO");
  verify_cmd->add_option("--ts", verify.ts, "Aggregate CSV")->required();
  verify_cmd->add_option("--slo", verify.slo, "max:<v><ms|km> | mean:<v><ms|km>")
      ->required();
  verify_cmd->add_option("--nodes", verify.nodes,
                         "Per-node CSV (default: <ts stem>.nodes.csv)");
  verify_cmd->add_option("--placement", verify.placement,
                         "Placement file; its epsilon widens the limit");
  verify_cmd->add_option("--slack-km", verify.slack_km, "Extra allowance in km");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand("shells")) return cmd_shells(out);
    if (place_cmd->parsed()) return cmd_place(place, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const io::SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kInputFile;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("leoplace");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace leoplace::cli
