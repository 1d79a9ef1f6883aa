#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "leoplace/geom.hpp"
#include "leoplace/orbitsim.hpp"
#include "leoplace/wplace.hpp"

// File formats: key = value configs, placement files and the time-series
// CSVs.

namespace leoplace::io {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Malformed or inconsistent input file.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- key = value configuration ----

using KeyValues = std::map<std::string, std::string>;

// Blank lines and lines starting with '#' are skipped. Throws SchemaError on
// lines without '=', duplicate keys and unknown keys.
KeyValues parse_config(std::string_view text);
KeyValues read_config(const std::filesystem::path& path);

// Shell from `shell.preset` (optional) overlaid with any explicit shell.*
// keys. Without a preset, all four shell keys are required.
geom::ShellParams shell_from_config(const KeyValues& kv);
// Overwrites only the fields whose keys are present.
void apply_constants(const KeyValues& kv, geom::PhysicalConstants& consts);
void apply_sim(const KeyValues& kv, orbitsim::SimConfig& sim);

// ---- placement file ----

struct PlacementFile {
  std::string tool_version{kToolVersion};
  std::string shell_name;
  geom::ShellParams shell;
  geom::PhysicalConstants constants;
  wplace::SloSpec slo;
  // Hop weights used for weighted placements; absent for hop SLOs.
  std::optional<geom::HopWeights> weights;
  std::optional<int> d_hops;
  std::optional<double> d_km;
  double epsilon_km = 0.0;
  std::string branch;
  std::vector<torus::TorusCoord> resources;
  std::vector<torus::TorusCoord> assignment;  // row-major by node

  friend bool operator==(const PlacementFile&, const PlacementFile&) = default;
};

PlacementFile make_placement_file(const wplace::SloPlacement& placement,
                                  std::string shell_name);

std::string format_placement(const PlacementFile& file);
// Throws SchemaError on missing fields or a placement inconsistent with its
// shell (wrong node count, coordinates out of range, targets that are not
// resources).
PlacementFile parse_placement(std::string_view text);

void write_placement(const std::filesystem::path& path, const PlacementFile& file);
PlacementFile read_placement(const std::filesystem::path& path);

// ---- time-series CSV ----

inline constexpr std::string_view kAggregateHeader = "t_s,mean_km,max_km";
inline constexpr std::string_view kPerNodeHeader = "t_s,plane,slot,distance_km";

// Values printed with 6 significant digits.
std::string format_number(double value);

std::string format_aggregate_csv(const orbitsim::TimeSeries& ts);
// Requires per-node data in `ts`.
std::string format_per_node_csv(const orbitsim::TimeSeries& ts);

// Path of the per-node file that accompanies an aggregate CSV:
// "run.csv" -> "run.nodes.csv".
std::filesystem::path per_node_path(const std::filesystem::path& aggregate);

struct AggregateRow {
  double t_s = 0.0;
  double mean_km = 0.0;
  double max_km = 0.0;
};

struct NodeTimeMean {
  int plane = 0;
  int slot = 0;
  double mean_km = 0.0;
  std::size_t samples = 0;
};

// Throw SchemaError on a wrong header, malformed rows or no rows.
std::vector<AggregateRow> parse_aggregate_csv(std::string_view text);
std::vector<NodeTimeMean> parse_per_node_csv(std::string_view text);

std::string read_text(const std::filesystem::path& path);
// Throws std::ios_base::failure when the file cannot be written.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace leoplace::io
