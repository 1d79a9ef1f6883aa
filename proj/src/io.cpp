#include "leoplace/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "leoplace/errors.hpp"
#include "leoplace/presets.hpp"

namespace leoplace::io {
namespace {

using nlohmann::json;

const std::set<std::string, std::less<>> kConfigKeys = {
    "shell.preset",          "shell.planes",
    "shell.sats_per_plane",  "shell.altitude_km",
    "shell.inclination_deg", "constants.earth_radius_km",
    "constants.mu",          "constants.c_km_s",
    "sim.duration_s",        "sim.step_s",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw SchemaError(std::string(what) + ": '" + std::string(text) +
                      "' is not a number");
  }
  return value;
}

template <typename T>
void maybe_set(const KeyValues& kv, std::string_view key, T& field) {
  if (const auto it = kv.find(std::string(key)); it != kv.end()) {
    field = parse_number<T>(it->second, key);
  }
}

json coord_list(const std::vector<torus::TorusCoord>& coords) {
  json out = json::array();
  for (const auto& c : coords) out.push_back({c.plane, c.slot});
  return out;
}

std::vector<torus::TorusCoord> coords_from(const json& j, std::string_view what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be a list");
  std::vector<torus::TorusCoord> out;
  out.reserve(j.size());
  for (const json& c : j) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
        !c[1].is_number_integer()) {
      throw SchemaError(std::string(what) + " entries must be [plane, slot]");
    }
    out.push_back({c[0].get<int>(), c[1].get<int>()});
  }
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string("placement file lacks '") + key + "'");
  }
  return j.at(key);
}

void check_consistency(const PlacementFile& f) {
  try {
    f.shell.validate();
    f.constants.validate();
    f.slo.validate();
  } catch (const DomainError& e) {
    throw SchemaError(std::string("placement file: ") + e.what());
  }
  const torus::TorusDims dims = wplace::dims_of(f.shell);
  if (f.resources.empty()) throw SchemaError("placement has no resources");
  if (static_cast<int>(f.assignment.size()) != dims.node_count()) {
    throw SchemaError("assignment has " + std::to_string(f.assignment.size()) +
                      " entries for a torus of " +
                      std::to_string(dims.node_count()) + " nodes");
  }
  for (const auto& r : f.resources) {
    if (!dims.contains(r)) throw SchemaError("resource outside the torus");
  }
  std::vector<torus::TorusCoord> sorted = f.resources;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& a : f.assignment) {
    if (!std::binary_search(sorted.begin(), sorted.end(), a)) {
      throw SchemaError("assignment target is not a resource");
    }
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Calls fn(line_number, fields) for every data line after checking the
// header.
template <typename Fn>
void for_each_row(std::string_view text, std::string_view header, Fn&& fn) {
  std::size_t line_no = 0;
  bool saw_header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != header) {
        throw SchemaError("expected CSV header '" + std::string(header) +
                          "', got '" + std::string(line) + "'");
      }
      saw_header = true;
      continue;
    }
    fn(line_no, split(line, ','));
  }
  if (!saw_header) throw SchemaError("CSV is empty");
}

}  // namespace

KeyValues parse_config(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw SchemaError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!kConfigKeys.contains(key)) {
      throw SchemaError("config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
    if (!kv.emplace(key, value).second) {
      throw SchemaError("config line " + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

KeyValues read_config(const std::filesystem::path& path) {
  return parse_config(read_text(path));
}

geom::ShellParams shell_from_config(const KeyValues& kv) {
  geom::ShellParams shell;
  if (const auto it = kv.find("shell.preset"); it != kv.end()) {
    const auto preset = find_preset(it->second);
    if (!preset) throw SchemaError("unknown shell preset '" + it->second + "'");
    shell = preset->params;
  } else {
    for (const char* key : {"shell.planes", "shell.sats_per_plane",
                            "shell.altitude_km", "shell.inclination_deg"}) {
      if (!kv.contains(key)) {
        throw SchemaError(std::string("config lacks '") + key + "'");
      }
    }
  }
  maybe_set(kv, "shell.planes", shell.planes);
  maybe_set(kv, "shell.sats_per_plane", shell.sats_per_plane);
  maybe_set(kv, "shell.altitude_km", shell.altitude_km);
  maybe_set(kv, "shell.inclination_deg", shell.inclination_deg);
  try {
    shell.validate();
  } catch (const DomainError& e) {
    throw SchemaError(std::string("config: ") + e.what());
  }
  return shell;
}

void apply_constants(const KeyValues& kv, geom::PhysicalConstants& consts) {
  maybe_set(kv, "constants.earth_radius_km", consts.earth_radius_km);
  maybe_set(kv, "constants.mu", consts.mu_m3_s2);
  maybe_set(kv, "constants.c_km_s", consts.light_speed_km_s);
  try {
    consts.validate();
  } catch (const DomainError& e) {
    throw SchemaError(std::string("config: ") + e.what());
  }
}

void apply_sim(const KeyValues& kv, orbitsim::SimConfig& sim) {
  maybe_set(kv, "sim.duration_s", sim.duration_s);
  maybe_set(kv, "sim.step_s", sim.step_s);
}

PlacementFile make_placement_file(const wplace::SloPlacement& placement,
                                  std::string shell_name) {
  PlacementFile f;
  f.shell_name = std::move(shell_name);
  f.shell = placement.shell;
  f.constants = placement.consts;
  f.slo = placement.slo;
  f.resources = placement.resources();
  f.assignment = placement.assignment();
  f.epsilon_km = placement.epsilon_km();
  if (const auto* d = std::get_if<torus::DiscretePlacement>(&placement.placement)) {
    f.d_hops = d->d;
    f.branch = "hops";
  } else {
    const auto& w = std::get<wplace::WeightedPlacement>(placement.placement);
    f.weights = w.weights;
    f.d_km = w.d_km;
    f.branch = wplace::to_string(w.branch);
  }
  return f;
}

std::string format_placement(const PlacementFile& f) {
  json j;
  j["tool_version"] = f.tool_version;
  j["shell"] = {{"name", f.shell_name},
                {"planes", f.shell.planes},
                {"sats_per_plane", f.shell.sats_per_plane},
                {"altitude_km", f.shell.altitude_km},
                {"inclination_deg", f.shell.inclination_deg}};
  j["constants"] = {{"earth_radius_km", f.constants.earth_radius_km},
                    {"mu", f.constants.mu_m3_s2},
                    {"c_km_s", f.constants.light_speed_km_s}};
  j["slo"] = f.slo.to_string();
  if (f.weights) {
    j["weights"] = {{"metric", geom::to_string(f.weights->metric)},
                    {"inter_plane_km", f.weights->inter_plane_km},
                    {"intra_plane_km", f.weights->intra_plane_km}};
  } else {
    j["weights"] = nullptr;
  }
  j["d_hops"] = f.d_hops ? json(*f.d_hops) : json(nullptr);
  j["d_km"] = f.d_km ? json(*f.d_km) : json(nullptr);
  j["epsilon_km"] = f.epsilon_km;
  j["branch"] = f.branch;
  j["resource_count"] = f.resources.size();
  j["resources"] = coord_list(f.resources);
  j["assignment"] = coord_list(f.assignment);
  return j.dump(1) + "\n";
}

PlacementFile parse_placement(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("placement file is not valid JSON: ") + e.what());
  }
  PlacementFile f;
  try {
    f.tool_version = field(j, "tool_version").get<std::string>();
    const json& shell = field(j, "shell");
    f.shell_name = field(shell, "name").get<std::string>();
    f.shell.planes = field(shell, "planes").get<int>();
    f.shell.sats_per_plane = field(shell, "sats_per_plane").get<int>();
    f.shell.altitude_km = field(shell, "altitude_km").get<double>();
    f.shell.inclination_deg = field(shell, "inclination_deg").get<double>();
    const json& consts = field(j, "constants");
    f.constants.earth_radius_km = field(consts, "earth_radius_km").get<double>();
    f.constants.mu_m3_s2 = field(consts, "mu").get<double>();
    f.constants.light_speed_km_s = field(consts, "c_km_s").get<double>();
    f.slo = wplace::parse_slo(field(j, "slo").get<std::string>());
    if (const json& w = field(j, "weights"); !w.is_null()) {
      geom::HopWeights weights;
      const auto metric = field(w, "metric").get<std::string>();
      if (metric != "max" && metric != "mean") {
        throw SchemaError("unknown weight metric '" + metric + "'");
      }
      weights.metric = metric == "max" ? geom::MetricKind::kMax
                                       : geom::MetricKind::kMean;
      weights.inter_plane_km = field(w, "inter_plane_km").get<double>();
      weights.intra_plane_km = field(w, "intra_plane_km").get<double>();
      f.weights = weights;
    }
    if (const json& d = field(j, "d_hops"); !d.is_null()) f.d_hops = d.get<int>();
    if (const json& d = field(j, "d_km"); !d.is_null()) f.d_km = d.get<double>();
    f.epsilon_km = field(j, "epsilon_km").get<double>();
    f.branch = field(j, "branch").get<std::string>();
    f.resources = coords_from(field(j, "resources"), "resources");
    f.assignment = coords_from(field(j, "assignment"), "assignment");
  } catch (const json::exception& e) {
    throw SchemaError(std::string("placement file: ") + e.what());
  } catch (const wplace::SloSyntaxError& e) {
    throw SchemaError(std::string("placement file: ") + e.what());
  }
  check_consistency(f);
  return f;
}

void write_placement(const std::filesystem::path& path, const PlacementFile& file) {
  write_text(path, format_placement(file));
}

PlacementFile read_placement(const std::filesystem::path& path) {
  return parse_placement(read_text(path));
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string format_aggregate_csv(const orbitsim::TimeSeries& ts) {
  std::string out(kAggregateHeader);
  out += '\n';
  for (std::size_t s = 0; s < ts.samples(); ++s) {
    out += format_number(ts.t_s[s]);
    out += ',';
    out += format_number(ts.mean_km[s]);
    out += ',';
    out += format_number(ts.max_km[s]);
    out += '\n';
  }
  return out;
}

std::string format_per_node_csv(const orbitsim::TimeSeries& ts) {
  const int n = ts.dims.node_count();
  if (ts.per_node_km.size() != ts.samples() * static_cast<std::size_t>(n)) {
    throw std::logic_error("time series holds no per-node distances");
  }
  std::string out(kPerNodeHeader);
  out += '\n';
  for (std::size_t s = 0; s < ts.samples(); ++s) {
    const std::string t = format_number(ts.t_s[s]);
    for (int i = 0; i < n; ++i) {
      const auto c = ts.dims.coord(i);
      out += t;
      out += ',';
      out += std::to_string(c.plane);
      out += ',';
      out += std::to_string(c.slot);
      out += ',';
      out += format_number(ts.node_distance(s, i));
      out += '\n';
    }
  }
  return out;
}

std::filesystem::path per_node_path(const std::filesystem::path& aggregate) {
  std::filesystem::path p = aggregate;
  p.replace_extension(".nodes.csv");
  return p;
}

std::vector<AggregateRow> parse_aggregate_csv(std::string_view text) {
  std::vector<AggregateRow> rows;
  for_each_row(text, kAggregateHeader, [&](std::size_t line, const auto& f) {
    if (f.size() != 3) {
      throw SchemaError("line " + std::to_string(line) + ": expected 3 fields");
    }
    AggregateRow row{parse_number<double>(f[0], "t_s"),
                     parse_number<double>(f[1], "mean_km"),
                     parse_number<double>(f[2], "max_km")};
    if (row.mean_km < 0 || row.max_km < 0) {
      throw SchemaError("line " + std::to_string(line) + ": negative distance");
    }
    rows.push_back(row);
  });
  if (rows.empty()) throw SchemaError("CSV has no data rows");
  return rows;
}

std::vector<NodeTimeMean> parse_per_node_csv(std::string_view text) {
  std::map<std::pair<int, int>, NodeTimeMean> nodes;
  for_each_row(text, kPerNodeHeader, [&](std::size_t line, const auto& f) {
    if (f.size() != 4) {
      throw SchemaError("line " + std::to_string(line) + ": expected 4 fields");
    }
    parse_number<double>(f[0], "t_s");
    const int plane = parse_number<int>(f[1], "plane");
    const int slot = parse_number<int>(f[2], "slot");
    const double d = parse_number<double>(f[3], "distance_km");
    if (d < 0) {
      throw SchemaError("line " + std::to_string(line) + ": negative distance");
    }
    NodeTimeMean& node = nodes[{plane, slot}];
    node.plane = plane;
    node.slot = slot;
    node.mean_km += d;
    ++node.samples;
  });
  if (nodes.empty()) throw SchemaError("CSV has no data rows");
  std::vector<NodeTimeMean> out;
  out.reserve(nodes.size());
  for (auto& [key, node] : nodes) {
    node.mean_km /= static_cast<double>(node.samples);
    out.push_back(node);
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::ios_base::failure("cannot open '" + path.string() +
                                 "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw std::ios_base::failure("write to '" + path.string() + "' failed");
}

}  // namespace leoplace::io
