#include "leoplace/wplace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "leoplace/errors.hpp"

namespace leoplace::wplace {
namespace {

// Guards floor/ceil of ratios that are integral up to rounding.
constexpr double kRatioSlack = 1e-9;

int floor_ratio(double num, double den) {
  return static_cast<int>(std::floor(num / den + kRatioSlack));
}

TorusCoord transpose(TorusCoord c) { return {c.slot, c.plane}; }

std::vector<TorusCoord> transpose_all(std::vector<TorusCoord> coords) {
  for (TorusCoord& c : coords) c = transpose(c);
  std::sort(coords.begin(), coords.end());
  return coords;
}

// Canonical orientation: axis 0 (plane) carries the shorter hop `short_km`,
// axis 1 (slot) the longer `long_km`.
struct Canonical {
  TorusDims dims;
  double short_km;
  double long_km;
  double slack_km;  // epsilon expressed in this orientation's weights
};

std::vector<TorusCoord> virtual_torus(const Canonical& c, double d_km,
                                      int* repaired) {
  const int stretched = static_cast<int>(std::ceil(
      c.dims.slots * (c.long_km / c.short_km) - kRatioSlack));
  const int hops = floor_ratio(d_km, c.short_km);
  const torus::DiscretePlacement virt =
      torus::quasi_perfect_placement({c.dims.planes, stretched}, hops);

  std::vector<TorusCoord> resources;
  resources.reserve(virt.resources.size());
  for (const TorusCoord& r : virt.resources) {
    // floor(y * M / M')
    resources.push_back(
        {r.plane, static_cast<int>(static_cast<long long>(r.slot) *
                                   c.dims.slots / stretched)});
  }
  std::sort(resources.begin(), resources.end());
  resources.erase(std::unique(resources.begin(), resources.end()),
                  resources.end());

  // The transfer's floor moves a resource by under one long hop. When the
  // documented slack is shorter than that, close any gaps it opened.
  const geom::HopWeights canon{c.short_km, c.long_km};
  const torus::Neighborhood hood(c.dims, canon, d_km + c.slack_km);
  const std::size_t before = resources.size();
  resources = torus::greedy_augment(hood, std::move(resources));
  *repaired = static_cast<int>(resources.size() - before);
  return resources;
}

std::vector<TorusCoord> line_tiling(TorusDims dims, int stride) {
  std::vector<TorusCoord> resources;
  for (int p = 0; p < dims.planes; p += stride) {
    for (int s = 0; s < dims.slots; ++s) resources.push_back({p, s});
  }
  std::sort(resources.begin(), resources.end());
  return resources;
}

}  // namespace

void SloSpec::validate() const {
  if (kind == SloKind::kHops) {
    if (hops < 0) throw DomainError("hop SLO must be non-negative");
  } else if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("distance SLO must be positive and finite");
  }
}

double SloSpec::distance_km(const geom::PhysicalConstants& consts) const {
  if (kind == SloKind::kHops) {
    throw DomainError("hop SLO has no distance");
  }
  return unit == DistanceUnit::kKm ? value : geom::ms_to_km(value, consts);
}

std::string SloSpec::to_string() const {
  if (kind == SloKind::kHops) return "hops:" + std::to_string(hops);
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  const std::string number(buf, res.ptr);
  return std::string(kind == SloKind::kMaxDistance ? "max:" : "mean:") +
         number + (unit == DistanceUnit::kKm ? "km" : "ms");
}

SloSpec parse_slo(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw SloSyntaxError("SLO '" + std::string(text) +
                         "' must look like hops:<int>, max:<value><ms|km> or "
                         "mean:<value><ms|km>");
  }
  const std::string_view kind = text.substr(0, colon);
  std::string_view rest = text.substr(colon + 1);
  SloSpec slo;
  auto fail = [&](const std::string& why) {
    return SloSyntaxError("bad SLO '" + std::string(text) + "': " + why);
  };

  if (kind == "hops") {
    slo.kind = SloKind::kHops;
    const auto [ptr, ec] =
        std::from_chars(rest.data(), rest.data() + rest.size(), slo.hops);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty()) {
      throw fail("hop count must be an integer");
    }
    if (slo.hops < 0) throw fail("hop count must be non-negative");
    return slo;
  }
  if (kind == "max") {
    slo.kind = SloKind::kMaxDistance;
  } else if (kind == "mean") {
    slo.kind = SloKind::kMeanDistance;
  } else {
    throw fail("unknown kind '" + std::string(kind) + "'");
  }
  if (rest.size() < 3) throw fail("missing value or unit");
  const std::string_view unit = rest.substr(rest.size() - 2);
  if (unit == "ms") {
    slo.unit = DistanceUnit::kMs;
  } else if (unit == "km") {
    slo.unit = DistanceUnit::kKm;
  } else {
    throw fail("unit must be ms or km");
  }
  rest.remove_suffix(2);
  const auto [ptr, ec] =
      std::from_chars(rest.data(), rest.data() + rest.size(), slo.value);
  if (ec != std::errc() || ptr != rest.data() + rest.size()) {
    throw fail("value is not a number");
  }
  if (!(slo.value > 0.0) || !std::isfinite(slo.value)) {
    throw fail("value must be positive");
  }
  return slo;
}

double weighted_torus_distance(TorusCoord a, TorusCoord b, TorusDims dims,
                               const geom::HopWeights& weights) {
  return torus::metric_distance(a, b, dims, weights);
}

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::kVirtualTorus:
      return "virtual-torus";
    case Branch::kLineTiling:
      return "line-tiling";
    case Branch::kAllNodes:
      return "all-nodes";
  }
  return "?";
}

WeightedPlacement real_d_placement(TorusDims dims,
                                   const geom::HopWeights& weights,
                                   double d_km) {
  dims.validate();
  weights.validate();
  if (!(d_km > 0.0)) throw DomainError("placement distance must be positive");

  // Orient so the plane axis carries the shorter hop; equal hops keep the
  // given orientation.
  const bool flip = weights.intra_plane_km < weights.inter_plane_km;
  Canonical canon;
  canon.dims = flip ? dims.transposed() : dims;
  canon.short_km = flip ? weights.intra_plane_km : weights.inter_plane_km;
  canon.long_km = flip ? weights.inter_plane_km : weights.intra_plane_km;
  canon.slack_km = weights.intra_plane_km;

  WeightedPlacement out;
  out.dims = dims;
  out.weights = weights;
  out.d_km = d_km;

  std::vector<TorusCoord> resources;
  if (d_km + kRatioSlack * canon.long_km >= canon.long_km) {
    out.branch = Branch::kVirtualTorus;
    out.epsilon_km = weights.intra_plane_km;
    resources = virtual_torus(canon, d_km, &out.repair_resources);
  } else if (d_km + kRatioSlack * canon.short_km >= canon.short_km) {
    out.branch = Branch::kLineTiling;
    resources = line_tiling(canon.dims, 2 * floor_ratio(d_km, canon.short_km) + 1);
  } else {
    out.branch = Branch::kAllNodes;
    for (int i = 0; i < canon.dims.node_count(); ++i) {
      resources.push_back(canon.dims.coord(i));
    }
  }
  out.resources = flip ? transpose_all(std::move(resources)) : std::move(resources);
  out.assignment = torus::assign_resources(dims, out.resources, weights);

  for (int i = 0; i < dims.node_count(); ++i) {
    out.max_distance_km =
        std::max(out.max_distance_km,
                 weighted_torus_distance(dims.coord(i), out.assignment[i],
                                         dims, weights));
  }
  if (out.max_distance_km > d_km + out.epsilon_km + 1e-6) {
    throw std::logic_error("weighted placement misses its coverage bound");
  }
  return out;
}

TorusDims SloPlacement::dims() const {
  return std::visit([](const auto& p) { return p.dims; }, placement);
}

const std::vector<TorusCoord>& SloPlacement::resources() const {
  return std::visit(
      [](const auto& p) -> const std::vector<TorusCoord>& { return p.resources; },
      placement);
}

const std::vector<TorusCoord>& SloPlacement::assignment() const {
  return std::visit(
      [](const auto& p) -> const std::vector<TorusCoord>& { return p.assignment; },
      placement);
}

double SloPlacement::epsilon_km() const {
  if (const auto* w = std::get_if<WeightedPlacement>(&placement)) {
    return w->epsilon_km;
  }
  return 0.0;
}

SloPlacement placement_for_slo(const geom::ShellParams& shell,
                               const SloSpec& slo,
                               const geom::PhysicalConstants& consts) {
  shell.validate();
  consts.validate();
  slo.validate();
  SloPlacement out{shell, consts, slo, {}};
  const TorusDims dims = dims_of(shell);
  if (slo.kind == SloKind::kHops) {
    out.placement = torus::quasi_perfect_placement(dims, slo.hops);
    return out;
  }
  const auto metric = slo.kind == SloKind::kMaxDistance
                          ? geom::MetricKind::kMax
                          : geom::MetricKind::kMean;
  out.placement = real_d_placement(dims, geom::hop_weights(shell, metric, consts),
                                   slo.distance_km(consts));
  return out;
}

}  // namespace leoplace::wplace
