#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "leoplace/geom.hpp"
#include "leoplace/torus.hpp"

namespace leoplace::wplace {

using torus::TorusCoord;
using torus::TorusDims;

class SloSyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SloKind { kHops, kMaxDistance, kMeanDistance };
enum class DistanceUnit { kKm, kMs };

// QoS target: a hop count or a max/mean network distance.
struct SloSpec {
  SloKind kind = SloKind::kHops;
  int hops = 0;
  double value = 0.0;  // in `unit`; unused for kHops
  DistanceUnit unit = DistanceUnit::kKm;

  void validate() const;
  bool is_distance() const { return kind != SloKind::kHops; }
  double distance_km(const geom::PhysicalConstants& consts = {}) const;
  // Inverse of parse_slo, e.g. "hops:1", "max:10ms", "mean:2997.92km".
  std::string to_string() const;

  friend bool operator==(const SloSpec&, const SloSpec&) = default;
};

// Grammar: hops:<int> | max:<value><unit> | mean:<value><unit>,
// unit in {ms, km}. Throws SloSyntaxError.
SloSpec parse_slo(std::string_view text);

double weighted_torus_distance(TorusCoord a, TorusCoord b, TorusDims dims,
                               const geom::HopWeights& weights);

// Which construction produced a weighted placement.
enum class Branch {
  kVirtualTorus,  // d reaches the longer hop: stretch, place, transfer back
  kLineTiling,    // only the shorter hop fits: cover each line independently
  kAllNodes,      // no hop fits inside d
};
const char* to_string(Branch branch);

struct WeightedPlacement {
  TorusDims dims;
  geom::HopWeights weights;
  double d_km = 0.0;
  // Guaranteed slack: every node has a resource within d_km + epsilon_km.
  double epsilon_km = 0.0;
  Branch branch = Branch::kAllNodes;
  std::vector<TorusCoord> resources;   // row-major sorted
  std::vector<TorusCoord> assignment;  // indexed by dims.index(node)
  // Largest node-to-assigned-resource weighted distance.
  double max_distance_km = 0.0;
  // Resources added after the coordinate transfer to restore the
  // d_km + epsilon_km guarantee.
  int repair_resources = 0;
};

// Placement on a torus whose two hop directions have different real
// lengths. Every node ends up within d_km + weights.intra_plane_km of its
// assigned resource (within d_km exactly for the line and all-node
// branches).
WeightedPlacement real_d_placement(TorusDims dims,
                                   const geom::HopWeights& weights,
                                   double d_km);

// Either kind of placement for a shell, tagged with the SLO it answers.
struct SloPlacement {
  geom::ShellParams shell;
  geom::PhysicalConstants consts;
  SloSpec slo;
  std::variant<torus::DiscretePlacement, WeightedPlacement> placement;

  TorusDims dims() const;
  const std::vector<TorusCoord>& resources() const;
  const std::vector<TorusCoord>& assignment() const;
  double epsilon_km() const;
};

SloPlacement placement_for_slo(const geom::ShellParams& shell,
                               const SloSpec& slo,
                               const geom::PhysicalConstants& consts = {});

inline TorusDims dims_of(const geom::ShellParams& shell) {
  return {shell.planes, shell.sats_per_plane};
}

}  // namespace leoplace::wplace
