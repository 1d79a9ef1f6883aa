#pragma once

#include <compare>
#include <cstdint>
#include <variant>
#include <vector>

#include "leoplace/geom.hpp"

// Discrete placement on an N x M torus: Lee metric, perfect Lee codes, the
// block-trim-augment construction for general dimensions, and an exhaustive
// oracle for small instances.

namespace leoplace::torus {

struct TorusCoord {
  int plane = 0;
  int slot = 0;

  friend auto operator<=>(const TorusCoord&, const TorusCoord&) = default;
};

struct TorusDims {
  int planes = 1;  // N
  int slots = 1;   // M

  int node_count() const { return planes * slots; }
  bool contains(TorusCoord c) const {
    return c.plane >= 0 && c.plane < planes && c.slot >= 0 && c.slot < slots;
  }
  // Row-major node index.
  int index(TorusCoord c) const { return c.plane * slots + c.slot; }
  TorusCoord coord(int index) const { return {index / slots, index % slots}; }
  TorusDims transposed() const { return {slots, planes}; }
  void validate() const;

  friend bool operator==(const TorusDims&, const TorusDims&) = default;
};

// Plain hop counting.
struct HopMetric {};
// Inter-plane hops cost weights.inter_plane_km, intra-plane hops
// weights.intra_plane_km.
using Metric = std::variant<HopMetric, geom::HopWeights>;

// Throws DomainError when either coordinate is outside `dims`.
int lee_distance(TorusCoord a, TorusCoord b, TorusDims dims);
double metric_distance(TorusCoord a, TorusCoord b, TorusDims dims,
                       const Metric& metric);

// Number of nodes within d hops of a node on an unbounded grid.
std::int64_t sphere_size(int d);

struct DiscretePlacement {
  TorusDims dims;
  int d = 0;
  // Row-major sorted, never empty.
  std::vector<TorusCoord> resources;
  // assignment[dims.index(node)] is the resource serving `node`.
  std::vector<TorusCoord> assignment;

  TorusCoord assigned(TorusCoord node) const {
    return assignment[dims.index(node)];
  }
  std::size_t resource_count() const { return resources.size(); }
};

struct CoverageReport {
  bool covered = false;
  // Largest distance from any node to its nearest resource.
  int max_hops = 0;
  // Nodes within d hops of two or more resources.
  int multiply_covered = 0;
  std::vector<TorusCoord> uncovered;
  // Every assignment target is a resource within d hops of its node.
  bool assignment_valid = false;
};

// Perfect d-hops code on the k x k torus, k = sphere_size(d): resources at
// (i, 2 d^2 i mod k). Requires d >= 1.
DiscretePlacement perfect_placement(int d);

// Covering placement for arbitrary dimensions. Tiles the perfect code when
// k divides both N and M; otherwise tiles enough k x k blocks to span the
// torus, trims the surplus rows and columns and adds resources greedily
// until every node is covered. Tori smaller than k in both dimensions are
// covered greedily from scratch.
DiscretePlacement quasi_perfect_placement(TorusDims dims, int d);

CoverageReport verify_coverage(const DiscretePlacement& placement);

// Maps each node to its nearest resource under `metric`; ties go to the
// smallest (plane, slot).
std::vector<TorusCoord> assign_resources(TorusDims dims,
                                         const std::vector<TorusCoord>& resources,
                                         const Metric& metric = HopMetric{});

// Minimum-cardinality placement such that every node lies within `radius`
// of a resource under `metric`. Exhaustive; throws CapacityError when the
// torus has more than kBruteForceMaxNodes nodes.
inline constexpr int kBruteForceMaxNodes = 36;
std::vector<TorusCoord> brute_force_min_placement(TorusDims dims,
                                                  double radius,
                                                  const Metric& metric = HopMetric{});
DiscretePlacement brute_force_min_placement(TorusDims dims, int d);

// Offsets (dp, ds), each reduced into [0, N) x [0, M), of every node within
// `radius` of the origin. Distances are compared with a 1e-9 slack.
class Neighborhood {
 public:
  Neighborhood(TorusDims dims, const Metric& metric, double radius);

  TorusDims dims() const { return dims_; }
  const std::vector<TorusCoord>& offsets() const { return offsets_; }

  template <typename Fn>
  void for_each(TorusCoord center, Fn&& fn) const {
    for (const TorusCoord& o : offsets_) {
      fn(TorusCoord{(center.plane + o.plane) % dims_.planes,
                    (center.slot + o.slot) % dims_.slots});
    }
  }

 private:
  TorusDims dims_;
  std::vector<TorusCoord> offsets_;
};

// Adds resources until every node lies in the neighborhood of one. Each
// round takes the node that covers the most uncovered nodes, smallest
// (plane, slot) on ties. Returns the extended, row-major sorted set.
std::vector<TorusCoord> greedy_augment(const Neighborhood& hood,
                                       std::vector<TorusCoord> resources);

}  // namespace leoplace::torus
