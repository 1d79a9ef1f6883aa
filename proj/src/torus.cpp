#include "leoplace/torus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "leoplace/errors.hpp"

namespace leoplace::torus {
namespace {

constexpr double kRadiusSlack = 1e-9;

int ring_distance(int a, int b, int length) {
  const int diff = std::abs(a - b);
  return std::min(diff, length - diff);
}

void require_in(TorusCoord c, TorusDims dims) {
  if (!dims.contains(c)) {
    throw DomainError("coordinate (" + std::to_string(c.plane) + ", " +
                      std::to_string(c.slot) + ") outside " +
                      std::to_string(dims.planes) + "x" +
                      std::to_string(dims.slots) + " torus");
  }
}

double weighted(int plane_hops, int slot_hops, const Metric& metric) {
  if (const auto* w = std::get_if<geom::HopWeights>(&metric)) {
    return w->inter_plane_km * plane_hops + w->intra_plane_km * slot_hops;
  }
  return plane_hops + slot_hops;
}

DiscretePlacement finish(TorusDims dims, int d,
                         std::vector<TorusCoord> resources) {
  std::sort(resources.begin(), resources.end());
  resources.erase(std::unique(resources.begin(), resources.end()),
                  resources.end());
  DiscretePlacement p;
  p.dims = dims;
  p.d = d;
  p.assignment = assign_resources(dims, resources);
  p.resources = std::move(resources);
  return p;
}

std::vector<TorusCoord> all_nodes(TorusDims dims) {
  std::vector<TorusCoord> nodes;
  nodes.reserve(dims.node_count());
  for (int i = 0; i < dims.node_count(); ++i) nodes.push_back(dims.coord(i));
  return nodes;
}

}  // namespace

void TorusDims::validate() const {
  if (planes < 1 || slots < 1) {
    throw DomainError("torus dimensions must be positive");
  }
}

int lee_distance(TorusCoord a, TorusCoord b, TorusDims dims) {
  require_in(a, dims);
  require_in(b, dims);
  return ring_distance(a.plane, b.plane, dims.planes) +
         ring_distance(a.slot, b.slot, dims.slots);
}

double metric_distance(TorusCoord a, TorusCoord b, TorusDims dims,
                       const Metric& metric) {
  require_in(a, dims);
  require_in(b, dims);
  return weighted(ring_distance(a.plane, b.plane, dims.planes),
                  ring_distance(a.slot, b.slot, dims.slots), metric);
}

std::int64_t sphere_size(int d) {
  if (d < 0) throw DomainError("hop radius must be non-negative");
  const std::int64_t dd = d;
  return 2 * dd * dd + 2 * dd + 1;
}

Neighborhood::Neighborhood(TorusDims dims, const Metric& metric, double radius)
    : dims_(dims) {
  dims.validate();
  for (int dp = 0; dp < dims.planes; ++dp) {
    const int ph = std::min(dp, dims.planes - dp);
    if (weighted(ph, 0, metric) > radius + kRadiusSlack) continue;
    for (int ds = 0; ds < dims.slots; ++ds) {
      const int sh = std::min(ds, dims.slots - ds);
      if (weighted(ph, sh, metric) <= radius + kRadiusSlack) {
        offsets_.push_back({dp, ds});
      }
    }
  }
}

std::vector<TorusCoord> greedy_augment(const Neighborhood& hood,
                                       std::vector<TorusCoord> resources) {
  const TorusDims dims = hood.dims();
  const int n = dims.node_count();
  std::vector<char> covered(n, 0);
  for (const TorusCoord& r : resources) {
    hood.for_each(r, [&](TorusCoord u) { covered[dims.index(u)] = 1; });
  }

  // gain[c]: uncovered nodes that c would cover. The neighborhood is
  // symmetric, so the candidates covering u are exactly u's neighborhood.
  std::vector<int> gain(n, 0);
  int remaining = 0;
  for (int i = 0; i < n; ++i) {
    if (covered[i]) continue;
    ++remaining;
    hood.for_each(dims.coord(i), [&](TorusCoord c) { ++gain[dims.index(c)]; });
  }

  while (remaining > 0) {
    const int best = static_cast<int>(
        std::max_element(gain.begin(), gain.end()) - gain.begin());
    resources.push_back(dims.coord(best));
    hood.for_each(dims.coord(best), [&](TorusCoord u) {
      const int ui = dims.index(u);
      if (covered[ui]) return;
      covered[ui] = 1;
      --remaining;
      hood.for_each(u, [&](TorusCoord c) { --gain[dims.index(c)]; });
    });
  }
  std::sort(resources.begin(), resources.end());
  resources.erase(std::unique(resources.begin(), resources.end()),
                  resources.end());
  return resources;
}

DiscretePlacement perfect_placement(int d) {
  if (d < 1) throw DomainError("perfect placement needs d >= 1");
  const auto k = static_cast<int>(sphere_size(d));
  const std::int64_t step = 2LL * d * d;
  std::vector<TorusCoord> resources;
  resources.reserve(k);
  for (int i = 0; i < k; ++i) {
    resources.push_back({i, static_cast<int>((step * i) % k)});
  }
  return finish({k, k}, d, std::move(resources));
}

DiscretePlacement quasi_perfect_placement(TorusDims dims, int d) {
  dims.validate();
  if (d < 0) throw DomainError("hop radius must be non-negative");
  if (d == 0) return finish(dims, 0, all_nodes(dims));

  const std::int64_t k = sphere_size(d);
  const Neighborhood hood(dims, HopMetric{}, d);
  if (dims.planes < k && dims.slots < k) {
    return finish(dims, d, greedy_augment(hood, {}));
  }

  // Tiling the k x k code over ceil(N/k) x ceil(M/k) blocks and keeping the
  // first N rows and M columns is the same as keeping every (p, s) of the
  // infinite code that falls inside the torus.
  const std::int64_t step = 2LL * d * d;
  std::vector<TorusCoord> resources;
  for (int p = 0; p < dims.planes; ++p) {
    for (int s = 0; s < dims.slots; ++s) {
      if ((s - step * p) % k == 0) resources.push_back({p, s});
    }
  }
  if (dims.planes % k == 0 && dims.slots % k == 0) {
    return finish(dims, d, std::move(resources));
  }
  return finish(dims, d, greedy_augment(hood, std::move(resources)));
}

CoverageReport verify_coverage(const DiscretePlacement& placement) {
  const TorusDims dims = placement.dims;
  CoverageReport report;
  report.assignment_valid =
      static_cast<int>(placement.assignment.size()) == dims.node_count();
  if (placement.resources.empty()) {
    report.uncovered = all_nodes(dims);
    report.assignment_valid = false;
    return report;
  }
  for (int i = 0; i < dims.node_count(); ++i) {
    const TorusCoord node = dims.coord(i);
    int nearest = dims.planes + dims.slots;
    int within = 0;
    for (const TorusCoord& r : placement.resources) {
      const int h = lee_distance(node, r, dims);
      nearest = std::min(nearest, h);
      if (h <= placement.d) ++within;
    }
    report.max_hops = std::max(report.max_hops, nearest);
    if (within > 1) ++report.multiply_covered;
    if (within == 0) report.uncovered.push_back(node);
    if (report.assignment_valid) {
      const TorusCoord target = placement.assignment[i];
      const bool is_resource = std::binary_search(
          placement.resources.begin(), placement.resources.end(), target);
      if (!is_resource || !dims.contains(target) ||
          lee_distance(node, target, dims) > placement.d) {
        report.assignment_valid = false;
      }
    }
  }
  report.covered = report.uncovered.empty();
  return report;
}

std::vector<TorusCoord> assign_resources(TorusDims dims,
                                         const std::vector<TorusCoord>& resources,
                                         const Metric& metric) {
  if (resources.empty()) throw DomainError("no resources to assign");
  std::vector<TorusCoord> sorted = resources;
  std::sort(sorted.begin(), sorted.end());
  std::vector<TorusCoord> assignment(dims.node_count());
  for (int i = 0; i < dims.node_count(); ++i) {
    const TorusCoord node = dims.coord(i);
    double best = metric_distance(node, sorted.front(), dims, metric);
    TorusCoord pick = sorted.front();
    for (const TorusCoord& r : sorted) {
      const double dist = metric_distance(node, r, dims, metric);
      if (dist < best) {
        best = dist;
        pick = r;
      }
    }
    assignment[i] = pick;
  }
  return assignment;
}

namespace {

// Iterative-deepening exact cover search over 64-bit node masks.
class ExactCoverSearch {
 public:
  ExactCoverSearch(TorusDims dims, const Neighborhood& hood) : dims_(dims) {
    const int n = dims.node_count();
    full_ = n == 64 ? ~0ULL : (1ULL << n) - 1;
    balls_.resize(n, 0);
    for (int c = 0; c < n; ++c) {
      hood.for_each(dims.coord(c),
                    [&](TorusCoord u) { balls_[c] |= 1ULL << dims.index(u); });
      max_ball_ = std::max(max_ball_, std::popcount(balls_[c]));
    }
  }

  std::vector<int> solve() {
    const int n = dims_.node_count();
    for (int budget = (n + max_ball_ - 1) / max_ball_; budget <= n; ++budget) {
      chosen_.clear();
      if (search(0, budget)) return chosen_;
    }
    return {};  // unreachable: every node covers itself
  }

 private:
  bool search(std::uint64_t covered, int budget) {
    const std::uint64_t open = full_ & ~covered;
    if (open == 0) return true;
    if (budget == 0) return false;
    if (std::popcount(open) > budget * max_ball_) return false;
    // Some chosen node must cover the lowest open node; it lies in that
    // node's own ball.
    const int target = std::countr_zero(open);
    std::uint64_t candidates = balls_[target];
    while (candidates) {
      const int c = std::countr_zero(candidates);
      candidates &= candidates - 1;
      chosen_.push_back(c);
      if (search(covered | balls_[c], budget - 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  TorusDims dims_;
  std::uint64_t full_ = 0;
  std::vector<std::uint64_t> balls_;
  int max_ball_ = 1;
  std::vector<int> chosen_;
};

}  // namespace

std::vector<TorusCoord> brute_force_min_placement(TorusDims dims,
                                                  double radius,
                                                  const Metric& metric) {
  dims.validate();
  if (dims.node_count() > kBruteForceMaxNodes) {
    throw CapacityError("exhaustive placement limited to " +
                        std::to_string(kBruteForceMaxNodes) + " nodes, got " +
                        std::to_string(dims.node_count()));
  }
  if (radius < 0) throw DomainError("radius must be non-negative");
  ExactCoverSearch search(dims, Neighborhood(dims, metric, radius));
  std::vector<TorusCoord> resources;
  for (int c : search.solve()) resources.push_back(dims.coord(c));
  std::sort(resources.begin(), resources.end());
  return resources;
}

DiscretePlacement brute_force_min_placement(TorusDims dims, int d) {
  return finish(dims, d, brute_force_min_placement(dims, double(d), HopMetric{}));
}

}  // namespace leoplace::torus
