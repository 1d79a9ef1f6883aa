#include "leoplace/orbitsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <thread>
#include <utility>

#include "leoplace/errors.hpp"

namespace leoplace::orbitsim {
namespace {

constexpr double kPi = std::numbers::pi;

// Resource -> nodes it serves, plus a reusable Dijkstra workspace.
class DistanceSolver {
 public:
  DistanceSolver(const IslTopology& topology,
                 const std::vector<TorusCoord>& assignment)
      : topology_(topology) {
    const TorusDims dims = topology.dims();
    const int n = dims.node_count();
    if (static_cast<int>(assignment.size()) != n) {
      throw DomainError("assignment does not cover the torus");
    }
    std::vector<int> group_of(n, -1);
    for (int i = 0; i < n; ++i) {
      if (!dims.contains(assignment[i])) {
        throw DomainError("assignment target outside the torus");
      }
      const int r = dims.index(assignment[i]);
      if (group_of[r] < 0) {
        group_of[r] = static_cast<int>(sources_.size());
        sources_.push_back(r);
        members_.emplace_back();
      }
      members_[group_of[r]].push_back(i);
    }
    dist_.assign(n, 0.0);
    stamp_.assign(n, 0);
    settled_.assign(n, 0);
    target_.assign(n, 0);
  }

  void solve(const IslSnapshot& snapshot, std::vector<double>& out) {
    out.assign(topology_.dims().node_count(), 0.0);
    for (std::size_t g = 0; g < sources_.size(); ++g) {
      run_one(snapshot, sources_[g], members_[g], out);
    }
  }

 private:
  using Entry = std::pair<double, int>;

  // Dijkstra from `source` over the whole graph, stopped once all of
  // `members` are settled.
  void run_one(const IslSnapshot& snapshot, int source,
               const std::vector<int>& members, std::vector<double>& out) {
    ++epoch_;
    for (int m : members) target_[m] = epoch_;
    std::size_t pending = members.size();

    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    stamp_[source] = epoch_;
    dist_[source] = 0.0;
    heap.push({0.0, source});
    const auto& edges = topology_.edges();
    while (!heap.empty() && pending > 0) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (settled_[u] == epoch_ || d > dist_[u]) continue;
      settled_[u] = epoch_;
      if (target_[u] == epoch_) {
        out[u] = d;
        --pending;
      }
      for (int e : topology_.incident(u)) {
        const int v = edges[e].a == u ? edges[e].b : edges[e].a;
        const double nd = d + snapshot.length_km[e];
        if (stamp_[v] != epoch_ || nd < dist_[v]) {
          stamp_[v] = epoch_;
          dist_[v] = nd;
          heap.push({nd, v});
        }
      }
    }
  }

  const IslTopology& topology_;
  std::vector<int> sources_;
  std::vector<std::vector<int>> members_;
  std::vector<double> dist_;
  std::vector<unsigned> stamp_;
  std::vector<unsigned> settled_;
  std::vector<unsigned> target_;
  unsigned epoch_ = 0;
};

}  // namespace

double norm(const Vec3& v) {
  return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

double distance(const Vec3& a, const Vec3& b) {
  return norm({a.x - b.x, a.y - b.y, a.z - b.z});
}

void SimConfig::validate() const {
  if (!(step_s > 0.0) || !(duration_s >= step_s)) {
    throw DomainError("simulation needs duration >= step > 0");
  }
}

std::size_t SimConfig::sample_count() const {
  return static_cast<std::size_t>(std::floor(duration_s / step_s + 1e-9)) + 1;
}

SimConfig SimConfig::one_period(const geom::ShellParams& shell,
                                const geom::PhysicalConstants& consts) {
  SimConfig config;
  config.duration_s = geom::orbital_period_s(shell, consts);
  config.step_s = 10.0;
  return config;
}

Vec3 satellite_position(const geom::ShellParams& shell,
                        const geom::PhysicalConstants& consts,
                        TorusCoord coord, double t_s,
                        double plane_phase_offset_rad) {
  const double radius = shell.orbit_radius_km(consts);
  const double period = geom::orbital_period_s(shell, consts);
  const double raan = 2.0 * kPi * coord.plane / shell.planes;
  const double incl = shell.inclination_deg * kPi / 180.0;
  // Argument of latitude, measured from the ascending node.
  const double u = 2.0 * kPi * coord.slot / shell.sats_per_plane +
                   2.0 * kPi * std::fmod(t_s, period) / period +
                   plane_phase_offset_rad * coord.plane;
  const double cu = std::cos(u), su = std::sin(u);
  const double co = std::cos(raan), so = std::sin(raan);
  const double ci = std::cos(incl), si = std::sin(incl);
  return {radius * (co * cu - so * su * ci), radius * (so * cu + co * su * ci),
          radius * (su * si)};
}

IslTopology::IslTopology(TorusDims dims) : dims_(dims) {
  dims.validate();
  const int n = dims.node_count();
  edges_.reserve(2 * static_cast<std::size_t>(n));
  incident_.resize(n);
  for (int i = 0; i < n; ++i) {
    const TorusCoord c = dims.coord(i);
    const int next_slot = dims.index({c.plane, (c.slot + 1) % dims.slots});
    const int next_plane = dims.index({(c.plane + 1) % dims.planes, c.slot});
    edges_.push_back({i, next_slot, false});
    edges_.push_back({i, next_plane, true});
  }
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    incident_[edges_[e].a].push_back(e);
    if (edges_[e].b != edges_[e].a) incident_[edges_[e].b].push_back(e);
  }
}

IslSnapshot isl_lengths(const geom::ShellParams& shell,
                        const geom::PhysicalConstants& consts,
                        const IslTopology& topology, double t_s,
                        double plane_phase_offset_rad) {
  const TorusDims dims = topology.dims();
  std::vector<Vec3> pos(dims.node_count());
  for (int i = 0; i < dims.node_count(); ++i) {
    pos[i] = satellite_position(shell, consts, dims.coord(i), t_s,
                                plane_phase_offset_rad);
  }
  IslSnapshot snap;
  snap.t_s = t_s;
  snap.length_km.reserve(topology.edges().size());
  for (const IslEdge& e : topology.edges()) {
    snap.length_km.push_back(distance(pos[e.a], pos[e.b]));
  }
  return snap;
}

std::vector<double> resource_distances(const IslTopology& topology,
                                       const IslSnapshot& snapshot,
                                       const std::vector<TorusCoord>& assignment) {
  DistanceSolver solver(topology, assignment);
  std::vector<double> out;
  solver.solve(snapshot, out);
  return out;
}

TimeSeries run_simulation(const geom::ShellParams& shell,
                          const geom::PhysicalConstants& consts,
                          const std::vector<TorusCoord>& assignment,
                          const SimConfig& config) {
  shell.validate();
  config.validate();
  const TorusDims dims{shell.planes, shell.sats_per_plane};
  const IslTopology topology(dims);
  const std::size_t samples = config.sample_count();
  const auto n = static_cast<std::size_t>(dims.node_count());

  TimeSeries ts;
  ts.dims = dims;
  ts.t_s.resize(samples);
  ts.mean_km.resize(samples);
  ts.max_km.resize(samples);
  if (config.keep_per_node) ts.per_node_km.resize(samples * n);

  // Per-sample node sums for the time mean are accumulated per thread in
  // fixed blocks and reduced in order, so the result ignores the thread
  // count.
  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> block_sums(blocks, std::vector<double>(n, 0.0));

  unsigned workers = config.threads ? config.threads
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
  std::atomic<std::size_t> next_block{0};

  auto work = [&] {
    DistanceSolver solver(topology, assignment);
    std::vector<double> dist;
    for (std::size_t b = next_block++; b < blocks; b = next_block++) {
      const std::size_t end = std::min(samples, (b + 1) * kBlock);
      for (std::size_t s = b * kBlock; s < end; ++s) {
        const double t = config.time_at(s);
        solver.solve(isl_lengths(shell, consts, topology, t,
                                 config.plane_phase_offset_rad),
                     dist);
        double sum = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          sum += dist[i];
          worst = std::max(worst, dist[i]);
          block_sums[b][i] += dist[i];
        }
        ts.t_s[s] = t;
        ts.mean_km[s] = sum / static_cast<double>(n);
        ts.max_km[s] = worst;
        if (config.keep_per_node) {
          std::copy(dist.begin(), dist.end(), ts.per_node_km.begin() + s * n);
        }
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  ts.node_time_mean_km.assign(n, 0.0);
  for (const auto& block : block_sums) {
    for (std::size_t i = 0; i < n; ++i) ts.node_time_mean_km[i] += block[i];
  }
  for (double& v : ts.node_time_mean_km) v /= static_cast<double>(samples);
  return ts;
}

}  // namespace leoplace::orbitsim
