#pragma once

#include <cstddef>
#include <vector>

#include "leoplace/geom.hpp"
#include "leoplace/torus.hpp"

// Time-stepped Walker shell on a spherical Earth in an inertial frame, with
// the +GRID ISL graph and shortest-path distances to assigned resources.

namespace leoplace::orbitsim {

using torus::TorusCoord;
using torus::TorusDims;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);

struct SimConfig {
  double duration_s = 0.0;
  double step_s = 10.0;
  // Extra argument of latitude per plane index, radians. Zero aligns every
  // plane's slot 0 on the ascending node at t = 0.
  double plane_phase_offset_rad = 0.0;
  // Worker threads for independent timesteps; 0 picks the hardware count.
  unsigned threads = 0;
  // Retain every node's distance at every step (samples x nodes doubles).
  bool keep_per_node = true;

  void validate() const;
  // t = 0, step, ..., up to and including duration.
  std::size_t sample_count() const;
  double time_at(std::size_t sample) const { return step_s * sample; }

  // One orbital period at 10 s steps.
  static SimConfig one_period(const geom::ShellParams& shell,
                              const geom::PhysicalConstants& consts = {});
};

Vec3 satellite_position(const geom::ShellParams& shell,
                        const geom::PhysicalConstants& consts,
                        TorusCoord coord, double t_s,
                        double plane_phase_offset_rad = 0.0);

struct IslEdge {
  int a = 0;
  int b = 0;
  bool inter_plane = false;
};

// Fixed +GRID topology: edge 2*i joins node i to its in-plane successor,
// edge 2*i + 1 joins it to the same slot in the next plane.
class IslTopology {
 public:
  explicit IslTopology(TorusDims dims);

  TorusDims dims() const { return dims_; }
  const std::vector<IslEdge>& edges() const { return edges_; }
  // Incident edge ids of `node` (four, counting wraparound duplicates).
  const std::vector<int>& incident(int node) const { return incident_[node]; }

 private:
  TorusDims dims_;
  std::vector<IslEdge> edges_;
  std::vector<std::vector<int>> incident_;
};

// Instantaneous edge lengths over an IslTopology.
struct IslSnapshot {
  double t_s = 0.0;
  std::vector<double> length_km;  // indexed by edge id
};

IslSnapshot isl_lengths(const geom::ShellParams& shell,
                        const geom::PhysicalConstants& consts,
                        const IslTopology& topology, double t_s,
                        double plane_phase_offset_rad = 0.0);

// Shortest-path length from every node to its assigned resource.
// `assignment` is indexed by dims.index(node).
std::vector<double> resource_distances(const IslTopology& topology,
                                       const IslSnapshot& snapshot,
                                       const std::vector<TorusCoord>& assignment);

struct TimeSeries {
  TorusDims dims;
  std::vector<double> t_s;
  std::vector<double> mean_km;
  std::vector<double> max_km;
  // Row per sample, dims.node_count() columns; empty unless keep_per_node.
  std::vector<double> per_node_km;
  // Sample mean of each node's distance over the run.
  std::vector<double> node_time_mean_km;

  std::size_t samples() const { return t_s.size(); }
  double node_distance(std::size_t sample, int node) const {
    return per_node_km[sample * dims.node_count() + node];
  }
};

// Deterministic and independent of the thread count.
TimeSeries run_simulation(const geom::ShellParams& shell,
                          const geom::PhysicalConstants& consts,
                          const std::vector<TorusCoord>& assignment,
                          const SimConfig& config);

}  // namespace leoplace::orbitsim
