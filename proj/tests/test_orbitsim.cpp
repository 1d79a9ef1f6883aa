#include <cmath>
#include <random>

#include "doctest.h"
#include "leoplace/orbitsim.hpp"
#include "leoplace/presets.hpp"
#include "leoplace/wplace.hpp"

using namespace leoplace;
using namespace leoplace::orbitsim;
using doctest::Approx;

namespace {

geom::ShellParams preset(std::string_view name) { return find_preset(name)->params; }

std::vector<TorusCoord> all_nodes_assignment(TorusDims dims) {
  std::vector<TorusCoord> out;
  for (int i = 0; i < dims.node_count(); ++i) out.push_back(dims.coord(i));
  return out;
}

SimConfig short_run(const geom::ShellParams& shell, double step = 60.0) {
  SimConfig c = SimConfig::one_period(shell);
  c.step_s = step;
  return c;
}

}  // namespace

TEST_CASE("satellite positions") {
  const geom::ShellParams s = preset("kuiper-a");
  const double r = s.orbit_radius_km({});
  const Vec3 origin = satellite_position(s, {}, {0, 0}, 0.0);
  CHECK(origin.x == Approx(r).epsilon(1e-15));
  CHECK(std::abs(origin.y) < 1e-9);
  CHECK(std::abs(origin.z) < 1e-9);

  const double period = geom::orbital_period_s(s);
  const Vec3 later = satellite_position(s, {}, {0, 0}, period);
  CHECK(distance(origin, later) < 1e-6);

  std::mt19937 rng(2);
  std::uniform_real_distribution<double> t(0.0, 1e5);
  for (int i = 0; i < 200; ++i) {
    const TorusCoord c{static_cast<int>(rng() % 34), static_cast<int>(rng() % 34)};
    CHECK(norm(satellite_position(s, {}, c, t(rng))) == Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("+GRID topology") {
  const IslTopology topo({5, 7});
  CHECK(topo.edges().size() == 70);
  for (int i = 0; i < 35; ++i) CHECK(topo.incident(i).size() == 4);
  int inter = 0;
  for (const IslEdge& e : topo.edges()) inter += e.inter_plane;
  CHECK(inter == 35);
}

TEST_CASE("ISL lengths follow the closed-form hop model") {
  for (const ShellPreset& p : shell_presets()) {
    CAPTURE(p.name);
    const geom::ShellParams& s = p.params;
    const TorusDims dims{s.planes, s.sats_per_plane};
    const IslTopology topo(dims);
    const double period = geom::orbital_period_s(s);
    const double intra = geom::intra_plane_hop_km(s);

    const IslSnapshot at0 = isl_lengths(s, {}, topo, 0.0);
    CHECK(at0.length_km[1] == Approx(geom::inter_plane_hop_max_km(s)).epsilon(1e-9));

    std::mt19937 rng(4);
    std::uniform_real_distribution<double> t(0.0, 2 * period);
    for (int k = 0; k < 5; ++k) {
      const double now = t(rng);
      const IslSnapshot snap = isl_lengths(s, {}, topo, now);
      for (std::size_t e = 0; e < topo.edges().size(); ++e) {
        const IslEdge& edge = topo.edges()[e];
        if (edge.inter_plane) {
          const int slot = dims.coord(edge.a).slot;
          const double own_time = now + period * slot / s.sats_per_plane;
          CHECK(snap.length_km[e] ==
                Approx(geom::inter_plane_hop_at_km(s, {}, own_time)).epsilon(1e-6));
        } else {
          CHECK(snap.length_km[e] == Approx(intra).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("resource distances") {
  const geom::ShellParams s = preset("starlink-b");
  const auto placement = wplace::placement_for_slo(s, wplace::parse_slo("hops:1"));
  const TorusDims dims = placement.dims();
  const IslTopology topo(dims);
  const auto weights = geom::hop_weights(s, geom::MetricKind::kMax);
  const double period = geom::orbital_period_s(s);

  for (double t : {0.0, period / 7, period / 3, 0.77 * period}) {
    const IslSnapshot snap = isl_lengths(s, {}, topo, t);
    const std::vector<double> dist = resource_distances(topo, snap, placement.assignment());
    for (int i = 0; i < dims.node_count(); ++i) {
      const TorusCoord node = dims.coord(i);
      const TorusCoord target = placement.assignment()[i];
      if (node == target) CHECK(dist[i] == 0.0);
      CHECK(dist[i] <= wplace::weighted_torus_distance(node, target, dims, weights) + 1e-6);
    }
    // Node (0,1) is served by (0,0) over the intra-plane edge 0.
    CHECK(placement.assignment()[dims.index({0, 1})] == TorusCoord{0, 0});
    CHECK(dist[dims.index({0, 1})] == Approx(snap.length_km[0]).epsilon(1e-12));
  }
}

TEST_CASE("all-node placement stays at zero") {
  const geom::ShellParams s = preset("kuiper-b");
  const TimeSeries ts =
      run_simulation(s, {}, all_nodes_assignment({28, 28}), short_run(s, 300));
  for (std::size_t k = 0; k < ts.samples(); ++k) CHECK(ts.max_km[k] == 0.0);
}

TEST_CASE("Starlink B: hop placement breaks 10 ms, distance placement keeps it") {
  const geom::ShellParams s = preset("starlink-b");
  const SimConfig config = short_run(s, 30);
  const auto hops = wplace::placement_for_slo(s, wplace::parse_slo("hops:1"));
  const TimeSeries h = run_simulation(s, {}, hops.assignment(), config);
  CHECK(*std::max_element(h.max_km.begin(), h.max_km.end()) > 2997.92);

  const auto max10 = wplace::placement_for_slo(s, wplace::parse_slo("max:10ms"));
  const TimeSeries m = run_simulation(s, {}, max10.assignment(), config);
  for (double v : m.max_km) CHECK(v <= 2997.92);
}

TEST_CASE("simulation is deterministic across thread counts") {
  const geom::ShellParams s = preset("kuiper-a");
  const auto p = wplace::placement_for_slo(s, wplace::parse_slo("mean:10ms"));
  SimConfig config = short_run(s, 40);
  config.threads = 1;
  const TimeSeries one = run_simulation(s, {}, p.assignment(), config);
  config.threads = 5;
  const TimeSeries five = run_simulation(s, {}, p.assignment(), config);
  CHECK(one.t_s == five.t_s);
  CHECK(one.mean_km == five.mean_km);
  CHECK(one.max_km == five.max_km);
  CHECK(one.per_node_km == five.per_node_km);
  CHECK(one.node_time_mean_km == five.node_time_mean_km);
}

TEST_CASE("time series invariants") {
  const geom::ShellParams s = preset("starlink-a");
  const auto p = wplace::placement_for_slo(s, wplace::parse_slo("max:10ms"));
  const SimConfig config = SimConfig::one_period(s);
  CHECK(config.sample_count() ==
        static_cast<std::size_t>(std::floor(geom::orbital_period_s(s) / 10)) + 1);
  const TimeSeries ts = run_simulation(s, {}, p.assignment(), config);
  REQUIRE(ts.samples() == config.sample_count());

  // Largest change of any edge between two samples, bounded analytically by
  // the slope of the inter-plane hop formula.
  const TorusDims dims = p.dims();
  const IslTopology topo(dims);
  double edge_delta = 0.0;
  IslSnapshot prev = isl_lengths(s, {}, topo, 0.0);
  for (std::size_t k = 1; k < ts.samples(); ++k) {
    const IslSnapshot cur = isl_lengths(s, {}, topo, ts.t_s[k]);
    for (std::size_t e = 0; e < cur.length_km.size(); ++e) {
      edge_delta = std::max(edge_delta, std::abs(cur.length_km[e] - prev.length_km[e]));
    }
    prev = cur;
  }
  const double hop_diameter = dims.planes / 2 + dims.slots / 2;

  const double bound = 2997.92458 + geom::intra_plane_hop_km(s);
  for (std::size_t k = 0; k < ts.samples(); ++k) {
    CHECK(ts.max_km[k] >= ts.mean_km[k]);
    CHECK(ts.max_km[k] <= bound);
    if (k > 0) {
      CHECK(std::abs(ts.max_km[k] - ts.max_km[k - 1]) <= hop_diameter * edge_delta + 1e-9);
      CHECK(std::abs(ts.mean_km[k] - ts.mean_km[k - 1]) <= hop_diameter * edge_delta + 1e-9);
    }
  }
  for (double v : ts.per_node_km) CHECK(v >= 0.0);
}

TEST_CASE("constellation is rigid under whole-period shifts") {
  const geom::ShellParams s = preset("starlink-a");
  const IslTopology topo({s.planes, s.sats_per_plane});
  const double period = geom::orbital_period_s(s);
  for (double t : {0.0, 123.0, 4000.0}) {
    const IslSnapshot a = isl_lengths(s, {}, topo, t);
    const IslSnapshot b = isl_lengths(s, {}, topo, t + 3 * period);
    for (std::size_t e = 0; e < a.length_km.size(); ++e) {
      CHECK(b.length_km[e] == Approx(a.length_km[e]).epsilon(1e-9));
    }
  }
}

TEST_CASE("config validation and per-node storage") {
  SimConfig bad;
  bad.duration_s = 5;
  bad.step_s = 10;
  CHECK_THROWS(bad.validate());
  bad.step_s = 0;
  CHECK_THROWS(bad.validate());

  const geom::ShellParams s = preset("starlink-b");
  SimConfig lean = short_run(s, 600);
  lean.keep_per_node = false;
  const TimeSeries ts = run_simulation(
      s, {}, wplace::placement_for_slo(s, wplace::parse_slo("hops:1")).assignment(), lean);
  CHECK(ts.per_node_km.empty());
  CHECK(ts.node_time_mean_km.size() == 375);
  CHECK_THROWS(run_simulation(s, {}, {{0, 0}}, lean));
}
