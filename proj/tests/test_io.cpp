#include <filesystem>
#include <random>

#include "doctest.h"
#include "leoplace/io.hpp"
#include "leoplace/presets.hpp"

using namespace leoplace;
using namespace leoplace::io;

namespace {

geom::ShellParams preset(std::string_view name) { return find_preset(name)->params; }

}  // namespace

TEST_CASE("config parsing") {
  const KeyValues kv = parse_config(
      "# custom shell\n"
      "shell.planes = 6\n"
      "shell.sats_per_plane=8\n"
      "  shell.altitude_km = 700.5  \n"
      "\n"
      "shell.inclination_deg = 60\n"
      "constants.c_km_s = 300000\n"
      "sim.step_s = 5\n");
  const geom::ShellParams shell = shell_from_config(kv);
  CHECK(shell == geom::ShellParams{6, 8, 700.5, 60.0});
  geom::PhysicalConstants consts;
  apply_constants(kv, consts);
  CHECK(consts.light_speed_km_s == 300000.0);
  CHECK(consts.earth_radius_km == 6371.0);
  orbitsim::SimConfig sim;
  sim.duration_s = 100;
  apply_sim(kv, sim);
  CHECK(sim.step_s == 5.0);
  CHECK(sim.duration_s == 100.0);
}

TEST_CASE("config presets are overridden only by explicit keys") {
  const geom::ShellParams s =
      shell_from_config(parse_config("shell.preset = kuiper-a\nshell.altitude_km = 700\n"));
  CHECK(s.planes == 34);
  CHECK(s.sats_per_plane == 34);
  CHECK(s.altitude_km == 700.0);
  CHECK(s.inclination_deg == 51.9);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("shell.planes 6\n"), SchemaError);
  CHECK_THROWS_AS(parse_config("shell.plane = 6\n"), SchemaError);
  CHECK_THROWS_AS(parse_config("shell.planes = 6\nshell.planes = 7\n"), SchemaError);
  CHECK_THROWS_AS(shell_from_config(parse_config("shell.planes = 6\n")), SchemaError);
  CHECK_THROWS_AS(shell_from_config(parse_config("shell.preset = iridium\n")), SchemaError);
  CHECK_THROWS_AS(
      shell_from_config(parse_config("shell.preset = kuiper-a\nshell.planes = six\n")),
      SchemaError);
  CHECK_THROWS_AS(
      shell_from_config(parse_config("shell.preset = kuiper-a\nshell.altitude_km = -5\n")),
      SchemaError);
}

TEST_CASE("placement files round-trip") {
  for (const char* slo : {"hops:1", "max:10ms", "mean:100ms", "mean:1234.5km"}) {
    CAPTURE(slo);
    const auto placement =
        wplace::placement_for_slo(preset("starlink-a"), wplace::parse_slo(slo));
    const PlacementFile file = make_placement_file(placement, "starlink-a");
    const PlacementFile back = parse_placement(format_placement(file));
    CHECK(back == file);
    CHECK(format_placement(back) == format_placement(file));
    CHECK(back.resources.size() == placement.resources().size());
  }

  const auto hop = make_placement_file(
      wplace::placement_for_slo(preset("starlink-b"), wplace::parse_slo("hops:1")),
      "starlink-b");
  CHECK(hop.d_hops == 1);
  CHECK_FALSE(hop.d_km);
  CHECK_FALSE(hop.weights);
  CHECK(hop.branch == "hops");
}

TEST_CASE("placement file schema errors") {
  const auto good = make_placement_file(
      wplace::placement_for_slo(preset("starlink-b"), wplace::parse_slo("max:10ms")),
      "starlink-b");

  CHECK_THROWS_AS(parse_placement("{"), SchemaError);
  CHECK_THROWS_AS(parse_placement("{}"), SchemaError);
  CHECK_THROWS_AS(parse_placement("[]"), SchemaError);

  PlacementFile short_assign = good;
  short_assign.assignment.pop_back();
  CHECK_THROWS_AS(parse_placement(format_placement(short_assign)), SchemaError);

  PlacementFile outside = good;
  outside.resources.push_back({9, 0});
  CHECK_THROWS_AS(parse_placement(format_placement(outside)), SchemaError);

  PlacementFile stray = good;
  stray.assignment[0] = {1, 1};  // not a resource
  CHECK_THROWS_AS(parse_placement(format_placement(stray)), SchemaError);

  PlacementFile none = good;
  none.resources.clear();
  CHECK_THROWS_AS(parse_placement(format_placement(none)), SchemaError);

  std::string text = format_placement(good);
  text.replace(text.find("max:10ms"), 8, "max:10xs");
  CHECK_THROWS_AS(parse_placement(text), SchemaError);
}

TEST_CASE("time-series CSV") {
  orbitsim::TimeSeries ts;
  ts.dims = {1, 2};
  ts.t_s = {0.0, 10.0};
  ts.mean_km = {1.0, 2997.92458};
  ts.max_km = {2.0, 123456789.0};
  ts.per_node_km = {0.0, 2.0, 0.5, 0.25};
  const std::string agg = format_aggregate_csv(ts);
  CHECK(agg == "t_s,mean_km,max_km\n0,1,2\n10,2997.92,1.23457e+08\n");
  const auto rows = parse_aggregate_csv(agg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].mean_km == 2997.92);

  const std::string per_node = format_per_node_csv(ts);
  CHECK(per_node ==
        "t_s,plane,slot,distance_km\n0,0,0,0\n0,0,1,2\n10,0,0,0.5\n10,0,1,0.25\n");
  const auto nodes = parse_per_node_csv(per_node);
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[0].mean_km == 0.25);
  CHECK(nodes[1].mean_km == 1.125);
  CHECK(nodes[1].samples == 2);

  CHECK(per_node_path("out/run.csv") == std::filesystem::path("out/run.nodes.csv"));
}

TEST_CASE("time-series CSV errors") {
  CHECK_THROWS_AS(parse_aggregate_csv(""), SchemaError);
  CHECK_THROWS_AS(parse_aggregate_csv("t_s,mean_km,max_km\n"), SchemaError);
  CHECK_THROWS_AS(parse_aggregate_csv("t,mean,max\n0,1,2\n"), SchemaError);
  CHECK_THROWS_AS(parse_aggregate_csv("t_s,mean_km,max_km\n0,1\n"), SchemaError);
  CHECK_THROWS_AS(parse_aggregate_csv("t_s,mean_km,max_km\n0,1,x\n"), SchemaError);
  CHECK_THROWS_AS(parse_aggregate_csv("t_s,mean_km,max_km\n0,-1,2\n"), SchemaError);
  CHECK_THROWS_AS(parse_per_node_csv("t_s,mean_km,max_km\n0,1,2\n"), SchemaError);
  CHECK_THROWS_AS(parse_per_node_csv("t_s,plane,slot,distance_km\n0,a,0,1\n"), SchemaError);
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "leoplace_io_test";
  std::filesystem::create_directories(dir);
  write_text(dir / "x.txt", "hello");
  CHECK(read_text(dir / "x.txt") == "hello");
  CHECK_THROWS_AS(read_text(dir / "missing.txt"), SchemaError);
  CHECK_THROWS_AS(write_text(dir / "no/such/dir/x.txt", "x"), std::ios_base::failure);
  std::filesystem::remove_all(dir);
}
