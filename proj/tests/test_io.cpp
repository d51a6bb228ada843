#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "axiring/io.hpp"
#include "axiring/rng.hpp"
#include "axiring/svg.hpp"

using namespace axiring;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {
fs::path temp_file(const char* name) {
  return fs::temp_directory_path() / name;
}

nlohmann::json valid_config() {
  return nlohmann::json{
      {"preset", "patch-pair"},
      {"params",
       {{"center_r", 1.0}, {"center_z", 0.5}, {"radius", 0.25}, {"amplitude", 1.0}}},
      {"h", 0.05},
      {"epsilon", 0.1},
      {"dt", 0.01},
      {"t_max", 1.0},
      {"output_every", 10},
      {"seed", 42},
      {"out_dir", "out"}};
}
}  // namespace

TEST_CASE("shortest round-trip doubles") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  SplitMix64 rng(5150);
  for (int i = 0; i < 5000; ++i) {
    // exercise the full exponent range including subnormal-ish magnitudes
    const double mag = std::ldexp(rng.uniform(1.0, 2.0),
                                  int(rng.uniform(-300.0, 300.0)));
    const double v = rng.uniform() < 0.5 ? mag : -mag;
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK_THROWS_AS(parse_double("1.0x"), ConfigError);
  CHECK_THROWS_AS(parse_double(""), ConfigError);
}

TEST_CASE("run config parses and validates strictly") {
  const RunConfig cfg = parse_run_config(valid_config());
  CHECK(cfg.profile.kind == ProfileKind::patch_pair);
  CHECK(cfg.profile.radius == 0.25);
  CHECK(cfg.output_every == 10);
  CHECK(cfg.seed == 42);
  CHECK(cfg.out_dir == "out");

  auto unknown = valid_config();
  unknown["extra"] = 1;
  CHECK_THROWS_WITH(parse_run_config(unknown),
                    Catch::Matchers::ContainsSubstring("unknown key 'extra'"));

  auto missing = valid_config();
  missing.erase("dt");
  CHECK_THROWS_WITH(parse_run_config(missing),
                    Catch::Matchers::ContainsSubstring("missing key 'dt'"));

  auto wrong_type = valid_config();
  wrong_type["h"] = "0.05";
  CHECK_THROWS_WITH(parse_run_config(wrong_type),
                    Catch::Matchers::ContainsSubstring("'h'"));

  auto bad_preset = valid_config();
  bad_preset["preset"] = "vortex-soup";
  CHECK_THROWS_AS(parse_run_config(bad_preset), ConfigError);

  auto bad_params = valid_config();
  bad_params["params"]["sigma"] = 1.0;  // patch-pair has no sigma
  CHECK_THROWS_AS(parse_run_config(bad_params), ConfigError);

  auto neg = valid_config();
  neg["dt"] = -0.5;
  CHECK_THROWS_AS(parse_run_config(neg), ConfigError);

  auto zero_t = valid_config();
  zero_t["t_max"] = 0.0;  // allowed: single-record run
  CHECK_NOTHROW(parse_run_config(zero_t));

  auto gauss = valid_config();
  gauss["preset"] = "gaussian-ring-pair";
  gauss["params"] = {{"center_r", 1.0},
                     {"center_z", 0.5},
                     {"sigma", 0.2},
                     {"amplitude", 1.0}};
  CHECK(parse_run_config(gauss).profile.kind ==
        ProfileKind::gaussian_ring_pair);

  auto bc = valid_config();
  bc["preset"] = "bahouri-chemin";
  bc["params"] = {{"amplitude", 1.0}};
  CHECK(parse_run_config(bc).profile.kind == ProfileKind::bahouri_chemin);
}

TEST_CASE("snapshot round-trip is bitwise") {
  ParticleSystem sys;
  SplitMix64 rng(99);
  for (int i = 0; i < 200; ++i)
    sys.particles.push_back({{rng.uniform(0.1, 3.0), rng.uniform(0.0, 2.0)},
                             -rng.uniform(),
                             rng.uniform(1e-6, 1e-2)});
  const auto path = temp_file("axiring_snapshot_test.csv");
  write_snapshot(path.string(), sys);
  const auto back = read_snapshot(path.string());
  REQUIRE(back.size() == sys.particles.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].pos.r == sys.particles[i].pos.r);
    CHECK(back[i].pos.z == sys.particles[i].pos.z);
    CHECK(back[i].xi0 == sys.particles[i].xi0);
    CHECK(back[i].volume == sys.particles[i].volume);
  }
  fs::remove(path);
}

TEST_CASE("series CSV schema") {
  std::vector<TimeSeriesRecord> recs(2);
  recs[1].t = 0.5;
  recs[1].P = 1.25;
  const auto path = temp_file("axiring_series_test.csv");
  write_series_csv(path.string(), recs);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,P,Z,E,Gamma,Rmax,omega_linf,omega_l2,Pdot,Zdot");
  const auto table = read_csv(path.string());
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[1][0] == 0.5);
  CHECK(table.rows[1][1] == 1.25);
  CHECK(table.column_index("Pdot") == 8);
  CHECK(table.column_index("nope") == -1);
  fs::remove(path);
}

TEST_CASE("dyson CSV carries the collision footer") {
  DysonResult res;
  res.series.push_back({0.0, 1.0, 1.0, 0.05, 0.3});
  res.collision = true;
  const auto path = temp_file("axiring_dyson_test.csv");
  write_dyson_csv(path.string(), res);
  std::ifstream in(path);
  std::string all((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  CHECK(all.find("t,R,Z,a,uz_self\n") == 0);
  CHECK(all.find("# collision=true\n") != std::string::npos);
  // comment line is skipped by the reader
  CHECK(read_csv(path.string()).rows.size() == 1);
  fs::remove(path);
}

TEST_CASE("audit JSON shape") {
  AuditReport rep;
  rep.name = "demo";
  rep.lhs = 1.0;
  rep.rhs = 2.0;
  rep.ratio = 0.5;
  rep.pass = true;
  rep.hard = true;
  rep.metadata = {{"q", 2.0}};
  const auto j = audit_to_json(rep);
  CHECK(j.at("name") == "demo");
  CHECK(j.at("ratio") == 0.5);
  CHECK(j.at("pass") == true);
  CHECK(j.at("hard") == true);
  CHECK(j.at("metadata").at("q") == 2.0);
}

TEST_CASE("svg rendering") {
  PlotSeries s;
  s.label = "P";
  s.x = {0.0, 1.0};
  s.y = {2.0, 3.0};
  const auto svg = render_line_chart({{s}}, "t", "demo", false);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  PlotSeries zero = s;
  zero.y = {0.0, 3.0};
  CHECK_THROWS_AS(render_line_chart({{zero}}, "t", "demo", true),
                  std::domain_error);
  CHECK_NOTHROW(render_line_chart({{zero}}, "t", "demo", false));
}

TEST_CASE("snapshot filenames are zero-padded") {
  CHECK(snapshot_filename(0) == "snapshot_000000.csv");
  CHECK(snapshot_filename(123) == "snapshot_000123.csv");
}
