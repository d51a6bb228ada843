#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <string>

#include <json.hpp>

using Catch::Approx;
namespace fs = std::filesystem;

namespace {

std::string bin_path() {
  const char* env = std::getenv("AXIRING_BIN");
  REQUIRE(env != nullptr);
  return env;
}

int run_cmd(const std::string& args) {
  const std::string cmd = bin_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

fs::path sandbox() {
  const auto dir = fs::temp_directory_path() / "axiring_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write_config(const fs::path& path, double t_max, const fs::path& out) {
  nlohmann::json j{
      {"preset", "patch-pair"},
      {"params",
       {{"center_r", 1.0}, {"center_z", 0.5}, {"radius", 0.25}, {"amplitude", 1.0}}},
      {"h", 0.1},
      {"epsilon", 0.2},
      {"dt", 0.01},
      {"t_max", t_max},
      {"output_every", 5},
      {"seed", 7},
      {"out_dir", out.string()}};
  std::ofstream f(path);
  f << j.dump(2);
}

}  // namespace

TEST_CASE("simulate: t_max = 0 yields a single data row") {
  const auto dir = sandbox();
  const auto out = dir / "zero";
  write_config(dir / "zero.json", 0.0, out);
  REQUIRE(run_cmd("simulate --config " + (dir / "zero.json").string()) == 0);
  const auto series = slurp(out / "series.csv");
  // header + exactly one record
  CHECK(std::count(series.begin(), series.end(), '\n') == 2);
  CHECK(fs::exists(out / "snapshot_000000.csv"));
}

TEST_CASE("simulate: malformed config exits 2 with diagnostics") {
  const auto dir = sandbox();
  std::ofstream(dir / "bad.json") << "{ \"preset\": \"patch-pair\" }";
  CHECK(run_cmd("simulate --config " + (dir / "bad.json").string()) == 2);
  std::ofstream(dir / "junk.json") << "not json";
  CHECK(run_cmd("simulate --config " + (dir / "junk.json").string()) == 2);
  CHECK(run_cmd("simulate --config " + (dir / "missing.json").string()) == 2);
  CHECK(run_cmd("simulate") == 2);
}

TEST_CASE("simulate: runaway integration exits 3 with partial output") {
  const auto dir = sandbox();
  nlohmann::json j{
      {"preset", "patch-pair"},
      {"params",
       {{"center_r", 1.0}, {"center_z", 0.5}, {"radius", 0.25}, {"amplitude", 1.0}}},
      {"h", 0.1},
      {"epsilon", 0.2},
      {"dt", 1e12},  // one colossal step drives radii negative
      {"t_max", 1e12},
      {"output_every", 1},
      {"seed", 1},
      {"out_dir", (dir / "runaway").string()}};
  std::ofstream(dir / "runaway.json") << j.dump(2);
  CHECK(run_cmd("simulate --config " + (dir / "runaway.json").string()) == 3);
  // the t = 0 record was flushed before the abort
  const auto series = slurp(dir / "runaway" / "series.csv");
  CHECK(std::count(series.begin(), series.end(), '\n') == 2);
}

TEST_CASE("simulate: short run is deterministic and monotone") {
  const auto dir = sandbox();
  const auto out_a = dir / "runA";
  const auto out_b = dir / "runB";
  write_config(dir / "a.json", 0.3, out_a);
  write_config(dir / "b.json", 0.3, out_b);
  REQUIRE(run_cmd("simulate --config " + (dir / "a.json").string()) == 0);
  REQUIRE(run_cmd("simulate --config " + (dir / "b.json").string()) == 0);
  CHECK(slurp(out_a / "series.csv") == slurp(out_b / "series.csv"));
  CHECK(slurp(out_a / "snapshot_000006.csv") ==
        slurp(out_b / "snapshot_000006.csv"));

  // P increases, Z decreases across the rows
  std::ifstream in(out_a / "series.csv");
  std::string line;
  std::getline(in, line);  // header
  double prev_p = -1.0, prev_z = 1e100;
  while (std::getline(in, line)) {
    const auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
    const double p = std::stod(line.substr(c1 + 1));
    const double z = std::stod(line.substr(c2 + 1));
    CHECK(p > prev_p);
    CHECK(z < prev_z);
    prev_p = p;
    prev_z = z;
  }
}

TEST_CASE("dyson CLI") {
  const auto dir = sandbox();
  const auto out = dir / "dyson.csv";
  REQUIRE(run_cmd("dyson --gamma 1 --r0 1 --z0 1 --a0 0.05 --dt 0.01 "
                  "--tmax 2 --core fixed --out " +
                  out.string()) == 0);
  const auto text = slurp(out);
  CHECK(text.rfind("t,R,Z,a,uz_self\n", 0) == 0);

  // gamma = 0: constant columns
  const auto out0 = dir / "dyson0.csv";
  REQUIRE(run_cmd("dyson --gamma 0 --r0 1 --z0 1 --a0 0.05 --dt 0.1 "
                  "--tmax 1 --core fixed --out " +
                  out0.string()) == 0);
  std::ifstream in(out0);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line))
    if (line[0] != '#') CHECK(line.substr(line.find(',')) == ",1,1,0.05,0");

  // collision termination still exits 0 and marks the footer
  const auto outc = dir / "dysonc.csv";
  REQUIRE(run_cmd("dyson --gamma 1 --r0 1 --z0 1 --a0 0.05 --dt 1e6 "
                  "--tmax 2e6 --core fixed --out " +
                  outc.string()) == 0);
  CHECK(slurp(outc).find("# collision=true") != std::string::npos);

  CHECK(run_cmd("dyson --gamma 1 --r0 1 --z0 1 --a0 0.05 --dt 0.01 "
                "--tmax 2 --core cubic --out " +
                out.string()) == 2);
}

TEST_CASE("audit CLI") {
  const auto dir = sandbox();
  CHECK(run_cmd("audit kernels --out " + (dir / "k.json").string()) == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "k.json"));
  REQUIRE(j.is_array());
  bool saw_signs = false;
  for (const auto& rep : j) {
    if (rep.at("name") == "f_signs") {
      saw_signs = true;
      CHECK(rep.at("pass") == true);
    }
  }
  CHECK(saw_signs);

  // inequalities need a system
  CHECK(run_cmd("audit inequalities") == 2);
  write_config(dir / "cfg.json", 0.2, dir / "audit_out");
  CHECK(run_cmd("audit inequalities --config " + (dir / "cfg.json").string() +
                " --out " + (dir / "i.json").string()) == 0);
  const auto ji = nlohmann::json::parse(slurp(dir / "i.json"));
  bool saw_hard = false;
  for (const auto& rep : ji)
    if (rep.at("name") == "p_linfty") {
      saw_hard = true;
      CHECK(rep.at("pass") == true);
    }
  CHECK(saw_hard);

  // audits on a snapshot file
  const auto snap_dir = dir / "for_snap";
  write_config(dir / "snapcfg.json", 0.0, snap_dir);
  REQUIRE(run_cmd("simulate --config " + (dir / "snapcfg.json").string()) == 0);
  CHECK(run_cmd("audit inequalities --snapshot " +
                (snap_dir / "snapshot_000000.csv").string()) == 0);

  CHECK(run_cmd("audit everything") == 2);
  CHECK(run_cmd("audit inequalities --snapshot " +
                (dir / "no_such.csv").string()) == 2);

  // determinism of the audit report at a fixed seed
  CHECK(run_cmd("audit kernels --seed 5 --out " + (dir / "k1.json").string()) == 0);
  CHECK(run_cmd("audit kernels --seed 5 --out " + (dir / "k2.json").string()) == 0);
  CHECK(slurp(dir / "k1.json") == slurp(dir / "k2.json"));
}

TEST_CASE("fit CLI") {
  const auto dir = sandbox();
  // synthetic t^2 column
  {
    std::ofstream f(dir / "quad.csv");
    f << "t,v\n" << std::setprecision(17);
    for (int i = 1; i <= 30; ++i) {
      const double t = 0.1 * i;
      f << t << ',' << 2.0 * t * t << "\n";
    }
  }
  const std::string cmd = bin_path() + " fit " + (dir / "quad.csv").string() +
                          " --column v --tmin 0.05 --tmax 3.5";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  std::string out;
  while (fgets(buf, sizeof(buf), pipe)) out += buf;
  REQUIRE(pclose(pipe) == 0);
  CHECK(out.find("exponent,prefactor,residual") != std::string::npos);
  const auto nl = out.find('\n');
  REQUIRE(nl != std::string::npos);
  CHECK(std::stod(out.substr(nl + 1)) == Approx(2.0).margin(1e-9));
  CHECK(out.find("2/15") != std::string::npos);

  CHECK(run_cmd("fit " + (dir / "quad.csv").string() +
                " --column nope --tmin 0 --tmax 3") == 2);
  CHECK(run_cmd("fit " + (dir / "quad.csv").string() +
                " --column v --tmin 5 --tmax 6") == 2);
}

TEST_CASE("plot CLI") {
  const auto dir = sandbox();
  {
    std::ofstream f(dir / "two.csv");
    f << "t,v\n0,1\n1,2\n";
  }
  REQUIRE(run_cmd("plot " + (dir / "two.csv").string() +
                  " --column v --out " + (dir / "two.svg").string()) == 0);
  const auto svg = slurp(dir / "two.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);

  // log-log with a zero value exits 2
  {
    std::ofstream f(dir / "zero.csv");
    f << "t,v\n0,1\n1,2\n";
  }
  CHECK(run_cmd("plot " + (dir / "zero.csv").string() +
                " --column v --mode loglog --out " +
                (dir / "z.svg").string()) == 2);
  CHECK(run_cmd("plot " + (dir / "two.csv").string() +
                " --column v --mode spiral --out " +
                (dir / "z.svg").string()) == 2);
  CHECK(run_cmd("plot " + (dir / "nope.csv").string() + " --column v --out " +
                (dir / "z.svg").string()) == 2);
}
