#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "hcrystal/error.hpp"

using namespace hcrystal;
using namespace hcrystal::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(HCRYSTAL_TEST_TMP) / name;
  fs::remove_all(dir);
  return dir;
}

RunOutcome quiet(std::string_view cmd, const RunConfig& c) {
  std::ostringstream out, err;
  return run(cmd, c, out, err);
}

}  // namespace

TEST_CASE("empty config names the missing keys") {
  const RunConfig c;
  try {
    c.params();
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    for (const auto& k : required_keys()) CHECK(what.find(k) != std::string::npos);
    CHECK(what.find("fig6") != std::string::npos);
  }
  std::ostringstream out, err;
  CHECK(run("energy", c, out, err).exit_code == kConfigError);
  CHECK(err.str().find("n_particles") != std::string::npos);
}

TEST_CASE("presets") {
  const auto f6 = preset_config("fig6");
  CHECK(*f6.n_particles == 4);
  CHECK(*f6.kappa == 0.0);
  CHECK(*f6.lambda == 1.0);
  CHECK(*f6.delta_q == 0.1);
  CHECK(f6.l_max == 3000);
  CHECK(f6.grid.points == 91);
  CHECK(f6.grid.spacing == 0.12);
  const auto f3 = preset_config("fig3");
  CHECK(*f3.kappa == *f3.lambda);
  CHECK(*f3.d_max == 0);
  for (const auto& name : preset_names()) CHECK_NOTHROW(preset_config(name).params());
  CHECK_THROWS_AS(preset_config("fig9"), ConfigError);
}

TEST_CASE("config parsing") {
  std::istringstream in("# comment\npreset = fig4\nl_max = 300  # trailing\n\nd_max = all\nworkers=2\n");
  const auto c = parse_config(in);
  CHECK(c.preset == "fig4");
  CHECK(c.l_max == 300);
  CHECK_FALSE(c.d_max.has_value());
  CHECK(c.workers == 2);
  CHECK(c.to_map().at("d_max") == "all");

  RunConfig d;
  try {
    apply_setting(d, "bogus", "1");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "bogus");
  }
  CHECK_THROWS_AS(apply_setting(d, "l_max", "abc"), ConfigError);
  CHECK_THROWS_AS(apply_setting(d, "l_max", "0"), ConfigError);
  CHECK_THROWS_AS(apply_setting(d, "beta", "-1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(d, "material", "argon"), ConfigError);
  std::istringstream bad("no equals sign\n");
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  for (const auto& [k, v] : c.to_map()) {
    RunConfig e;
    CHECK_NOTHROW(apply_setting(e, k, v.empty() && k != "preset" && k != "output_dir" ? "1" : v));
  }
}

TEST_CASE("worker override from the environment") {
  ::setenv("HCRYSTAL_WORKERS", "3", 1);
  CHECK(workers_from_env(0) == 3);
  ::setenv("HCRYSTAL_WORKERS", "-2", 1);
  CHECK_THROWS_AS(workers_from_env(0), ConfigError);
  ::unsetenv("HCRYSTAL_WORKERS");
  CHECK(workers_from_env(5) == 5);
}

TEST_CASE("spectrum output files and sidecar") {
  auto c = preset_config("fig2");
  c.l_max = 200;
  c.output_dir = scratch("spectrum").string();
  const auto o = quiet("spectrum", c);
  REQUIRE(o.exit_code == kSuccess);
  CHECK(o.files.size() == 4);
  const auto levels = read_csv(fs::path(c.output_dir) / "levels.csv");
  REQUIRE(levels.size() == 201);
  CHECK(levels[0] == std::vector<std::string>{"rank", "quanta", "energy"});
  CHECK(levels[1][1] == "0;0;0;0");
  const auto meta = nlohmann::json::parse(slurp(fs::path(c.output_dir) / "levels.json"));
  CHECK(meta["command"] == "spectrum");
  CHECK(meta["rows"] == 200);
  CHECK(meta["config"]["l_max"] == "200");
  CHECK(meta.contains("runtime_seconds"));
  CHECK(meta.contains("version"));
}

TEST_CASE("reruns give identical bytes") {
  auto c = preset_config("fig7");
  c.n_particles = 2;
  c.l_max = 30;
  c.sweep.points = 8;
  c.workers = 2;
  c.output_dir = scratch("run_a").string();
  REQUIRE(quiet("energy", c).exit_code == kSuccess);
  const auto a = slurp(fs::path(c.output_dir) / "energy.csv");
  c.output_dir = scratch("run_b").string();
  c.workers = 1;
  REQUIRE(quiet("energy", c).exit_code == kSuccess);
  CHECK(a == slurp(fs::path(c.output_dir) / "energy.csv"));
  CHECK(!a.empty());
}

TEST_CASE("cutoff study and level ladder through the CLI") {
  auto c = preset_config("fig3");
  c.sweep = {0.05, 10.0, 60};
  c.output_dir = scratch("fig3_5000").string();
  REQUIRE(quiet("energy", c).exit_code == kSuccess);
  const auto big = read_csv(fs::path(c.output_dir) / "energy.csv");
  c.l_max = 500;
  c.output_dir = scratch("fig3_500").string();
  REQUIRE(quiet("energy", c).exit_code == kSuccess);
  const auto small = read_csv(fs::path(c.output_dir) / "energy.csv");
  REQUIRE(big.size() == small.size());
  int checked = 0;
  for (std::size_t i = 1; i < big.size(); ++i) {
    const double beta = std::stod(big[i][0]);
    if (beta < 0.8) continue;
    const double eb = std::stod(big[i][3]), es = std::stod(small[i][3]);
    CHECK(std::abs(eb - es) / eb < 5e-3);
    ++checked;
  }
  CHECK(checked > 10);

  auto s = preset_config("fig2");
  s.output_dir = scratch("fig2").string();
  REQUIRE(quiet("spectrum", s).exit_code == kSuccess);
  const auto rows = read_csv(fs::path(s.output_dir) / "levels.csv");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 100; i < rows.size(); ++i) {
    const double x = std::log(std::stod(rows[i][0])), y = std::log(std::stod(rows[i][2]));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope - 0.25) < 0.05);
}

TEST_CASE("other commands") {
  auto c = preset_config("fig6");
  c.l_max = 10;
  c.grid = {31, 0.32};
  const auto p = quiet("permutations", c);
  REQUIRE(p.exit_code == kSuccess);
  CHECK(p.tables[0].rows.size() == 9);

  const auto chi = quiet("chi", c);
  REQUIRE(chi.exit_code == kSuccess);
  CHECK(chi.tables[0].rows.size() == 10);
  CHECK(std::abs(std::stod(chi.tables[0].rows[0][4]) - 1.0) < 1e-2);

  auto d = preset_config("fig7");
  d.n_particles = 2;
  d.l_max = 20;
  const auto dens = quiet("density", d);
  REQUIRE(dens.exit_code == kSuccess);
  CHECK(dens.tables[0].header.size() == 4);

  const auto spin = quiet("spin-demo", RunConfig{});
  REQUIRE(spin.exit_code == kSuccess);
  CHECK(spin.tables[0].rows.size() == 64);

  std::ostringstream out, err;
  CHECK(run("frobnicate", c, out, err).exit_code == kConfigError);
}

TEST_CASE("exit codes") {
  auto c = preset_config("fig2");
  c.n_particles = 11;
  c.d_max.reset();
  CHECK(quiet("permutations", c).exit_code == kResourceCap);

  auto m = preset_config("fig7");
  m.memory_cap_mb = 1;
  m.grid = {31, 0.32};
  CHECK(quiet("density", m).exit_code == kResourceCap);

  auto g = preset_config("fig3");
  g.grid = {5, 0.14};
  g.d_max = 2;
  CHECK(quiet("energy", g).exit_code == kConfigError);

  CHECK(sweep_exit_code({true, true, true}, true) == kPoleOnly);
  CHECK(sweep_exit_code({true, false, true}, true) == kSuccess);
  CHECK(sweep_exit_code({true, true}, false) == kSuccess);
}
