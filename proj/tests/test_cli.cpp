#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include <sys/wait.h>

#include "biphoton/io.hpp"

namespace fs = std::filesystem;

namespace {

int run_tool(const std::string& args) {
  const std::string cmd = std::string(BIPHOTON_TOOL_PATH) + " " + args +
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string temp_dir(const std::string& tag) {
  const auto p = fs::temp_directory_path() / ("biphoton_cli_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

void write_gaussian_csv(const std::string& path, double t_center) {
  biphoton::DelayDistribution d;
  d.dt = 1e-12;
  d.t0 = -500e-12;
  d.density.resize(1001);
  for (int i = 0; i <= 1000; ++i)
    d.density[i] = std::exp(-std::pow((d.t(i) - t_center) / 100e-12, 2) / 2);
  biphoton::io::write_distribution_csv(path, d);
}

} // namespace

TEST_CASE("exit code 0 on success") {
  CHECK(run_tool("presets list") == 0);

  const std::string dir = temp_dir("ok");
  write_gaussian_csv(dir + "/a.csv", 0.0);
  write_gaussian_csv(dir + "/b.csv", 0.0);
  CHECK(run_tool("compare " + dir + "/a.csv " + dir + "/b.csv --tol 1e-9") == 0);
}

TEST_CASE("exit code 1 on config errors") {
  CHECK(run_tool("run /nonexistent/config.json") == 1);
  CHECK(run_tool("presets run not-a-preset") == 1);
  CHECK(run_tool("run") == 1); // missing required argument

  const std::string dir = temp_dir("badcfg");
  std::ofstream(dir + "/bad.json") << R"({"crystal": {"length": "5 furlong"}})";
  CHECK(run_tool("run " + dir + "/bad.json") == 1);
}

TEST_CASE("exit code 2 on numeric domain errors") {
  const std::string dir = temp_dir("domain");
  std::ofstream(dir + "/zero_fiber.json") << R"({
    "name": "zero",
    "fiber": { "length": "0 m" },
    "grid": { "points": 256, "omega_max": "8e13 rad/s" },
    "outputs": { "directory": ")" << dir << R"(/out", "formats": ["csv"] }
  })";
  CHECK(run_tool("run " + dir + "/zero_fiber.json") == 2);
}

TEST_CASE("exit code 3 when a comparison exceeds the tolerance") {
  const std::string dir = temp_dir("cmp");
  write_gaussian_csv(dir + "/a.csv", 0.0);
  write_gaussian_csv(dir + "/b.csv", 20e-12);
  CHECK(run_tool("compare " + dir + "/a.csv " + dir + "/b.csv --tol 0") == 3);
  // generous tolerance turns the same pair into a pass
  CHECK(run_tool("compare " + dir + "/a.csv " + dir + "/b.csv --tol 0.5") == 0);
}

TEST_CASE("run writes artifacts to --out") {
  const std::string dir = temp_dir("runout");
  std::ofstream(dir + "/cfg.json") << R"({
    "name": "cli-smoke",
    "fiber": { "length": "500 m" },
    "grid": { "points": 256, "omega_max": "8e13 rad/s" },
    "outputs": { "directory": "ignored", "formats": ["csv"] }
  })";
  CHECK(run_tool("run " + dir + "/cfg.json --out " + dir + "/out") == 0);
  CHECK(fs::exists(dir + "/out/report.txt"));
  CHECK(fs::exists(dir + "/out/delay_unfiltered.csv"));
  CHECK_FALSE(fs::exists("ignored"));
}
