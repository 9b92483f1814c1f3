// Scenario-driven simulator front end: build a two-photon spectral amplitude,
// run it through the fiber spectrograph pipeline, and emit CSV/SVG artifacts.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "biphoton/io.hpp"
#include "biphoton/scenario.hpp"
#include "presets_data.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config_error = 1;
constexpr int exit_domain_error = 2;
constexpr int exit_compare_failed = 3;

void print_result(const biphoton::ScenarioResult& result) {
  std::cout << "wrote " << result.files.size() << " files to "
            << result.output_directory << "\n";
  for (const auto& [key, value] : result.metrics)
    std::cout << key << ": " << value << "\n";
}

int run_config(biphoton::ScenarioConfig config, const std::string& outdir) {
  if (!outdir.empty()) config.outputs.directory = outdir;
  print_result(biphoton::scenario::run_scenario(config));
  return exit_ok;
}

std::string_view preset_text(const std::string& name) {
  for (const auto& [pname, text] : kPresets)
    if (pname == name) return text;
  throw biphoton::ConfigError("unknown preset '" + name + "' (see `presets list`)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-photon spectral amplitude simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* run = app.add_subcommand("run", "run a scenario config file");
  run->add_option("config", config_path, "JSON scenario config")->required();
  run->add_option("--out", out_dir, "override output directory");

  std::string file_a, file_b;
  double tolerance = 0.0;
  auto* compare = app.add_subcommand("compare", "compare two distribution CSVs");
  compare->add_option("a", file_a)->required();
  compare->add_option("b", file_b)->required();
  compare->add_option("--tol", tolerance, "max allowed peak-normalized deviation")
      ->required();

  auto* presets = app.add_subcommand("presets", "bundled scenarios");
  presets->require_subcommand(1);
  auto* presets_list = presets->add_subcommand("list", "list bundled scenarios");
  std::string preset_name;
  auto* presets_run = presets->add_subcommand("run", "run a bundled scenario");
  presets_run->add_option("name", preset_name)->required();
  presets_run->add_option("--out", out_dir, "override output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config_error;
  }

  try {
    if (*run) return run_config(biphoton::scenario::load_config(config_path), out_dir);

    if (*compare) {
      const auto a = biphoton::io::read_distribution_csv(file_a);
      const auto b = biphoton::io::read_distribution_csv(file_b);
      const auto r = biphoton::io::compare_distributions(a, b);
      const bool pass = r.max_dev <= tolerance;
      std::printf("%s max_dev=%.6g l2_dev=%.6g tol=%.6g\n",
                  pass ? "PASS" : "FAIL", r.max_dev, r.l2_dev, tolerance);
      return pass ? exit_ok : exit_compare_failed;
    }

    if (*presets_list) {
      for (const auto& [name, text] : kPresets) std::cout << name << "\n";
      return exit_ok;
    }
    if (*presets_run) {
      auto config = biphoton::scenario::parse_config(
          std::string(preset_text(preset_name)), preset_name);
      return run_config(std::move(config), out_dir);
    }
  } catch (const biphoton::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return exit_config_error;
  } catch (const std::domain_error& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return exit_domain_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_domain_error;
  }
  return exit_ok;
}
