#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biphoton/analysis.hpp"
#include "biphoton/io.hpp"

namespace biphoton {

struct ScenarioConfig {
  std::string name = "scenario";

  CrystalSpec crystal;
  bool solve_theta = true; // "cut_angle": "auto"
  PumpSpec pump;
  FiberSpec fiber;

  std::vector<FilterSpec> filters;
  std::vector<std::string> filter_labels;

  std::optional<PsfSpec> psf;
  FrequencyGrid grid{1024, 8e13};

  struct Sampling {
    std::uint64_t events = 0; // 0 disables sampling
    std::uint64_t seed = 1;
    double background = 0.0;
  } sampling;

  struct Analysis {
    bool deconvolve_psf = false;
    double fringe_peak_floor = 0.1;
    double fringe_dip_ratio = 0.8;
  } analysis;

  struct Outputs {
    std::string directory = "out";
    bool csv = true;
    bool svg = true;
    bool tpsa_csv = false;
    bool tpsa_binary = false;
  } outputs;

  bool enforce_span = true;
  bool include_pm_phase = false;

  std::string resolved; // canonical resolved config (JSON, SI units)
};

struct ScenarioResult {
  std::string output_directory;
  std::vector<std::string> files;
  std::vector<std::string> case_names; // "unfiltered" + one per filter
  std::map<std::string, double> metrics;
  AnalysisReport report;
  bool has_tilt = false; // both a signal- and an idler-filtered case exist
};

namespace scenario {

// Name of the environment variable overriding outputs.directory.
inline constexpr const char* output_dir_env = "BIPHOTON_OUTPUT_DIR";

ScenarioConfig parse_config(const std::string& json_text, const std::string& name);
ScenarioConfig load_config(const std::string& path);

// Runs the full pipeline and writes CSV/SVG artifacts plus report.txt.
// ConfigError for schema/coverage problems, std::domain_error for numeric
// domain violations (e.g. zero fiber length).
ScenarioResult run_scenario(const ScenarioConfig& config);

} // namespace scenario
} // namespace biphoton
