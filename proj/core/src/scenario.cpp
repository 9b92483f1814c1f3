#include "biphoton/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "biphoton/svg.hpp"
#include "biphoton/units.hpp"

namespace biphoton::scenario {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using units::Dimension;

void check_keys(const json& obj, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError("section '" + section + "' must be an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + key + "' in section '" + section + "'");
}

std::string get_string(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(std::string("field '") + key + "' must be a quantity string");
  return v.get<std::string>();
}

double quantity(const json& obj, const char* key, Dimension dim) {
  try {
    return units::parse_quantity(get_string(obj, key), dim);
  } catch (const json::exception&) {
    throw ConfigError(std::string("missing required field '") + key + "'");
  }
}

double quantity_or(const json& obj, const char* key, Dimension dim, double fallback) {
  if (!obj.contains(key)) return fallback;
  return units::parse_quantity(get_string(obj, key), dim);
}

// widths/centers accepted either in rad/s or as wavelength at lambda_ref
double spectral_quantity(const std::string& text, double lambda_ref) {
  if (text.find("rad/s") != std::string::npos)
    return units::parse_quantity(text, Dimension::angular_frequency);
  const double d_lambda = units::parse_quantity(text, Dimension::length);
  return 2 * std::numbers::pi * constants::c_light * d_lambda / (lambda_ref * lambda_ref);
}

std::string sanitize(std::string s) {
  std::string out;
  for (char ch : s) {
    if (ch == ' ') continue;
    if (ch == '/') { out += "per"; continue; }
    out += ch;
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_xy_csv(const std::string& path, const io::Header& header,
                  const std::string& columns, const std::vector<double>& x,
                  const std::vector<double>& y) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  for (const auto& [key, value] : header) out << "# " << key << ": " << value << "\n";
  out << columns << "\n";
  for (size_t i = 0; i < x.size(); ++i) out << fmt(x[i]) << "," << fmt(y[i]) << "\n";
}

} // namespace

ScenarioConfig parse_config(const std::string& json_text, const std::string& name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, "(root)",
             {"name", "crystal", "pump", "fiber", "filters", "psf", "grid",
              "sampling", "analysis", "outputs", "options"});

  ScenarioConfig c;
  c.name = j.value("name", name);

  try {
    if (j.contains("crystal")) {
      const auto& cr = j.at("crystal");
      check_keys(cr, "crystal", {"length", "pump_wavelength", "cut_angle"});
      c.crystal.length = quantity_or(cr, "length", Dimension::length, c.crystal.length);
      c.crystal.pump_wavelength =
          quantity_or(cr, "pump_wavelength", Dimension::length, c.crystal.pump_wavelength);
      if (cr.contains("cut_angle") && cr.at("cut_angle") != "auto") {
        c.solve_theta = false;
        c.crystal.theta = units::parse_quantity(get_string(cr, "cut_angle"), Dimension::angle);
      }
    }
    c.pump.wavelength = c.crystal.pump_wavelength;

    if (j.contains("pump")) {
      const auto& p = j.at("pump");
      check_keys(p, "pump", {"bandwidth", "modulation", "norm"});
      c.pump.bandwidth = quantity_or(p, "bandwidth", Dimension::length, c.pump.bandwidth);
      if (p.contains("norm")) {
        const std::string n = get_string(p, "norm");
        if (n == "peak") c.pump.norm = PumpSpec::Norm::peak;
        else if (n == "energy") c.pump.norm = PumpSpec::Norm::energy;
        else throw ConfigError("pump norm must be 'peak' or 'energy'");
      }
      if (p.contains("modulation")) {
        const auto& m = p.at("modulation");
        check_keys(m, "pump.modulation",
                   {"separation", "splitter_length", "phase", "amplitude_ratio"});
        PumpModulation mod;
        mod.phase = quantity_or(m, "phase", Dimension::angle, 0.0);
        mod.amplitude_ratio = m.value("amplitude_ratio", 1.0);
        if (m.contains("separation") == m.contains("splitter_length"))
          throw ConfigError("modulation needs exactly one of 'separation' or 'splitter_length'");
        if (m.contains("separation")) {
          mod.separation = quantity(m, "separation", Dimension::time);
        } else {
          const double len = quantity(m, "splitter_length", Dimension::length);
          mod = pump::double_pulse_from_crystal(len, mod.phase, c.pump.wavelength);
          mod.amplitude_ratio = m.value("amplitude_ratio", 1.0);
        }
        if (mod.separation > 0) c.pump.modulation = mod;
      }
    }
    pump::validate(c.pump);

    if (j.contains("fiber")) {
      const auto& f = j.at("fiber");
      check_keys(f, "fiber", {"length", "gvd"});
      c.fiber.length = quantity_or(f, "length", Dimension::length, 0.0);
      c.fiber.gvd = quantity_or(f, "gvd", Dimension::gvd, c.fiber.gvd);
      if (c.fiber.length < 0) throw ConfigError("fiber length must be >= 0");
    }

    const double lambda_dc = 2 * c.pump.wavelength; // degenerate photons
    if (j.contains("filters")) {
      if (!j.at("filters").is_array()) throw ConfigError("'filters' must be an array");
      for (const auto& f : j.at("filters")) {
        check_keys(f, "filters[]", {"channel", "bandwidth", "center", "renormalize", "label"});
        FilterSpec spec;
        const std::string channel = get_string(f, "channel");
        if (channel == "signal") spec.channel = Channel::signal;
        else if (channel == "idler") spec.channel = Channel::idler;
        else throw ConfigError("filter channel must be 'signal' or 'idler'");
        const std::string bw = get_string(f, "bandwidth");
        spec.fwhm = spectral_quantity(bw, lambda_dc);
        if (f.contains("center"))
          spec.center = spectral_quantity(get_string(f, "center"), lambda_dc);
        spec.renormalize = f.value("renormalize", false);
        if (!(spec.fwhm > 0)) throw ConfigError("filter bandwidth must be positive");
        c.filters.push_back(spec);
        c.filter_labels.push_back(
            f.contains("label") ? get_string(f, "label") : channel + "-" + sanitize(bw));
      }
    }

    if (j.contains("psf")) {
      const auto& p = j.at("psf");
      check_keys(p, "psf", {"fwhm", "file"});
      if (p.contains("fwhm") == p.contains("file"))
        throw ConfigError("psf needs exactly one of 'fwhm' or 'file'");
      if (p.contains("fwhm"))
        c.psf = PsfSpec::gaussian(quantity(p, "fwhm", Dimension::time));
      else
        c.psf = PsfSpec::tabulated(io::read_distribution_csv(get_string(p, "file")));
    }

    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      check_keys(g, "grid", {"points", "omega_max"});
      const int n = g.value("points", 1024);
      const double omax =
          quantity_or(g, "omega_max", Dimension::angular_frequency, 8e13);
      c.grid = FrequencyGrid(n, omax);
    }

    if (j.contains("sampling")) {
      const auto& s = j.at("sampling");
      check_keys(s, "sampling", {"events", "seed", "background"});
      c.sampling.events = s.value("events", std::uint64_t(0));
      c.sampling.seed = s.value("seed", std::uint64_t(1));
      c.sampling.background = s.value("background", 0.0);
      if (c.sampling.background < 0) throw ConfigError("background must be >= 0");
    }

    if (j.contains("analysis")) {
      const auto& a = j.at("analysis");
      check_keys(a, "analysis",
                 {"deconvolve_psf", "fringe_peak_floor", "fringe_dip_ratio"});
      c.analysis.deconvolve_psf = a.value("deconvolve_psf", false);
      c.analysis.fringe_peak_floor = a.value("fringe_peak_floor", 0.1);
      c.analysis.fringe_dip_ratio = a.value("fringe_dip_ratio", 0.8);
    }

    if (j.contains("outputs")) {
      const auto& o = j.at("outputs");
      check_keys(o, "outputs", {"directory", "formats"});
      c.outputs.directory = o.value("directory", c.outputs.directory);
      if (o.contains("formats")) {
        c.outputs.csv = c.outputs.svg = false;
        for (const auto& f : o.at("formats")) {
          const std::string s = f.get<std::string>();
          if (s == "csv") c.outputs.csv = true;
          else if (s == "svg") c.outputs.svg = true;
          else if (s == "tpsa_csv") c.outputs.tpsa_csv = true;
          else if (s == "tpsa_binary") c.outputs.tpsa_binary = true;
          else throw ConfigError("unknown output format '" + s + "'");
        }
      }
    }

    if (j.contains("options")) {
      const auto& o = j.at("options");
      check_keys(o, "options", {"enforce_span", "include_pm_phase"});
      c.enforce_span = o.value("enforce_span", true);
      c.include_pm_phase = o.value("include_pm_phase", false);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config schema violation: ") + e.what());
  }

  // canonical resolved config (SI units) for output headers
  json r;
  r["name"] = c.name;
  r["crystal"] = {{"length_m", c.crystal.length},
                  {"pump_wavelength_m", c.crystal.pump_wavelength},
                  {"cut_angle", c.solve_theta ? json("auto") : json(c.crystal.theta)}};
  r["pump"] = {{"bandwidth_m", c.pump.bandwidth},
               {"norm", c.pump.norm == PumpSpec::Norm::peak ? "peak" : "energy"}};
  if (c.pump.modulation)
    r["pump"]["modulation"] = {{"separation_s", c.pump.modulation->separation},
                               {"phase_rad", c.pump.modulation->phase},
                               {"amplitude_ratio", c.pump.modulation->amplitude_ratio}};
  r["fiber"] = {{"length_m", c.fiber.length}, {"gvd_s2_per_m", c.fiber.gvd}};
  r["filters"] = json::array();
  for (size_t i = 0; i < c.filters.size(); ++i)
    r["filters"].push_back(
        {{"channel", c.filters[i].channel == Channel::signal ? "signal" : "idler"},
         {"center_rad_s", c.filters[i].center},
         {"fwhm_rad_s", c.filters[i].fwhm},
         {"label", c.filter_labels[i]}});
  if (c.psf) r["psf_fwhm_s"] = c.psf->fwhm;
  r["grid"] = {{"points", c.grid.n}, {"omega_max_rad_s", c.grid.omega_max}};
  r["sampling"] = {{"events", c.sampling.events},
                   {"seed", c.sampling.seed},
                   {"background", c.sampling.background}};
  r["analysis"] = {{"deconvolve_psf", c.analysis.deconvolve_psf},
                   {"fringe_peak_floor", c.analysis.fringe_peak_floor},
                   {"fringe_dip_ratio", c.analysis.fringe_dip_ratio}};
  r["enforce_span"] = c.enforce_span;
  r["include_pm_phase"] = c.include_pm_phase;
  c.resolved = r.dump();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), fs::path(path).stem().string());
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  ScenarioResult result;

  std::string outdir = config.outputs.directory;
  if (const char* env = std::getenv(output_dir_env); env && *env) outdir = env;
  fs::create_directories(outdir);
  result.output_directory = outdir;
  auto path = [&](const std::string& file) { return (fs::path(outdir) / file).string(); };
  auto note_file = [&](const std::string& p) { result.files.push_back(p); };

  const double theta =
      config.solve_theta
          ? dispersion::solve_phase_matching_angle(config.crystal.pump_wavelength)
          : config.crystal.theta;

  tpsa::BuildOptions build_opt;
  build_opt.theta = theta;
  build_opt.enforce_span = config.enforce_span;
  build_opt.include_pm_phase = config.include_pm_phase;
  const TpsaGrid base =
      tpsa::build_tpsa(config.grid, config.pump, config.crystal, build_opt);

  const double scale = config.fiber.gvd * config.fiber.length;
  const double psf_fwhm =
      config.psf ? (config.psf->fwhm > 0
                        ? config.psf->fwhm
                        : measurement::fwhm(config.psf->table).fwhm)
                 : 0.0;

  io::Header header{{"scenario", config.name}, {"config", config.resolved}};

  struct Case {
    std::string name;
    DelayDistribution measured;
    double width = 0;
    FringeInfo fringe;
  };
  std::vector<Case> cases;

  analysis::FringeOptions fringe_opt{config.analysis.fringe_peak_floor,
                                     config.analysis.fringe_dip_ratio};

  for (size_t ci = 0; ci <= config.filters.size(); ++ci) {
    Case cs;
    DelayDistribution raw;
    if (ci == 0) {
      cs.name = "unfiltered";
      raw = measurement::delay_projection(base, config.fiber);
    } else {
      cs.name = config.filter_labels[ci - 1];
      raw = measurement::delay_projection(
          tpsa::apply_filter(base, config.filters[ci - 1]), config.fiber);
    }
    raw.normalize_peak();
    io::Header h = header;
    h.emplace_back("case", cs.name);
    if (config.outputs.csv) {
      const std::string p = path("delay_" + cs.name + ".csv");
      io::write_distribution_csv(p, raw, h);
      note_file(p);
    }

    cs.measured = config.psf ? measurement::convolve_psf(raw, *config.psf) : raw;
    cs.measured.normalize_peak();
    if (config.psf && config.outputs.csv) {
      const std::string p = path("delay_" + cs.name + "_psf.csv");
      io::write_distribution_csv(p, cs.measured, h);
      note_file(p);
    }

    cs.width = measurement::fwhm(cs.measured).fwhm;
    if (config.analysis.deconvolve_psf && config.psf)
      cs.width = measurement::quadrature_deconvolve(cs.width, psf_fwhm);
    cs.fringe = analysis::fringe_detect(cs.measured, fringe_opt);

    result.metrics["fwhm_s_" + cs.name] = cs.width;
    result.metrics["fringe_" + cs.name] = cs.fringe.detected ? 1.0 : 0.0;

    if (config.sampling.events > 0) {
      const auto hist = measurement::sample_coincidences(
          cs.measured, config.sampling.events,
          config.sampling.seed + std::uint64_t(ci), config.sampling.background);
      if (config.outputs.csv) {
        const std::string p = path("hist_" + cs.name + ".csv");
        io::write_histogram_csv(p, hist, h);
        note_file(p);
      }
    }
    result.case_names.push_back(cs.name);
    cases.push_back(std::move(cs));
  }

  // pump spectrum over the pump-detuning range covered by the grid
  {
    std::vector<double> x(config.grid.n), y(config.grid.n);
    double peak = 0;
    for (int i = 0; i < config.grid.n; ++i) {
      x[i] = config.grid.omega(i);
      y[i] = std::norm(pump::pump_amplitude(x[i], config.pump));
      peak = std::max(peak, y[i]);
    }
    if (peak > 0)
      for (double& v : y) v /= peak;
    if (config.outputs.csv) {
      const std::string p = path("pump_spectrum.csv");
      write_xy_csv(p, header, "omega_rad_s,intensity", x, y);
      note_file(p);
    }
    if (config.outputs.svg) {
      const std::string p = path("pump_spectrum.svg");
      svg::write_plot(p, config.name + ": pump spectral intensity",
                      "pump detuning (rad/s)", "normalized intensity",
                      {{"pump", x, y, ""}});
      note_file(p);
    }
  }

  if (config.outputs.svg) {
    std::vector<svg::Series> series;
    for (const auto& cs : cases) {
      svg::Series s;
      s.label = cs.name;
      s.x.resize(cs.measured.density.size());
      for (size_t i = 0; i < s.x.size(); ++i) s.x[i] = cs.measured.t(int(i)) * 1e9;
      s.y = cs.measured.density;
      series.push_back(std::move(s));
    }
    const std::string p = path("delay.svg");
    svg::write_plot(p, config.name + ": signal-idler delay distributions",
                    "delay (ns)", "normalized coincidences", series);
    note_file(p);

    // |F|^2 heatmap, downsampled
    const int n = config.grid.n;
    const int ds = std::max(1, n / 160);
    const int m = n / ds;
    std::vector<double> img(size_t(m) * m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) {
        double acc = 0;
        for (int a = 0; a < ds; ++a)
          for (int b = 0; b < ds; ++b)
            acc += std::norm(base.at(i * ds + a, j * ds + b));
        img[size_t(j) * m + i] = acc; // x = signal, y = idler
      }
    const std::string ph = path("tpsa.svg");
    svg::write_heatmap(ph, config.name + ": |F(Omega_s, Omega_i)|^2",
                       "Omega_s (rad/s)", "Omega_i (rad/s)", m, m,
                       config.grid.omega(0) + 0.5 * (ds - 1) * config.grid.step(),
                       ds * config.grid.step(),
                       config.grid.omega(0) + 0.5 * (ds - 1) * config.grid.step(),
                       ds * config.grid.step(), img);
    note_file(ph);
  }

  if (config.outputs.tpsa_csv) {
    const std::string p = path("tpsa.csv");
    io::write_tpsa_csv(p, base, header);
    note_file(p);
  }
  if (config.outputs.tpsa_binary) {
    const std::string p = path("tpsa.bin");
    io::write_tpsa_binary(p, base);
    note_file(p);
  }

  // tilt and R need one signal-filtered and one idler-filtered case
  int sig_case = -1, idl_case = -1;
  for (size_t i = 0; i < config.filters.size(); ++i) {
    if (config.filters[i].channel == Channel::signal && sig_case < 0)
      sig_case = int(i) + 1;
    if (config.filters[i].channel == Channel::idler && idl_case < 0)
      idl_case = int(i) + 1;
  }
  AnalysisReport& report = result.report;
  report.width_unfiltered = cases[0].width / scale;
  report.fringe = cases[0].fringe;
  if (sig_case > 0 && idl_case > 0) {
    // a filter in one channel pins that photon; the remaining spread is the
    // other photon's width
    report.width_idler_cut = cases[sig_case].width / scale;  // delta_Omega_i
    report.width_signal_cut = cases[idl_case].width / scale; // delta_Omega_s
    report.tilt = analysis::tilt_from_widths(report.width_signal_cut,
                                             report.width_idler_cut);
    std::tie(report.r_from_s, report.r_from_i) = analysis::entanglement_R(
        report.width_unfiltered, report.width_signal_cut, report.width_idler_cut,
        report.tilt);
    result.has_tilt = true;
    result.metrics["tilt_deg"] = report.tilt * 180 / std::numbers::pi;
    result.metrics["R_from_s"] = report.r_from_s;
    result.metrics["R_from_i"] = report.r_from_i;
    result.metrics["R_consistency"] =
        analysis::consistency_check(report.r_from_s, report.r_from_i);
  }
  result.metrics["theta_pm_rad"] = theta;

  {
    const std::string p = path("report.txt");
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot open output file: " + p);
    out << "scenario: " << config.name << "\n";
    out << "theta_pm_rad: " << fmt(theta) << "\n";
    out << "cases:";
    for (const auto& cs : cases) out << " " << cs.name;
    out << "\n";
    for (const auto& cs : cases) {
      out << "fwhm_s_" << cs.name << ": " << fmt(cs.width) << "\n";
      out << "fringe_" << cs.name << ": " << (cs.fringe.detected ? "true" : "false");
      if (cs.fringe.detected)
        out << " period_s: " << fmt(cs.fringe.period)
            << " visibility: " << fmt(cs.fringe.visibility);
      out << "\n";
    }
    if (result.has_tilt) {
      out << "delta_omega_rad_s: " << fmt(report.width_unfiltered) << "\n";
      out << "delta_omega_s_rad_s: " << fmt(report.width_signal_cut) << "\n";
      out << "delta_omega_i_rad_s: " << fmt(report.width_idler_cut) << "\n";
      out << "tilt_deg: " << fmt(report.tilt * 180 / std::numbers::pi) << "\n";
      out << "R_from_s: " << fmt(report.r_from_s) << "\n";
      out << "R_from_i: " << fmt(report.r_from_i) << "\n";
    }
    if (!tpsa::far_field_valid(config.fiber,
                               pump::bandwidth_to_delta_omega(
                                   config.pump.bandwidth, config.pump.wavelength)))
      out << "warning: fiber may be too short for the far-field regime\n";
    out << "config: " << config.resolved << "\n";
    note_file(p);
  }
  {
    const std::string p = path("config_resolved.json");
    std::ofstream out(p);
    out << config.resolved << "\n";
    note_file(p);
  }
  return result;
}

} // namespace biphoton::scenario
