// Command-line front door for the fast-light interferometer simulator:
// dispersion profiles, CAD tuning, single-scenario reports, enhancement
// curves, shot-noise floors, and parameter sweeps.
//
// Exit codes: 0 success; 2 configuration/validation error (the message
// names the offending key); 3 numeric failure (the message names the
// pipeline stage).  Results go to --out (default stdout); diagnostics go
// to stderr only.  File output is atomic: write to a temp file, rename
// on success, so no partial CSV is ever observed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fastlight/config.hpp"
#include "fastlight/pipeline.hpp"

namespace {

using namespace fastlight;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path = "-";
  int jobs = 1;
  double band_hz = 0.0;  // 0 = keep config value
  bool flat_index = false;
};

constexpr const char* kScenarioKeys =
    "Config keys honored:\n"
    "  medium.coupling_A medium.omega1_rabi medium.omega2_rabi\n"
    "  medium.omega_res1 medium.pump_separation medium.gamma\n"
    "  cavity.length_L cavity.mode_index cavity.linewidth_hz cavity.n0\n"
    "  cavity.omega0 perturbation.sigma perturbation.delta_S\n"
    "  detection.photon_rate detection.quantum_eff\n"
    "  detection.cavity_linewidth_hz detection.integration_time_s\n"
    "  bandwidth_hz cad_target_slope cad_tune_knob q_fraction_source\n";

void add_common(CLI::App* cmd, CommonArgs& args, bool with_jobs = false) {
  cmd->add_option("--config", args.config_path,
                  "Scenario config file (JSON); built-in defaults when omitted");
  cmd->add_option("--set", args.overrides,
                  "Override a config key, e.g. --set medium.gamma=3.1e6")
      ->take_all();
  cmd->add_option("--out", args.out_path, "Output path, or - for stdout");
  cmd->add_option("--band-hz", args.band_hz,
                  "Override the second-order-dispersion evaluation bandwidth");
  cmd->add_flag("--flat-index", args.flat_index,
                "Debug: zero all dispersion (beats collapse to the "
                "dispersionless value)");
  if (with_jobs) {
    cmd->add_option("--jobs", args.jobs, "Worker threads for sweep rows")
        ->check(CLI::PositiveNumber);
  }
  cmd->footer(kScenarioKeys);
}

// Loads the scenario JSON (file or built-in), applies overrides, builds
// the config.
ScenarioConfig load_scenario(const CommonArgs& args) {
  nlohmann::json j = args.config_path.empty()
                         ? scenario_to_json(default_scenario())
                         : load_json_file(args.config_path);
  for (const auto& spec : args.overrides) apply_override(j, spec);
  ScenarioConfig cfg = scenario_from_json(j);
  if (args.band_hz > 0) cfg.bandwidth_hz = args.band_hz;
  return cfg;
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path == "-" || out_path.empty()) {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(out_path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output file: " + tmp.string());
    out << payload;
    if (!out) throw ConfigError("write failure: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string provenance_block(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "# tool: " << kToolName << "\n";
  out << "# version: " << kToolVersion << "\n";
  out << "# config_hash: " << config_hash(scenario_to_json(cfg)) << "\n";
  return out.str();
}

void emit_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_scenario(const CommonArgs& args) {
  const ScenarioConfig cfg = load_scenario(args);
  const EnhancementReport r = run_scenario(cfg, args.flat_index);
  emit_warnings(r.warnings);
  std::ostringstream out;
  out << provenance_block(cfg);
  for (const auto& [name, member] : detail::report_fields()) {
    const double v = r.*member;
    if (std::isfinite(v)) {
      out << name << ": " << format_double(v) << "\n";
    } else {
      out << name << ": " << (std::isnan(v) ? "nan" : "unbounded") << "\n";
    }
  }
  write_output(args.out_path, out.str());
  return 0;
}

int cmd_dispersion(const CommonArgs& args, int points, double span) {
  const ScenarioConfig cfg = load_scenario(args);
  cfg.validate();
  const RamanMediumParams medium = prepare_medium(cfg);
  const double center = medium.doublet_center();
  if (span <= 0) span = 5.0 * medium.pump_separation;
  SweepSpec spec;
  spec.base = cfg;
  spec.axis = "probe.omega";
  spec.outputs = {"chi_re", "chi_im",     "n",          "gain",
                  "dn_domega", "d2n_domega2", "n_g"};
  spec.values.reserve(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    spec.values.push_back(center - span + 2.0 * span * i / (points - 1));
  }
  const ResultTable table = run_sweep(spec, args.jobs, args.flat_index);
  write_output(args.out_path, to_csv(table));
  return 0;
}

int cmd_tune_cad(const CommonArgs& args, double target_cli,
                 const std::string& knob_cli) {
  const ScenarioConfig cfg = load_scenario(args);
  cfg.validate();
  double target = target_cli;
  if (target == 0.0) {
    if (!cfg.cad_target_slope) {
      throw ConfigError(
          "tune-cad needs --target or the config key cad_target_slope");
    }
    target = *cfg.cad_target_slope;
  }
  CadKnob knob = cfg.cad_tune_knob;
  if (!knob_cli.empty()) {
    if (knob_cli == "separation") {
      knob = CadKnob::separation;
    } else if (knob_cli == "rabi_scale") {
      knob = CadKnob::rabi_scale;
    } else {
      throw ConfigError("--knob must be 'separation' or 'rabi_scale'");
    }
  }
  const RamanMediumParams tuned = tune_to_cad(cfg.medium, target, knob);
  const double center = cfg.cavity.omega0;
  RamanMediumParams anchored = tuned;
  anchored.omega_res1 = center + 0.5 * anchored.pump_separation;
  const auto d = dispersion_derivatives(anchored.doublet_center(), anchored);
  const double band =
      band_second_dispersion(anchored, anchored.doublet_center(), cfg.bandwidth_hz);

  std::ostringstream out;
  out << provenance_block(cfg);
  out << "coupling_A: " << format_double(anchored.coupling_A) << "\n";
  out << "omega1_rabi: " << format_double(anchored.omega1_rabi) << "\n";
  out << "omega2_rabi: " << format_double(anchored.omega2_rabi) << "\n";
  out << "omega_res1: " << format_double(anchored.omega_res1) << "\n";
  out << "pump_separation: " << format_double(anchored.pump_separation) << "\n";
  out << "gamma: " << format_double(anchored.gamma) << "\n";
  out << "center_slope: " << format_double(d.dn_domega) << "\n";
  out << "band_second_dispersion: " << format_double(band) << "\n";
  write_output(args.out_path, out.str());
  return 0;
}

int cmd_fig3(const CommonArgs& args, double q_cli, double vmin, double vmax,
             int points, bool two_sided) {
  const ScenarioConfig cfg = load_scenario(args);
  cfg.validate();
  double Q = q_cli;
  if (Q == 0.0) {
    const RamanMediumParams medium = prepare_medium(cfg);
    const double center = medium.doublet_center();
    const double n_dd =
        band_second_dispersion(medium, center, cfg.bandwidth_hz) / cfg.cavity.n0;
    const double f = cfg.q_fraction_source == QFractionSource::bandwidth
                         ? kTwoPi * cfg.bandwidth_hz / cfg.cavity.omega0
                         : std::abs(dispersionless_beat(cfg.cavity,
                                                        cfg.perturbation)) /
                               cfg.cavity.omega0;
    Q = q_factor(f, n_dd, cfg.cavity.omega0);
  }
  // Default is the upper branch (n_g > 0), which saturates below the
  // 2/sqrt|Q| bound; --two-sided adds the n_g < 0 side, whose lower
  // branch exceeds the bound away from the plateau.
  const double lo = two_sided ? -vmax : vmin;
  const auto samples = figure3_curve(Q, lo, vmax, points);

  ResultTable table;
  table.columns = {"ng_over_n0", "xi", "eta", "branch"};
  table.provenance = {{"tool", kToolName},
                      {"version", kToolVersion},
                      {"config_hash", config_hash(scenario_to_json(cfg))},
                      {"Q", format_double(Q)}};
  for (const auto& s : samples) {
    if (s.complex_root) {
      table.flagged.push_back({s.ng_over_n0, "sensitivity.second_order_beat: ComplexRoot"});
      continue;
    }
    table.rows.push_back({s.ng_over_n0, 1.0 / s.ng_over_n0, s.eta,
                          s.branch == Branch::upper ? 0.0 : 1.0});
  }
  write_output(args.out_path, to_csv(table));
  return 0;
}

int cmd_noise(const CommonArgs& args) {
  const ScenarioConfig cfg = load_scenario(args);
  const EnhancementReport r = run_scenario(cfg, args.flat_index);
  emit_warnings(r.warnings);
  std::ostringstream out;
  out << provenance_block(cfg);
  out << "delta_f_hz: " << format_double(r.delta_f_hz) << "\n";
  out << "eta: " << format_double(r.eta) << "\n";
  out << "delta_s_literal: " << format_double(r.delta_s_literal) << "\n";
  out << "delta_s_enhanced: " << format_double(r.delta_s_enhanced) << "\n";
  write_output(args.out_path, out.str());
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  if (args.config_path.empty()) {
    throw ConfigError("sweep requires --config with a sweep description");
  }
  nlohmann::json j = load_json_file(args.config_path);
  if (j.contains("base")) {
    for (const auto& spec : args.overrides) apply_override(j.at("base"), spec);
  } else {
    throw ConfigError("missing config key: base");
  }
  SweepSpec spec = sweep_from_json(j);
  if (args.band_hz > 0) spec.base.bandwidth_hz = args.band_hz;
  const ResultTable table = run_sweep(spec, args.jobs, args.flat_index);
  write_output(args.out_path, to_csv(table));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fastlight: dual-chamber Fabry-Perot interferometer simulator with a "
      "fast-light Raman gain-doublet medium"};
  app.require_subcommand(1);

  CommonArgs scenario_args, dispersion_args, tune_args, fig3_args, noise_args,
      sweep_args;

  auto* scenario = app.add_subcommand(
      "scenario", "Run one scenario and print a key-value report");
  add_common(scenario, scenario_args);

  auto* dispersion = app.add_subcommand(
      "dispersion", "Emit n/gain/dispersion vs probe frequency as CSV");
  int disp_points = 2001;
  double disp_span = 0.0;
  add_common(dispersion, dispersion_args, true);
  dispersion->add_option("--points", disp_points, "Grid points")
      ->check(CLI::Range(2, 10000000));
  dispersion->add_option(
      "--span", disp_span,
      "Half-width of the probe grid in rad/s (default 5 * pump_separation)");

  auto* tune = app.add_subcommand(
      "tune-cad", "Tune the medium's center dispersion slope and report it");
  double tune_target = 0.0;
  std::string tune_knob;
  add_common(tune, tune_args);
  tune->add_option("--target", tune_target, "Target slope in rad^-1 s (< 0)");
  tune->add_option("--knob", tune_knob, "separation | rabi_scale");

  auto* fig3 = app.add_subcommand(
      "fig3", "Emit the enhancement-vs-group-index curve as CSV");
  double fig3_q = 0.0, fig3_vmin = 1e-11, fig3_vmax = 1.0;
  int fig3_points = 2001;
  bool fig3_two_sided = false;
  add_common(fig3, fig3_args);
  fig3->add_option("--q", fig3_q, "Curve Q (default: computed from the config)");
  fig3->add_option("--vmin", fig3_vmin, "Smallest |n_g/n0| sampled")
      ->check(CLI::PositiveNumber);
  fig3->add_option("--vmax", fig3_vmax, "Largest |n_g/n0| sampled")
      ->check(CLI::PositiveNumber);
  fig3->add_option("--points", fig3_points, "Sample count")
      ->check(CLI::Range(2, 10000000));
  fig3->add_flag("--two-sided", fig3_two_sided,
                 "Sample n_g < 0 as well (lower branch)");

  auto* noise = app.add_subcommand(
      "noise", "Report the shot-noise beat and sensing uncertainty floors");
  add_common(noise, noise_args);

  auto* sweep = app.add_subcommand(
      "sweep", "Run a parameter sweep described by a sweep config (base/axis/"
               "values/outputs) and emit CSV");
  add_common(sweep, sweep_args, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (scenario->parsed()) return cmd_scenario(scenario_args);
    if (dispersion->parsed())
      return cmd_dispersion(dispersion_args, disp_points, disp_span);
    if (tune->parsed()) return cmd_tune_cad(tune_args, tune_target, tune_knob);
    if (fig3->parsed())
      return cmd_fig3(fig3_args, fig3_q, fig3_vmin, fig3_vmax, fig3_points,
                      fig3_two_sided);
    if (noise->parsed()) return cmd_noise(noise_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
  } catch (const PipelineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.numeric() ? 3 : 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
