#pragma once

// Configuration ingestion.  Scenario and sweep descriptions are JSON
// whose schema mirrors the domain structs field-for-field; unknown keys
// are a hard error (no silent typo tolerance).  Dotted-path overrides
// (medium.gamma=3.1e6) apply after the file parse, with precedence
// override > file > built-in default.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fastlight/cavity.hpp"
#include "fastlight/constants.hpp"
#include "fastlight/defaults.hpp"
#include "fastlight/errors.hpp"
#include "fastlight/medium.hpp"
#include "fastlight/noise.hpp"
#include "fastlight/table.hpp"

namespace fastlight {

enum class QFractionSource {
  bandwidth,     // f = 2*pi*bandwidth_hz / omega0 (reproduces the headline bound)
  perturbation,  // f = |dispersionless beat| / omega0
};

struct ScenarioConfig {
  RamanMediumParams medium;
  CavityConfig cavity;
  PerturbationModel perturbation;
  DetectionParams detection;
  double bandwidth_hz = 1e6;  // evaluation band for the second-order dispersion
  std::optional<double> cad_target_slope;  // rad^-1 s; triggers tuning when set
  CadKnob cad_tune_knob = CadKnob::separation;
  QFractionSource q_fraction_source = QFractionSource::bandwidth;

  void validate() const {
    medium.validate();
    cavity.validate();
    detection.validate();
    perturbation.check_smallness(cavity.n0);
    if (!(bandwidth_hz > 0)) throw ConfigError("bandwidth_hz must be > 0");
    if (cad_target_slope && !(*cad_target_slope < 0))
      throw ConfigError("cad_target_slope must be negative");
  }
};

struct SweepSpec {
  ScenarioConfig base;
  std::string axis;            // dotted config path, or "probe.omega"
  std::vector<double> values;  // ordered axis values
  std::vector<std::string> outputs;  // report-field names
};

// The bundled default: a medium calibrated so that separation-tuning the
// center slope to -3.1e-16 rad^-1 s yields a 1 MHz-band second-order
// dispersion of 4.1e-38 rad^-2 s^2 at a carrier of 2.426e15 rad/s.
inline ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  cfg.medium = {defaults::kCouplingA,      defaults::kOmegaRabi,
                defaults::kOmegaRabi,      defaults::kOmegaRes1,
                defaults::kPumpSeparation, defaults::kGamma};
  cfg.cavity = {defaults::kLengthL, defaults::kModeIndex,
                defaults::kLinewidthHz, defaults::kN0, defaults::kOmega0};
  cfg.perturbation = {defaults::kSigma, defaults::kDeltaS};
  cfg.detection = {defaults::kPhotonRate, defaults::kQuantumEff,
                   defaults::kDetLinewidthHz, defaults::kIntegrationTimeS};
  cfg.bandwidth_hz = defaults::kBandwidthHz;
  cfg.cad_target_slope = defaults::kCadTargetSlope;
  return cfg;
}

namespace detail {

using nlohmann::json;

inline double require_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return j.get<double>();
}

inline void reject_unknown(const json& obj, const std::set<std::string>& known,
                           const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      throw ConfigError("unknown config key: " + prefix + it.key());
    }
  }
}

inline const std::set<std::string>& scenario_keys() {
  static const std::set<std::string> keys = {
      "medium",        "cavity",           "perturbation",
      "detection",     "bandwidth_hz",     "cad_target_slope",
      "cad_tune_knob", "q_fraction_source"};
  return keys;
}

}  // namespace detail

inline ScenarioConfig scenario_from_json(const nlohmann::json& j) {
  using detail::require_number;
  if (!j.is_object()) throw ConfigError("scenario config must be a JSON object");
  detail::reject_unknown(j, detail::scenario_keys(), "");
  for (const char* required : {"medium", "cavity", "perturbation", "detection"}) {
    if (!j.contains(required))
      throw ConfigError(std::string("missing config section: ") + required);
  }

  ScenarioConfig cfg;

  const auto& m = j.at("medium");
  detail::reject_unknown(m,
                         {"coupling_A", "omega1_rabi", "omega2_rabi",
                          "omega_res1", "pump_separation", "gamma"},
                         "medium.");
  for (const char* key : {"coupling_A", "omega1_rabi", "omega2_rabi",
                          "omega_res1", "pump_separation", "gamma"}) {
    if (!m.contains(key))
      throw ConfigError(std::string("missing config key: medium.") + key);
  }
  cfg.medium = {require_number(m.at("coupling_A"), "medium.coupling_A"),
                require_number(m.at("omega1_rabi"), "medium.omega1_rabi"),
                require_number(m.at("omega2_rabi"), "medium.omega2_rabi"),
                require_number(m.at("omega_res1"), "medium.omega_res1"),
                require_number(m.at("pump_separation"), "medium.pump_separation"),
                require_number(m.at("gamma"), "medium.gamma")};

  const auto& c = j.at("cavity");
  detail::reject_unknown(
      c, {"length_L", "mode_index", "linewidth_hz", "n0", "omega0"}, "cavity.");
  for (const char* key : {"length_L", "linewidth_hz", "n0", "omega0"}) {
    if (!c.contains(key))
      throw ConfigError(std::string("missing config key: cavity.") + key);
  }
  cfg.cavity.length_L = require_number(c.at("length_L"), "cavity.length_L");
  cfg.cavity.linewidth_hz = require_number(c.at("linewidth_hz"), "cavity.linewidth_hz");
  cfg.cavity.n0 = require_number(c.at("n0"), "cavity.n0");
  cfg.cavity.omega0 = require_number(c.at("omega0"), "cavity.omega0");
  if (c.contains("mode_index")) {
    const double m = require_number(c.at("mode_index"), "cavity.mode_index");
    if (m != std::floor(m))
      throw ConfigError("cavity.mode_index must be an integer");
    cfg.cavity.mode_index = static_cast<std::int64_t>(m);
  } else {
    cfg.cavity.mode_index = CavityConfig::mode_from_carrier(
        cfg.cavity.omega0, cfg.cavity.n0, cfg.cavity.length_L);
  }

  const auto& p = j.at("perturbation");
  detail::reject_unknown(p, {"sigma", "delta_S"}, "perturbation.");
  for (const char* key : {"sigma", "delta_S"}) {
    if (!p.contains(key))
      throw ConfigError(std::string("missing config key: perturbation.") + key);
  }
  cfg.perturbation = {require_number(p.at("sigma"), "perturbation.sigma"),
                      require_number(p.at("delta_S"), "perturbation.delta_S")};

  const auto& d = j.at("detection");
  detail::reject_unknown(d,
                         {"photon_rate", "quantum_eff", "cavity_linewidth_hz",
                          "integration_time_s"},
                         "detection.");
  for (const char* key : {"photon_rate", "quantum_eff", "cavity_linewidth_hz",
                          "integration_time_s"}) {
    if (!d.contains(key))
      throw ConfigError(std::string("missing config key: detection.") + key);
  }
  cfg.detection = {
      require_number(d.at("photon_rate"), "detection.photon_rate"),
      require_number(d.at("quantum_eff"), "detection.quantum_eff"),
      require_number(d.at("cavity_linewidth_hz"), "detection.cavity_linewidth_hz"),
      require_number(d.at("integration_time_s"), "detection.integration_time_s")};

  if (j.contains("bandwidth_hz"))
    cfg.bandwidth_hz = require_number(j.at("bandwidth_hz"), "bandwidth_hz");
  if (j.contains("cad_target_slope"))
    cfg.cad_target_slope = require_number(j.at("cad_target_slope"), "cad_target_slope");
  if (j.contains("cad_tune_knob")) {
    const std::string knob = j.at("cad_tune_knob").is_string()
                                 ? j.at("cad_tune_knob").get<std::string>()
                                 : "";
    if (knob == "separation") {
      cfg.cad_tune_knob = CadKnob::separation;
    } else if (knob == "rabi_scale") {
      cfg.cad_tune_knob = CadKnob::rabi_scale;
    } else {
      throw ConfigError("cad_tune_knob must be 'separation' or 'rabi_scale'");
    }
  }
  if (j.contains("q_fraction_source")) {
    const std::string src = j.at("q_fraction_source").is_string()
                                ? j.at("q_fraction_source").get<std::string>()
                                : "";
    if (src == "bandwidth") {
      cfg.q_fraction_source = QFractionSource::bandwidth;
    } else if (src == "perturbation") {
      cfg.q_fraction_source = QFractionSource::perturbation;
    } else {
      throw ConfigError("q_fraction_source must be 'bandwidth' or 'perturbation'");
    }
  }
  return cfg;
}

inline nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
  nlohmann::json j;
  j["medium"] = {{"coupling_A", cfg.medium.coupling_A},
                 {"omega1_rabi", cfg.medium.omega1_rabi},
                 {"omega2_rabi", cfg.medium.omega2_rabi},
                 {"omega_res1", cfg.medium.omega_res1},
                 {"pump_separation", cfg.medium.pump_separation},
                 {"gamma", cfg.medium.gamma}};
  j["cavity"] = {{"length_L", cfg.cavity.length_L},
                 {"mode_index", cfg.cavity.mode_index},
                 {"linewidth_hz", cfg.cavity.linewidth_hz},
                 {"n0", cfg.cavity.n0},
                 {"omega0", cfg.cavity.omega0}};
  j["perturbation"] = {{"sigma", cfg.perturbation.sigma},
                       {"delta_S", cfg.perturbation.delta_S}};
  j["detection"] = {{"photon_rate", cfg.detection.photon_rate},
                    {"quantum_eff", cfg.detection.quantum_eff},
                    {"cavity_linewidth_hz", cfg.detection.cavity_linewidth_hz},
                    {"integration_time_s", cfg.detection.integration_time_s}};
  j["bandwidth_hz"] = cfg.bandwidth_hz;
  if (cfg.cad_target_slope) j["cad_target_slope"] = *cfg.cad_target_slope;
  j["cad_tune_knob"] =
      cfg.cad_tune_knob == CadKnob::separation ? "separation" : "rabi_scale";
  j["q_fraction_source"] = cfg.q_fraction_source == QFractionSource::bandwidth
                               ? "bandwidth"
                               : "perturbation";
  return j;
}

inline SweepSpec sweep_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
  detail::reject_unknown(j, {"base", "axis", "values", "outputs"}, "");
  for (const char* key : {"base", "axis", "values", "outputs"}) {
    if (!j.contains(key))
      throw ConfigError(std::string("missing config key: ") + key);
  }
  SweepSpec spec;
  spec.base = scenario_from_json(j.at("base"));
  if (!j.at("axis").is_string()) throw ConfigError("sweep axis must be a string");
  spec.axis = j.at("axis").get<std::string>();
  if (!j.at("values").is_array() || j.at("values").empty())
    throw ConfigError("sweep values must be a non-empty array");
  for (const auto& v : j.at("values")) {
    spec.values.push_back(detail::require_number(v, "values[]"));
    if (!std::isfinite(spec.values.back()))
      throw ConfigError("sweep values must be finite");
  }
  if (!j.at("outputs").is_array())
    throw ConfigError("sweep outputs must be an array");
  for (const auto& o : j.at("outputs")) {
    if (!o.is_string()) throw ConfigError("sweep outputs must be strings");
    spec.outputs.push_back(o.get<std::string>());
  }
  return spec;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config parse failure in " + path + ": " + e.what());
  }
  return j;
}

// Applies one "dotted.path=value" override to a scenario JSON object.
// The path must name an existing schema key.
inline void apply_override(nlohmann::json& scenario, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like key.path=value: " + spec);
  const std::string path = spec.substr(0, eq);
  const std::string value = spec.substr(eq + 1);

  static const std::map<std::string, std::set<std::string>> kSections = {
      {"medium",
       {"coupling_A", "omega1_rabi", "omega2_rabi", "omega_res1",
        "pump_separation", "gamma"}},
      {"cavity", {"length_L", "mode_index", "linewidth_hz", "n0", "omega0"}},
      {"perturbation", {"sigma", "delta_S"}},
      {"detection",
       {"photon_rate", "quantum_eff", "cavity_linewidth_hz",
        "integration_time_s"}}};
  static const std::set<std::string> kScalars = {"bandwidth_hz",
                                                 "cad_target_slope"};
  static const std::set<std::string> kStrings = {"cad_tune_knob",
                                                 "q_fraction_source"};

  const auto parse_number = [&](const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
      throw ConfigError("override value for '" + path + "' is not a number: " + text);
    return v;
  };

  const auto dot = path.find('.');
  if (dot == std::string::npos) {
    if (kScalars.count(path)) {
      scenario[path] = parse_number(value);
      return;
    }
    if (kStrings.count(path)) {
      scenario[path] = value;
      return;
    }
    throw ConfigError("unknown config key in override: " + path);
  }
  const std::string section = path.substr(0, dot);
  const std::string field = path.substr(dot + 1);
  const auto it = kSections.find(section);
  if (it == kSections.end() || !it->second.count(field))
    throw ConfigError("unknown config key in override: " + path);
  scenario[section][field] = parse_number(value);
}

inline std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string config_hash(const nlohmann::json& canonical) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a_hash(canonical.dump())));
  return buf;
}

}  // namespace fastlight
