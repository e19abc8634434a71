#pragma once

// End-to-end scenario execution: medium -> cavity -> sensitivity -> noise,
// band-limited second-derivative estimation, parameter sweeps, and the
// row/field registry behind CSV emission.
//
// A scenario evaluates the medium at the doublet center, builds the
// dispersionless beat, the first- and second-order closed-form beats, and
// an exact beat from two resonance solves (reference chamber: the full
// dispersive index; test chamber: the same index with the perturbed base).
// When a tuning target is configured the pump separation (or strength) is
// adjusted first and the doublet is re-centered on the cavity carrier, as
// the pump rig would track the locked mode.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fastlight/cavity.hpp"
#include "fastlight/config.hpp"
#include "fastlight/constants.hpp"
#include "fastlight/errors.hpp"
#include "fastlight/medium.hpp"
#include "fastlight/noise.hpp"
#include "fastlight/sensitivity.hpp"
#include "fastlight/table.hpp"

namespace fastlight {

struct EnhancementReport {
  // Medium sample at the operating point (the doublet center).
  double omega_center;
  double chi_re;
  double chi_im;
  double n;
  double gain;
  double dn_domega;
  double d2n_domega2;
  double n_g;  // sample group index, n + omega_center * dn/domega

  double n0;
  double omega0;

  double xi;       // n0 / (n0 + omega0 * dn/domega)
  double n_tilde;  // (omega0 / n0) * dn/domega
  double f_frac;   // fractional bandwidth used for Q
  double n_dd;     // band max |d2n/domega2| / n0
  double Q;
  double eta;
  double eta_max;  // +inf encodes "unbounded" (Q = 0); never emitted to CSV

  double beat_dispersionless;  // rad/s
  double beat_first_order;
  double beat_second_order;
  double beat_oracle;

  double delta_f_hz;
  double delta_s_literal;
  double delta_s_enhanced;

  std::vector<std::string> warnings;
};

namespace detail {

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const NumericError& e) {
    throw PipelineError(name, e, true);
  } catch (const Error& e) {
    throw PipelineError(name, e, false);
  }
}

}  // namespace detail

// Max of |d2n/domega2| over the band center +- (2*pi*bandwidth_hz)/2,
// sampled with the analytic derivative on a uniform inclusive grid.
inline double band_second_dispersion(const RamanMediumParams& p, double center,
                                     double bandwidth_hz, int samples = 4001) {
  if (!(bandwidth_hz > 0)) throw ConfigError("bandwidth_hz must be > 0");
  if (samples < 1000)
    throw ConfigError("band_second_dispersion: need >= 1000 samples");
  const double half = kPi * bandwidth_hz;
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double w = center - half + 2.0 * half * i / (samples - 1);
    best = std::max(best, std::abs(dispersion_derivatives(w, p).d2n_domega2));
  }
  return best;
}

// Tuned (and carrier-re-centered) medium for a scenario.
inline RamanMediumParams prepare_medium(const ScenarioConfig& cfg) {
  if (!cfg.cad_target_slope) return cfg.medium;
  RamanMediumParams medium = detail::stage("medium.tune_to_cad", [&] {
    return tune_to_cad(cfg.medium, *cfg.cad_target_slope, cfg.cad_tune_knob);
  });
  medium.omega_res1 = cfg.cavity.omega0 + 0.5 * medium.pump_separation;
  return medium;
}

inline EnhancementReport run_scenario(const ScenarioConfig& cfg,
                                      bool flat_index = false) {
  detail::stage("config.validate", [&] { cfg.validate(); return 0; });
  const RamanMediumParams medium = prepare_medium(cfg);
  const CavityConfig& cav = cfg.cavity;
  const double center = medium.doublet_center();

  EnhancementReport r{};
  r.n0 = cav.n0;
  r.omega0 = cav.omega0;
  r.omega_center = center;

  if (flat_index) {
    r.chi_re = r.chi_im = r.gain = r.dn_domega = r.d2n_domega2 = 0.0;
    r.n = r.n_g = cav.n0;
  } else {
    const DispersionSample s = detail::stage(
        "medium.sample_dispersion", [&] { return sample_dispersion(center, medium); });
    r.chi_re = s.chi_re;
    r.chi_im = s.chi_im;
    r.n = s.n;
    r.gain = s.gain;
    r.dn_domega = s.dn_domega;
    r.d2n_domega2 = s.d2n_domega2;
    r.n_g = s.n_g;
  }

  r.beat_dispersionless = detail::stage("cavity.dispersionless_beat", [&] {
    return dispersionless_beat(cav, cfg.perturbation);
  });

  // Inside the singular window |n_g| <= 1e-3*n0 the first-order formula
  // has no meaningful value; the report carries NaN there (surfacing as a
  // flagged row if that column is requested) while the second-order and
  // oracle paths continue.
  const double n_g_closure = cav.n0 + cav.omega0 * r.dn_domega;
  try {
    const FirstOrderBeat fo = first_order_beat(
        r.beat_dispersionless, cav.n0, cav.omega0, r.dn_domega);
    r.beat_first_order = fo.beat;
    r.xi = fo.xi;
  } catch (const CadSingularity&) {
    r.beat_first_order = std::numeric_limits<double>::quiet_NaN();
    r.xi = cav.n0 / n_g_closure;
    r.warnings.push_back(
        "|n_g| <= 1e-3*n0: first-order beat singular, reported as NaN");
  }
  r.n_tilde = cav.omega0 * r.dn_domega / cav.n0;

  r.n_dd = flat_index
               ? 0.0
               : detail::stage("pipeline.band_second_dispersion", [&] {
                   return band_second_dispersion(medium, center,
                                                 cfg.bandwidth_hz) /
                          cav.n0;
                 });
  r.f_frac = cfg.q_fraction_source == QFractionSource::bandwidth
                 ? kTwoPi * cfg.bandwidth_hz / cav.omega0
                 : std::abs(r.beat_dispersionless) / cav.omega0;
  r.Q = r.f_frac > 0 ? q_factor(r.f_frac, r.n_dd, cav.omega0) : 0.0;
  if (std::abs(r.Q) > 1e-3) {
    r.warnings.push_back("Q exceeds 1e-3: second-order closure dubious");
  }
  if (r.Q == 0.0) {
    r.eta_max = std::numeric_limits<double>::infinity();
    r.warnings.push_back("Q = 0: enhancement bound unbounded");
  } else {
    r.eta_max = eta_max(r.Q);
  }

  const SecondOrderBeat so = detail::stage("sensitivity.second_order_beat", [&] {
    return second_order_beat(r.beat_dispersionless, r.xi, r.Q,
                             n_g_closure >= 0 ? Branch::upper : Branch::lower);
  });
  r.beat_second_order = so.beat;
  r.eta = so.eta;

  const double base_shift = detail::stage("cavity.perturbed_base_index", [&] {
    return perturbed_base_index(cav.n0, cfg.perturbation) - cav.n0;
  });
  const auto ref_index = [&](double w) {
    return flat_index ? cav.n0 : refractive_index(w, medium);
  };
  const double w_ref = detail::stage("cavity.resonance_solve(reference)", [&] {
    return resonance_solve(ref_index, cav);
  });
  const double w_test = detail::stage("cavity.resonance_solve(test)", [&] {
    return resonance_solve([&](double w) { return ref_index(w) + base_shift; },
                           cav);
  });
  r.beat_oracle = w_ref - w_test;

  r.delta_f_hz = detail::stage("noise.beat_uncertainty",
                               [&] { return beat_uncertainty(cfg.detection); });
  const SensingUncertainty ds = detail::stage("noise.sensing_uncertainty", [&] {
    return sensing_uncertainty(r.delta_f_hz, cav.n0, cfg.perturbation.sigma,
                               r.eta);
  });
  r.delta_s_literal = ds.literal;
  r.delta_s_enhanced = *ds.enhanced;
  return r;
}

namespace detail {

using ReportField = double EnhancementReport::*;

inline const std::vector<std::pair<std::string, ReportField>>& report_fields() {
  static const std::vector<std::pair<std::string, ReportField>> fields = {
      {"omega_center", &EnhancementReport::omega_center},
      {"chi_re", &EnhancementReport::chi_re},
      {"chi_im", &EnhancementReport::chi_im},
      {"n", &EnhancementReport::n},
      {"gain", &EnhancementReport::gain},
      {"dn_domega", &EnhancementReport::dn_domega},
      {"d2n_domega2", &EnhancementReport::d2n_domega2},
      {"n_g", &EnhancementReport::n_g},
      {"xi", &EnhancementReport::xi},
      {"n_tilde", &EnhancementReport::n_tilde},
      {"f_frac", &EnhancementReport::f_frac},
      {"n_dd", &EnhancementReport::n_dd},
      {"Q", &EnhancementReport::Q},
      {"eta", &EnhancementReport::eta},
      {"eta_max", &EnhancementReport::eta_max},
      {"beat_dispersionless", &EnhancementReport::beat_dispersionless},
      {"beat_first_order", &EnhancementReport::beat_first_order},
      {"beat_second_order", &EnhancementReport::beat_second_order},
      {"beat_oracle", &EnhancementReport::beat_oracle},
      {"delta_f_hz", &EnhancementReport::delta_f_hz},
      {"delta_s_literal", &EnhancementReport::delta_s_literal},
      {"delta_s_enhanced", &EnhancementReport::delta_s_enhanced},
  };
  return fields;
}

inline ReportField report_field(const std::string& name) {
  for (const auto& [key, member] : report_fields()) {
    if (key == name) return member;
  }
  throw ConfigError("unknown report field: " + name);
}

// Fields available for probe-frequency sweeps (per-frequency medium
// samples; scenario-level quantities are constants there).
inline const std::vector<std::string>& probe_fields() {
  static const std::vector<std::string> fields = {
      "chi_re", "chi_im", "n", "gain", "dn_domega", "d2n_domega2", "n_g"};
  return fields;
}

using AxisSetter = std::function<void(ScenarioConfig&, double)>;

inline const std::map<std::string, AxisSetter>& axis_setters() {
  static const std::map<std::string, AxisSetter> setters = {
      {"medium.coupling_A", [](ScenarioConfig& c, double v) { c.medium.coupling_A = v; }},
      {"medium.omega1_rabi", [](ScenarioConfig& c, double v) { c.medium.omega1_rabi = v; }},
      {"medium.omega2_rabi", [](ScenarioConfig& c, double v) { c.medium.omega2_rabi = v; }},
      {"medium.omega_res1", [](ScenarioConfig& c, double v) { c.medium.omega_res1 = v; }},
      {"medium.pump_separation", [](ScenarioConfig& c, double v) { c.medium.pump_separation = v; }},
      {"medium.gamma", [](ScenarioConfig& c, double v) { c.medium.gamma = v; }},
      {"cavity.length_L", [](ScenarioConfig& c, double v) { c.cavity.length_L = v; }},
      {"cavity.linewidth_hz", [](ScenarioConfig& c, double v) { c.cavity.linewidth_hz = v; }},
      {"cavity.n0", [](ScenarioConfig& c, double v) { c.cavity.n0 = v; }},
      {"cavity.omega0", [](ScenarioConfig& c, double v) { c.cavity.omega0 = v; }},
      {"perturbation.sigma", [](ScenarioConfig& c, double v) { c.perturbation.sigma = v; }},
      {"perturbation.delta_S", [](ScenarioConfig& c, double v) { c.perturbation.delta_S = v; }},
      {"detection.photon_rate", [](ScenarioConfig& c, double v) { c.detection.photon_rate = v; }},
      {"detection.quantum_eff", [](ScenarioConfig& c, double v) { c.detection.quantum_eff = v; }},
      {"detection.cavity_linewidth_hz", [](ScenarioConfig& c, double v) { c.detection.cavity_linewidth_hz = v; }},
      {"detection.integration_time_s", [](ScenarioConfig& c, double v) { c.detection.integration_time_s = v; }},
      {"bandwidth_hz", [](ScenarioConfig& c, double v) { c.bandwidth_hz = v; }},
      {"cad_target_slope", [](ScenarioConfig& c, double v) { c.cad_target_slope = v; }},
  };
  return setters;
}

inline std::string sanitize_label(std::string label) {
  for (char& c : label) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return label;
}

struct RowOutcome {
  std::vector<double> values;  // empty when flagged
  std::string label;
};

template <class RowFn>
void run_rows(size_t count, int jobs, RowFn&& row_fn) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) row_fn(i);
    return;
  }
  const size_t workers = std::min<size_t>(static_cast<size_t>(jobs), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = w; i < count; i += workers) row_fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

inline void validate_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep values must be non-empty");
  for (double v : spec.values) {
    if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
  }
  const bool probe_axis = spec.axis == "probe.omega";
  if (!probe_axis && !detail::axis_setters().count(spec.axis)) {
    throw ConfigError("unknown sweep axis: " + spec.axis);
  }
  for (const auto& name : spec.outputs) {
    detail::report_field(name);  // must exist at all
    if (probe_axis) {
      const auto& allowed = detail::probe_fields();
      if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
        throw ConfigError("output '" + name +
                          "' not available for axis probe.omega");
      }
    }
  }
}

// One row per axis value; per-row failures are recorded in the flagged
// section with the stage label, never aborting the sweep.  Output is a
// pure function of the spec: identical spec, identical bytes, regardless
// of the jobs count.
inline ResultTable run_sweep(const SweepSpec& spec, int jobs = 1,
                             bool flat_index = false) {
  validate_sweep(spec);
  spec.base.validate();

  ResultTable table;
  table.columns.push_back(spec.axis);
  for (const auto& name : spec.outputs) table.columns.push_back(name);

  nlohmann::json canonical = scenario_to_json(spec.base);
  canonical["sweep"] = {{"axis", spec.axis}, {"outputs", spec.outputs}};
  for (double v : spec.values) canonical["sweep"]["values"].push_back(format_double(v));
  table.provenance = {{"tool", kToolName},
                      {"version", kToolVersion},
                      {"config_hash", config_hash(canonical)},
                      {"axis", spec.axis}};

  const size_t count = spec.values.size();
  std::vector<detail::RowOutcome> outcomes(count);

  if (spec.axis == "probe.omega") {
    // Materialize the scenario once; rows are per-frequency samples.
    const RamanMediumParams medium = prepare_medium(spec.base);
    detail::run_rows(count, jobs, [&](size_t i) {
      auto& out = outcomes[i];
      try {
        const DispersionSample s = sample_dispersion(spec.values[i], medium);
        EnhancementReport r{};
        r.chi_re = s.chi_re;
        r.chi_im = s.chi_im;
        r.n = s.n;
        r.gain = s.gain;
        r.dn_domega = s.dn_domega;
        r.d2n_domega2 = s.d2n_domega2;
        r.n_g = s.n_g;
        for (const auto& name : spec.outputs) {
          out.values.push_back(r.*detail::report_field(name));
        }
      } catch (const Error& e) {
        out.values.clear();
        out.label = detail::sanitize_label(e.what());
      }
    });
  } else {
    const auto& setter = detail::axis_setters().at(spec.axis);
    detail::run_rows(count, jobs, [&](size_t i) {
      auto& out = outcomes[i];
      try {
        ScenarioConfig cfg = spec.base;
        setter(cfg, spec.values[i]);
        const EnhancementReport r = run_scenario(cfg, flat_index);
        for (const auto& name : spec.outputs) {
          const double v = r.*detail::report_field(name);
          if (!std::isfinite(v)) {
            throw ConfigError("non-finite output '" + name + "'");
          }
          out.values.push_back(v);
        }
      } catch (const Error& e) {
        out.values.clear();
        out.label = detail::sanitize_label(e.what());
      }
    });
  }

  for (size_t i = 0; i < count; ++i) {
    if (outcomes[i].label.empty()) {
      std::vector<double> row{spec.values[i]};
      row.insert(row.end(), outcomes[i].values.begin(), outcomes[i].values.end());
      table.rows.push_back(std::move(row));
    } else {
      table.flagged.push_back({spec.values[i], outcomes[i].label});
    }
  }
  return table;
}

}  // namespace fastlight
