#include <catch2/catch_amalgamated.hpp>

#include "fastlight/config.hpp"

using namespace fastlight;
using Catch::Approx;

TEST_CASE("default scenario validates and round-trips through JSON") {
  const ScenarioConfig cfg = default_scenario();
  REQUIRE_NOTHROW(cfg.validate());

  const ScenarioConfig back = scenario_from_json(scenario_to_json(cfg));
  REQUIRE(back.medium.gamma == cfg.medium.gamma);
  REQUIRE(back.cavity.omega0 == cfg.cavity.omega0);
  REQUIRE(back.cavity.mode_index == cfg.cavity.mode_index);
  REQUIRE(back.perturbation.delta_S == cfg.perturbation.delta_S);
  REQUIRE(back.bandwidth_hz == cfg.bandwidth_hz);
  REQUIRE(back.cad_target_slope.has_value());
  REQUIRE(*back.cad_target_slope == *cfg.cad_target_slope);
}

TEST_CASE("unknown keys are hard errors naming the key") {
  nlohmann::json j = scenario_to_json(default_scenario());
  j["mediun"] = 1;  // typo'd section
  try {
    scenario_from_json(j);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(std::string(e.what()).find("mediun") != std::string::npos);
  }

  nlohmann::json nested = scenario_to_json(default_scenario());
  nested["medium"]["gama"] = 1.0;
  try {
    scenario_from_json(nested);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(std::string(e.what()).find("medium.gama") != std::string::npos);
  }
}

TEST_CASE("missing keys are hard errors") {
  nlohmann::json j = scenario_to_json(default_scenario());
  j["medium"].erase("gamma");
  REQUIRE_THROWS_AS(scenario_from_json(j), ConfigError);
  j = scenario_to_json(default_scenario());
  j.erase("detection");
  REQUIRE_THROWS_AS(scenario_from_json(j), ConfigError);
}

TEST_CASE("mode_index is derived from the carrier when absent") {
  nlohmann::json j = scenario_to_json(default_scenario());
  j["cavity"].erase("mode_index");
  const ScenarioConfig cfg = scenario_from_json(j);
  REQUIRE(cfg.cavity.mode_index == default_scenario().cavity.mode_index);
}

TEST_CASE("enum fields parse and reject junk") {
  nlohmann::json j = scenario_to_json(default_scenario());
  j["q_fraction_source"] = "perturbation";
  j["cad_tune_knob"] = "rabi_scale";
  const ScenarioConfig cfg = scenario_from_json(j);
  REQUIRE(cfg.q_fraction_source == QFractionSource::perturbation);
  REQUIRE(cfg.cad_tune_knob == CadKnob::rabi_scale);

  j["q_fraction_source"] = "sideways";
  REQUIRE_THROWS_AS(scenario_from_json(j), ConfigError);
}

TEST_CASE("overrides: precedence and validation") {
  nlohmann::json j = scenario_to_json(default_scenario());
  apply_override(j, "medium.gamma=3.1e6");
  apply_override(j, "bandwidth_hz=2e6");
  apply_override(j, "cad_tune_knob=rabi_scale");
  const ScenarioConfig cfg = scenario_from_json(j);
  REQUIRE(cfg.medium.gamma == Approx(3.1e6));
  REQUIRE(cfg.bandwidth_hz == Approx(2e6));
  REQUIRE(cfg.cad_tune_knob == CadKnob::rabi_scale);

  try {
    apply_override(j, "medium.does_not_exist=1");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(std::string(e.what()).find("medium.does_not_exist") !=
            std::string::npos);
  }
  REQUIRE_THROWS_AS(apply_override(j, "no-equals-sign"), ConfigError);
  REQUIRE_THROWS_AS(apply_override(j, "medium.gamma=notanumber"), ConfigError);
}

TEST_CASE("sweep config parses and validates") {
  nlohmann::json j;
  j["base"] = scenario_to_json(default_scenario());
  j["axis"] = "perturbation.delta_S";
  j["values"] = {1e-5, 2e-5};
  j["outputs"] = {"beat_oracle", "eta"};
  const SweepSpec spec = sweep_from_json(j);
  REQUIRE(spec.axis == "perturbation.delta_S");
  REQUIRE(spec.values.size() == 2);
  REQUIRE(spec.outputs.size() == 2);

  j["values"] = nlohmann::json::array();
  REQUIRE_THROWS_AS(sweep_from_json(j), ConfigError);
  j["values"] = {1e-5};
  j["extra"] = 1;
  REQUIRE_THROWS_AS(sweep_from_json(j), ConfigError);
}

TEST_CASE("config hash: stable and sensitive") {
  const auto j = scenario_to_json(default_scenario());
  const std::string h1 = config_hash(j);
  const std::string h2 = config_hash(j);
  REQUIRE(h1 == h2);
  REQUIRE(h1.size() == 16);

  auto j2 = j;
  j2["medium"]["gamma"] = j2["medium"]["gamma"].get<double>() * 1.0000001;
  REQUIRE(config_hash(j2) != h1);
}

TEST_CASE("bundled default config file mirrors the built-in defaults") {
  const ScenarioConfig file = scenario_from_json(
      load_json_file(std::string(FASTLIGHT_CONFIG_DIR) +
                     "/default_scenario.json"));
  const ScenarioConfig builtin = default_scenario();
  REQUIRE(file.medium.coupling_A == builtin.medium.coupling_A);
  REQUIRE(file.medium.omega1_rabi == builtin.medium.omega1_rabi);
  REQUIRE(file.medium.omega_res1 == builtin.medium.omega_res1);
  REQUIRE(file.medium.pump_separation == builtin.medium.pump_separation);
  REQUIRE(file.medium.gamma == builtin.medium.gamma);
  REQUIRE(file.cavity.omega0 == builtin.cavity.omega0);
  REQUIRE(file.cavity.mode_index == builtin.cavity.mode_index);
  REQUIRE(file.detection.photon_rate == builtin.detection.photon_rate);
  REQUIRE(*file.cad_target_slope == *builtin.cad_target_slope);
}

TEST_CASE("scenario validation catches bad values") {
  ScenarioConfig cfg = default_scenario();
  cfg.bandwidth_hz = 0.0;
  REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
  cfg = default_scenario();
  cfg.cad_target_slope = 1e-16;
  REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
  cfg = default_scenario();
  cfg.detection.quantum_eff = 0.0;
  REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
}
