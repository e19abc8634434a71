#pragma once

// Shot-noise-limited beat-note uncertainty and the resulting sensing
// uncertainty.
//
// The printed sensing formula dS = 2*pi*df*n0/sigma carries no carrier
// frequency and no enhancement factor, which leaves its dimensional
// bookkeeping open.  Both readings are therefore reported: the literal
// value exactly as written, and an "enhanced" companion equal to the
// literal value divided by a caller-supplied dimensionless enhancement.
// Neither silently replaces the other.

#include <cmath>
#include <optional>

#include "fastlight/constants.hpp"
#include "fastlight/errors.hpp"

namespace fastlight {

struct DetectionParams {
  double photon_rate;          // photons/s at the detector
  double quantum_eff;          // (0, 1]
  double cavity_linewidth_hz;  // Hz
  double integration_time_s;   // s

  void validate() const {
    if (!(photon_rate > 0)) throw ConfigError("detection.photon_rate must be > 0");
    if (!(quantum_eff > 0 && quantum_eff <= 1))
      throw ConfigError("detection.quantum_eff must be in (0, 1]");
    if (!(cavity_linewidth_hz > 0))
      throw ConfigError("detection.cavity_linewidth_hz must be > 0");
    if (!(integration_time_s > 0))
      throw ConfigError("detection.integration_time_s must be > 0");
  }
};

// df = linewidth / sqrt(N_ph * eff * tau), in Hz.
inline double beat_uncertainty(const DetectionParams& d) {
  d.validate();
  return d.cavity_linewidth_hz /
         std::sqrt(d.photon_rate * d.quantum_eff * d.integration_time_s);
}

struct SensingUncertainty {
  double literal;                  // S-units, 2*pi*df*n0/sigma as printed
  std::optional<double> enhanced;  // literal / enhancement, when supplied
};

inline SensingUncertainty sensing_uncertainty(
    double delta_f_hz, double n0, double sigma,
    std::optional<double> enhancement = std::nullopt) {
  if (sigma == 0.0) throw ZeroSigma("sensing_uncertainty: sigma = 0");
  SensingUncertainty out{kTwoPi * delta_f_hz * n0 / sigma, std::nullopt};
  if (enhancement) {
    out.enhanced = out.literal / *enhancement;
  }
  return out;
}

}  // namespace fastlight
