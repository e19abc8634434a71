#pragma once

// Shared-mirror dual-chamber Fabry-Perot resonator: base-index
// perturbation of the test chamber, the dispersionless beat note, and an
// exact dispersion-aware resonance solver.
//
// The resonance condition is written with an explicit longitudinal mode
// integer m,  n(w) * w * L = m * pi * c,  so the solver is well-posed;
// every downstream formula uses only fractional shifts, which are
// m-independent.  Both chambers share the mirror pair, hence the same L.
// Beat sign convention: beat = w_reference - w_test, so an index increase
// in the test chamber yields a positive beat.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fastlight/constants.hpp"
#include "fastlight/errors.hpp"
#include "fastlight/root_find.hpp"

namespace fastlight {

struct CavityConfig {
  double length_L;       // m, mirror separation
  std::int64_t mode_index;  // longitudinal mode number m
  double linewidth_hz;   // Hz, cavity resonance linewidth
  double n0;             // mean refractive index of both chambers
  double omega0;         // rad/s, nominal carrier frequency

  void validate() const {
    if (!(length_L > 0)) throw ConfigError("cavity.length_L must be > 0");
    if (!(linewidth_hz > 0)) throw ConfigError("cavity.linewidth_hz must be > 0");
    if (!(n0 > 0)) throw ConfigError("cavity.n0 must be > 0");
    if (!(omega0 > 0)) throw ConfigError("cavity.omega0 must be > 0");
    if (mode_index <= 0) throw ConfigError("cavity.mode_index must be > 0");
    const double mode_target = static_cast<double>(mode_index) * kPi * kSpeedOfLight;
    if (!(std::abs(n0 * omega0 * length_L - mode_target) / mode_target < 1e-6)) {
      throw ConfigError(
          "cavity.mode_index inconsistent with carrier: "
          "|n0*omega0*L - m*pi*c|/(m*pi*c) >= 1e-6");
    }
  }

  // Mode number of the cavity mode nearest the carrier, for configs that
  // leave mode_index unspecified.
  static std::int64_t mode_from_carrier(double omega0, double n0, double length_L) {
    return static_cast<std::int64_t>(
        std::llround(n0 * omega0 * length_L / (kPi * kSpeedOfLight)));
  }
};

struct PerturbationModel {
  double sigma;    // index units per S-unit, dn/dS (frequency independent)
  double delta_S;  // S-units, applied perturbation

  void check_smallness(double n0) const {
    if (!(std::abs(sigma * delta_S / n0) < kSmallnessLimit)) {
      throw SmallnessViolation(
          "|sigma*delta_S/n0| >= 1e-2: fractional-shift formulas invalid");
    }
  }
};

// n' = n0 + sigma * delta_S.
inline double perturbed_base_index(double n0, const PerturbationModel& pert) {
  pert.check_smallness(n0);
  return n0 + pert.sigma * pert.delta_S;
}

// Dispersionless beat note  dw0 = w0 * sigma * dS / n0  (signed).
inline double dispersionless_beat(const CavityConfig& cav,
                                  const PerturbationModel& pert) {
  pert.check_smallness(cav.n0);
  return cav.omega0 * pert.sigma * pert.delta_S / cav.n0;
}

// Solves n(w) * w * L = m * pi * c for w inside the bracket
// w0 +- 1e3 * 2*pi * linewidth.  This is the idealized lock of the
// transmitted field to the peak of the Fabry-Perot resonance.  Throws
// NotBracketed when the residual has no sign change over the bracket
// (near the critically-anomalous-dispersion point the condition can lose
// a root locally; that is surfaced, never silently widened).
template <class IndexFn>
double resonance_solve(IndexFn&& index_fn, const CavityConfig& cav,
                       std::vector<std::pair<double, double>>* trace = nullptr) {
  const double mode_target = static_cast<double>(cav.mode_index) * kPi * kSpeedOfLight;
  const auto residual = [&](double w) {
    return index_fn(w) * w * cav.length_L - mode_target;
  };
  const double half_width = 1e3 * kTwoPi * cav.linewidth_hz;
  const double lo = cav.omega0 - half_width;
  const double hi = cav.omega0 + half_width;
  const double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (f_lo != 0.0 && f_hi != 0.0 &&
      std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NotBracketed(
        "resonance_solve: no sign change of n(w)*w*L - m*pi*c over "
        "w0 +- 1e3*2*pi*linewidth");
  }
  return find_root_bracketed(residual, lo, hi, f_lo, f_hi, trace);
}

}  // namespace fastlight
