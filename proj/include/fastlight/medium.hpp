#pragma once

// Bi-frequency-pumped Raman gain doublet: complex susceptibility, the
// derived refractive index and intensity gain, closed-form dispersion
// derivatives, group index, and tuning of the center dispersion slope.
//
// Model: two gain lines of common half-width Gamma at omega_res1 and
// omega_res1 - pump_separation,
//
//   chi(w) = A * [ Om1^2 / ((w - w1) + i*G) + Om2^2 / ((w - w1 + D) + i*G) ]
//
// with A a single dimensionless coupling amplitude.  Im chi < 0 for all
// frequencies (pure gain), and n(w) = 1 + Re chi / 2 in the dilute
// regime |chi| < 1e-2, which every index-derived operation enforces.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "fastlight/constants.hpp"
#include "fastlight/errors.hpp"
#include "fastlight/root_find.hpp"

namespace fastlight {

struct RamanMediumParams {
  double coupling_A;       // dimensionless susceptibility amplitude
  double omega1_rabi;      // rad/s, first pump Rabi frequency
  double omega2_rabi;      // rad/s, second pump Rabi frequency
  double omega_res1;       // rad/s, first two-photon gain-peak frequency
  double pump_separation;  // rad/s, second peak at omega_res1 - separation
  double gamma;            // rad/s, inverse Raman transition lifetime

  // Geometric midpoint of the two gain peaks, also used for unequal pumps.
  double doublet_center() const { return omega_res1 - 0.5 * pump_separation; }

  void validate() const {
    if (!(coupling_A > 0)) throw ConfigError("medium.coupling_A must be > 0");
    if (!(gamma > 0)) throw ConfigError("medium.gamma must be > 0");
    if (!(pump_separation > 0))
      throw ConfigError("medium.pump_separation must be > 0");
    if (!(omega1_rabi >= 0) || !(omega2_rabi >= 0))
      throw ConfigError("medium Rabi frequencies must be >= 0");
    if (omega1_rabi == 0 && omega2_rabi == 0)
      throw ConfigError("medium Rabi frequencies must not both be zero");
    if (!(omega_res1 > 0)) throw ConfigError("medium.omega_res1 must be > 0");
  }
};

// Collapses the dimensional prefactor N |d32|^2 / (4 pi hbar eps0 dp^2)
// into the dimensionless coupling amplitude.  Convenience only; nothing
// downstream depends on this convention.
inline double coupling_from_density(double atom_density, double dipole_sq,
                                    double pump_detuning) {
  constexpr double kHbar = 1.054571817e-34;    // J s
  constexpr double kEps0 = 8.8541878128e-12;   // F/m
  return atom_density * dipole_sq /
         (4.0 * kPi * kHbar * kEps0 * pump_detuning * pump_detuning);
}

inline std::complex<double> susceptibility(double omega,
                                           const RamanMediumParams& p) {
  const double d1 = omega - p.omega_res1;
  const double d2 = omega - p.omega_res1 + p.pump_separation;
  const std::complex<double> t1 =
      p.omega1_rabi * p.omega1_rabi / std::complex<double>(d1, p.gamma);
  const std::complex<double> t2 =
      p.omega2_rabi * p.omega2_rabi / std::complex<double>(d2, p.gamma);
  return p.coupling_A * (t1 + t2);
}

namespace detail {

inline void require_dilute(const std::complex<double>& chi) {
  if (!(std::abs(chi) < kDiluteLimit)) {
    throw DiluteRegimeViolation(
        "|chi| = " + std::to_string(std::abs(chi)) +
        " >= 1e-2: linearized index n = 1 + Re chi / 2 is untrustworthy");
  }
}

// Per-line Lorentzian factors of n - 1 = (A/2) sum Om^2 * d/(d^2+G^2):
// first and second derivatives with respect to frequency.
inline double lorentz_d1(double d, double g2) {
  const double r = d * d + g2;
  return (g2 - d * d) / (r * r);
}

inline double lorentz_d2(double d, double g2) {
  const double r = d * d + g2;
  return 2.0 * d * (d * d - 3.0 * g2) / (r * r * r);
}

}  // namespace detail

// n(w) = 1 + Re chi / 2.  Throws DiluteRegimeViolation outside |chi| < 1e-2.
inline double refractive_index(double omega, const RamanMediumParams& p) {
  const auto chi = susceptibility(omega, p);
  detail::require_dilute(chi);
  return 1.0 + 0.5 * chi.real();
}

// Intensity gain coefficient g(w) = -(w/c) Im chi(w), in 1/m; positive
// everywhere for this medium.
inline double gain_coefficient(double omega, const RamanMediumParams& p) {
  const auto chi = susceptibility(omega, p);
  detail::require_dilute(chi);
  return -(omega / kSpeedOfLight) * chi.imag();
}

struct DispersionDerivatives {
  double dn_domega;     // rad^-1 s
  double d2n_domega2;   // rad^-2 s^2
};

// Closed-form derivatives of n(w) = 1 + Re chi / 2.
inline DispersionDerivatives dispersion_derivatives(
    double omega, const RamanMediumParams& p) {
  const auto chi = susceptibility(omega, p);
  detail::require_dilute(chi);
  const double g2 = p.gamma * p.gamma;
  const double d1 = omega - p.omega_res1;
  const double d2 = omega - p.omega_res1 + p.pump_separation;
  const double w1 = p.omega1_rabi * p.omega1_rabi;
  const double w2 = p.omega2_rabi * p.omega2_rabi;
  const double half_a = 0.5 * p.coupling_A;
  return {half_a * (w1 * detail::lorentz_d1(d1, g2) +
                    w2 * detail::lorentz_d1(d2, g2)),
          half_a * (w1 * detail::lorentz_d2(d1, g2) +
                    w2 * detail::lorentz_d2(d2, g2))};
}

inline double group_index(double omega, const RamanMediumParams& p) {
  return refractive_index(omega, p) +
         omega * dispersion_derivatives(omega, p).dn_domega;
}

struct DispersionSample {
  double omega;         // rad/s
  double chi_re;
  double chi_im;
  double n;
  double gain;          // 1/m
  double dn_domega;     // rad^-1 s
  double d2n_domega2;   // rad^-2 s^2
  double n_g;           // n + omega * dn/domega, by construction
};

inline DispersionSample sample_dispersion(double omega,
                                          const RamanMediumParams& p) {
  const auto chi = susceptibility(omega, p);
  detail::require_dilute(chi);
  const auto d = dispersion_derivatives(omega, p);
  const double n = 1.0 + 0.5 * chi.real();
  return {omega,
          chi.real(),
          chi.imag(),
          n,
          -(omega / kSpeedOfLight) * chi.imag(),
          d.dn_domega,
          d.d2n_domega2,
          n + omega * d.dn_domega};
}

enum class CadKnob { rabi_scale, separation };

namespace detail {

inline double center_slope(const RamanMediumParams& p) {
  return dispersion_derivatives(p.doublet_center(), p).dn_domega;
}

}  // namespace detail

// Returns a parameter set whose dn/domega at the doublet center equals
// target_slope to 1e-9 relative.
//
// rabi_scale: chi scales with the squared Rabi frequencies, so both pumps
// are scaled by sqrt(target/current); requires equal pumps and a negative
// current slope.
//
// separation: bisection on the separation over (2.01, 1000) * Gamma.  The
// slope-vs-separation curve is not monotone (two roots straddle the
// extremum at 2*sqrt(3)*Gamma), so candidate intervals are scanned in
// order of distance from the current separation: the knob moves as little
// as possible and tuning from a resolved doublet stays on the resolved
// branch.
inline RamanMediumParams tune_to_cad(const RamanMediumParams& p,
                                     double target_slope, CadKnob knob) {
  p.validate();
  if (!(target_slope < 0))
    throw ConfigError("tune_to_cad: target slope must be negative");
  constexpr double kRelTol = 1e-9;

  const double current = detail::center_slope(p);
  if (std::abs(current - target_slope) <= kRelTol * std::abs(target_slope)) {
    return p;  // already tuned
  }

  if (knob == CadKnob::rabi_scale) {
    if (std::abs(p.omega1_rabi - p.omega2_rabi) >
        1e-9 * std::max(p.omega1_rabi, p.omega2_rabi)) {
      throw ConfigError("tune_to_cad(rabi_scale) requires equal pump Rabi frequencies");
    }
    if (!(current < 0)) {
      throw SlopeSignMismatch(
          "tune_to_cad(rabi_scale): center slope is non-negative; "
          "rescaling the pumps cannot reach a negative target");
    }
    const double scale = std::sqrt(target_slope / current);
    RamanMediumParams out = p;
    out.omega1_rabi *= scale;
    out.omega2_rabi *= scale;
    return out;
  }

  // separation knob
  const double lo = 2.01 * p.gamma;
  const double hi = 1000.0 * p.gamma;
  constexpr int kNodes = 2049;
  std::vector<double> nodes(kNodes), h(kNodes);
  const double ratio = std::log(hi / lo) / (kNodes - 1);
  RamanMediumParams probe = p;
  for (int i = 0; i < kNodes; ++i) {
    nodes[static_cast<size_t>(i)] = lo * std::exp(ratio * i);
    probe.pump_separation = nodes[static_cast<size_t>(i)];
    h[static_cast<size_t>(i)] = detail::center_slope(probe) - target_slope;
  }

  std::vector<int> order(kNodes - 1);
  std::iota(order.begin(), order.end(), 0);
  const double anchor =
      std::clamp(p.pump_separation, nodes.front(), nodes.back());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma =
        0.5 * (nodes[static_cast<size_t>(a)] + nodes[static_cast<size_t>(a) + 1]);
    const double mb =
        0.5 * (nodes[static_cast<size_t>(b)] + nodes[static_cast<size_t>(b) + 1]);
    return std::abs(ma - anchor) < std::abs(mb - anchor);
  });

  const int idx = first_sign_change(h, order);
  if (idx < 0) {
    throw NotBracketed(
        "tune_to_cad(separation): no separation in (2.01, 1000)*gamma "
        "reaches the target slope");
  }
  const auto slope_err = [&](double separation) {
    RamanMediumParams q = p;
    q.pump_separation = separation;
    return detail::center_slope(q) - target_slope;
  };
  const double root = find_root_bracketed(
      slope_err, nodes[static_cast<size_t>(idx)],
      nodes[static_cast<size_t>(idx) + 1], h[static_cast<size_t>(idx)],
      h[static_cast<size_t>(idx) + 1]);

  RamanMediumParams out = p;
  out.pump_separation = root;
  if (std::abs(detail::center_slope(out) - target_slope) >
      kRelTol * std::abs(target_slope)) {
    throw NotBracketed(
        "tune_to_cad(separation): bisection did not reach the slope "
        "tolerance (degenerate crossing)");
  }
  return out;
}

}  // namespace fastlight
