#pragma once

// Closed-form beat-note enhancement: the first-order self-consistent
// factor xi = n0/n_g, the second-order closure with its Q parameter, the
// saturation bound 2/sqrt|Q|, and sensitivity-vs-group-index curve
// generation.
//
// Branch rule for the second-order closure: upper signs for n_g >= 0,
// lower signs for n_g < 0.  This reproduces the first-order limit on the
// positive side and the 2/sqrt|Q| saturation on both sides; the upper
// branch approaches the bound from below, the lower branch from above
// (and diverges as n_g/n0 moves away from zero, a region the curve
// generator reports but does not interpret).

#include <cmath>
#include <limits>
#include <vector>

#include "fastlight/errors.hpp"

namespace fastlight {

struct FirstOrderBeat {
  double beat;  // rad/s
  double xi;    // n0 / n_g, signed
};

// Eq.-4-style self-consistent beat: beat = beat0 * n0 / n_g.  Throws
// CadSingularity for |n_g| <= 1e-3 * n0, where the first-order formula
// diverges and the second-order closure must be used instead.
inline FirstOrderBeat first_order_beat(double beat0, double n0, double omega0,
                                       double dn_domega) {
  const double n_g = n0 + omega0 * dn_domega;
  if (std::abs(n_g) <= 1e-3 * n0) {
    throw CadSingularity(
        "first_order_beat: |n_g| <= 1e-3 * n0, first-order formula "
        "diverges at the critically anomalous dispersion point");
  }
  const double xi = n0 / n_g;
  return {beat0 * xi, xi};
}

// Q = f * n'' * omega0^2 with n'' = (d2n/domega2)/n0, signed.  Values
// above ~1e-3 put the quadratic closure itself in doubt; callers warn.
inline double q_factor(double f_frac, double n_dd, double omega0) {
  if (!(f_frac > 0)) throw ConfigError("q_factor: fractional bandwidth must be > 0");
  return f_frac * n_dd * omega0 * omega0;
}

enum class Branch { upper, lower };

struct SecondOrderBeat {
  double beat;  // rad/s, signed per the cavity convention
  double eta;   // dimensionless, >= 0
};

// Second-order closure  eta = | +-2*xi / (1 +- sqrt(1 + Q*xi^2)) |  with
// branch upper = (+,+), lower = (-,-).  The beat keeps the sign of the
// first-order result, so the Q -> 0 limit recovers beat0 * xi exactly.
inline SecondOrderBeat second_order_beat(double beat0, double xi, double Q,
                                         Branch branch) {
  const double disc = 1.0 + Q * xi * xi;
  if (disc < 0.0) {
    throw ComplexRoot(
        "second_order_beat: 1 + Q*xi^2 < 0, no real solution");
  }
  const double root = std::sqrt(disc);
  const double denom = branch == Branch::upper ? 1.0 + root : 1.0 - root;
  if (denom == 0.0) {
    throw ComplexRoot(
        "second_order_beat: branch denominator vanishes (Q*xi^2 = 0 on "
        "the lower branch)");
  }
  const double signed_eta =
      branch == Branch::upper ? 2.0 * xi / denom : -2.0 * xi / denom;
  const double eta = std::abs(signed_eta);
  return {std::copysign(eta, xi) * beat0, eta};
}

// Saturation bound 2 / sqrt(|Q|).  Q = 0 means the bound is infinite;
// that is reported as an error so callers can surface "unbounded" rather
// than a number.
inline double eta_max(double Q) {
  if (Q == 0.0) throw ZeroQ("eta_max: Q = 0, enhancement is unbounded");
  return 2.0 / std::sqrt(std::abs(Q));
}

struct Fig3Sample {
  double ng_over_n0;  // 1/xi
  double eta;         // NaN when flagged
  Branch branch;
  bool complex_root;  // sample flagged, not dropped
};

namespace detail {

// Log-spaced magnitudes between lo_mag and hi_mag (both > 0), ascending.
inline std::vector<double> log_spaced(double lo_mag, double hi_mag, int count) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  if (count == 1) {
    out.push_back(lo_mag);
    return out;
  }
  const double step = std::log(hi_mag / lo_mag) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(lo_mag * std::exp(step * i));
  return out;
}

}  // namespace detail

// Enhancement curve eta vs n_g/n0 over [v_lo, v_hi].  Sampling is
// log-spaced in |n_g/n0| on each sign side (the saturation plateau lives
// many decades below |v| = 1, out of reach of uniform spacing), with the
// magnitude floored at 1e-12; ranges crossing zero get both sides.  For
// Q < 0 the near-singular points |v| = sqrt(|Q|) are excluded with
// half-width 1e-12 and samples past the discriminant zero are flagged.
inline std::vector<Fig3Sample> figure3_curve(double Q, double v_lo,
                                             double v_hi, int num_samples) {
  if (!(v_lo < v_hi)) throw ConfigError("figure3_curve: empty range");
  if (num_samples < 2) throw ConfigError("figure3_curve: need >= 2 samples");
  constexpr double kFloor = 1e-12;

  std::vector<double> vs;
  vs.reserve(static_cast<size_t>(num_samples));
  const bool has_neg = v_lo < -kFloor;
  const bool has_pos = v_hi > kFloor;
  if (has_pos && !has_neg) {
    vs = detail::log_spaced(std::max(v_lo, kFloor), v_hi, num_samples);
  } else if (has_neg && !has_pos) {
    for (double m :
         detail::log_spaced(std::max(-v_hi, kFloor), -v_lo, num_samples)) {
      vs.push_back(-m);
    }
  } else if (has_neg && has_pos) {
    const int n_neg = num_samples / 2;
    const int n_pos = num_samples - n_neg;
    for (double m : detail::log_spaced(kFloor, -v_lo, n_neg)) vs.push_back(-m);
    for (double m : detail::log_spaced(kFloor, v_hi, n_pos)) vs.push_back(m);
  } else {
    throw ConfigError("figure3_curve: range lies inside the |n_g/n0| floor");
  }
  std::sort(vs.begin(), vs.end());

  std::vector<Fig3Sample> out;
  out.reserve(vs.size());
  for (double v : vs) {
    if (Q < 0.0 && std::abs(std::abs(v) - std::sqrt(-Q)) < kFloor) continue;
    const Branch branch = v >= 0.0 ? Branch::upper : Branch::lower;
    const double xi = 1.0 / v;
    Fig3Sample s{v, std::numeric_limits<double>::quiet_NaN(), branch, false};
    try {
      s.eta = second_order_beat(1.0, xi, Q, branch).eta;
    } catch (const ComplexRoot&) {
      s.complex_root = true;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace fastlight
