#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "fastlight/errors.hpp"

namespace fastlight {

// Root solver for a bracketed sign change: bisection with a terminal
// secant polish.  The bracket width shrinks monotonically and the result
// is independent of the initial bracket (among brackets of the same
// root) down to a few ulps.  `trace`, when given, records the bracket
// after every step.
template <class F>
double find_root_bracketed(F&& f, double lo, double hi, double f_lo,
                           double f_hi,
                           std::vector<std::pair<double, double>>* trace =
                               nullptr) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NotBracketed("no sign change over the supplied bracket");
  }

  constexpr int kMaxIter = 200;
  for (int i = 0; i < kMaxIter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket exhausted to ulp level
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
    if (trace) trace->emplace_back(lo, hi);
  }

  // Secant refinement inside the final interval.
  const double denom = f_hi - f_lo;
  if (denom != 0.0) {
    const double s = lo - f_lo * (hi - lo) / denom;
    if (s > lo && s < hi) return s;
  }
  return 0.5 * (lo + hi);
}

// Scans `nodes` (ascending) for sign changes of f and returns the index i
// of the first interval [nodes[i], nodes[i+1]] with a sign change, trying
// intervals in the caller-supplied order.  Returns -1 when none exists.
inline int first_sign_change(const std::vector<double>& values,
                             const std::vector<int>& order) {
  for (int i : order) {
    const double a = values[static_cast<size_t>(i)];
    const double b = values[static_cast<size_t>(i) + 1];
    if (a == 0.0 || std::signbit(a) != std::signbit(b)) return i;
  }
  return -1;
}

}  // namespace fastlight
