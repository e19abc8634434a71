#pragma once

namespace fastlight {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Guard threshold for the dilute-medium linearization n = 1 + Re chi / 2.
inline constexpr double kDiluteLimit = 1e-2;

// Guard threshold for the fractional index perturbation |sigma*dS/n0|.
inline constexpr double kSmallnessLimit = 1e-2;

inline constexpr const char* kToolName = "fastlight";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace fastlight
