#pragma once

// Physical constants, CODATA 2018, SI units throughout.
namespace codep {

inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kPlanck = 6.62607015e-34;         // J s
inline constexpr double kSpeedOfLight = 2.99792458e8;     // m/s
inline constexpr double kBoltzmann = 1.380649e-23;        // J/K
inline constexpr double kAtomicMassUnit = 1.66053906660e-27; // kg
inline constexpr double kElectronVolt = 1.602176634e-19;  // J
inline constexpr double kDebye = 3.33564095198152e-30;    // C m  (1e-21 / c)
inline constexpr double kPi = 3.14159265358979323846;

// Energy of 1 cm^-1 in J (h c * 100).
inline constexpr double kWavenumberJoule = kPlanck * kSpeedOfLight * 100.0;
// Angular frequency of 1 cm^-1 in rad/s (2 pi c * 100).
inline constexpr double kWavenumberRadPerSec = 2.0 * kPi * kSpeedOfLight * 100.0;

} // namespace codep
