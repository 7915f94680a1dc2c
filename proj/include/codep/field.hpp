#pragma once

#include "codep/constants.hpp"

namespace codep {

// Two standing waves parallel to the surface, z-polarized, with relative
// phase theta_F. Wave vectors and angular frequencies derive from the
// wavelengths, so they are consistent by construction.
struct StandingWaveConfig {
    double E1_0 = 0.0;    // max amplitude, V/m
    double E2_0 = 0.0;    // V/m
    double lambda1 = 0.0; // m
    double lambda2 = 0.0; // m
    double theta_F = 0.0; // rad

    double k1() const { return 2.0 * kPi / lambda1; }          // rad/m
    double k2() const { return 2.0 * kPi / lambda2; }          // rad/m
    double omega1() const { return 2.0 * kPi * kSpeedOfLight / lambda1; } // rad/s
    double omega2() const { return 2.0 * kPi * kSpeedOfLight / lambda2; } // rad/s

    static StandingWaveConfig make(double E1, double E2, double lambda1_m, double lambda2_m,
                                   double theta_F_rad);
};

} // namespace codep
