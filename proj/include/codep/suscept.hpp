#pragma once

#include "codep/field.hpp"
#include "codep/moldata.hpp"

#include <complex>

namespace codep {

// Prepared two-state superposition over the ground manifold,
// c1|s1> + c2|s2> with |c1|^2 + |c2|^2 = 1.
struct SuperpositionSpec {
    int state1 = -1;
    int state2 = -1;
    std::complex<double> c1{1.0, 0.0};
    std::complex<double> c2{0.0, 0.0};

    // Relative phase of the coefficients, arg(c1 * conj(c2)).
    double theta() const { return std::arg(c1 * std::conj(c2)); }
    std::complex<double> coherence() const { return c1 * std::conj(c2); }

    static SuperpositionSpec make(const MoleculeModel& model, const StateKey& s1, const StateKey& s2,
                                  std::complex<double> c1, std::complex<double> c2);
    // Single prepared state (no coherence).
    static SuperpositionSpec pure(const MoleculeModel& model, const StateKey& s);
};

struct ChiOptions {
    // Near-resonance guard on every summed denominator, rad/s.
    double resonance_guard = kWavenumberRadPerSec; // 1 cm-1 equivalent
};

// The six polarizability components of the superposition in the two-color
// field, all in C m^2 / V. chi_in carry the printed amplitude-ratio factors
// (E2/E1 for the omega1 component, E1/E2 for omega2); kernel_w1/kernel_w2
// are the same sums without those ratios, so potentials built from them stay
// finite when one amplitude is zero. When an amplitude is zero the
// corresponding printed component is stored as exact zero.
struct SusceptibilitySet {
    double chi_ni_w1 = 0.0;
    double chi_ni_w2 = 0.0;
    std::complex<double> chi_in_w1{0.0, 0.0};
    std::complex<double> chi_in_w2{0.0, 0.0};
    std::complex<double> chi_in_w21p1{0.0, 0.0}; // response at omega21 + omega1
    std::complex<double> chi_in_w21m2{0.0, 0.0}; // response at omega21 - omega2
    std::complex<double> kernel_w1{0.0, 0.0};    // chi_in_w1 * (E1/E2)
    std::complex<double> kernel_w2{0.0, 0.0};    // chi_in_w2 * (E2/E1)
};

// Residual of the two-photon resonance condition,
// (E1 - E2)/hbar + (omega1 - omega2). Zero when the condition holds exactly.
double resonance_detuning(const MoleculeModel& model, const StandingWaveConfig& field,
                          const SuperpositionSpec& sup);

// Population-weighted (non-interference) polarizability at omega.
double chi_ni(const MoleculeModel& model, const SuperpositionSpec& sup, double omega,
              const ChiOptions& opts = {});

enum class ChiInComponent { w1, w2, w21_plus_w1, w21_minus_w2 };

// Coherence-weighted (interference) polarizability component, exactly as
// printed including the amplitude-ratio factor for w1/w2. Opposite-parity
// pairs give exact zero; a zero divisor amplitude is an error.
std::complex<double> chi_in(const MoleculeModel& model, const SuperpositionSpec& sup,
                            const StandingWaveConfig& field, ChiInComponent which,
                            const ChiOptions& opts = {});

SusceptibilitySet susceptibility_set(const MoleculeModel& model, const SuperpositionSpec& sup,
                                     const StandingWaveConfig& field, const ChiOptions& opts = {});

} // namespace codep
