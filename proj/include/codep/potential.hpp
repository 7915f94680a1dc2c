#pragma once

#include "codep/field.hpp"
#include "codep/suscept.hpp"

#include <vector>

namespace codep {

enum class PotentialMode { averaged, time_dependent };

// Which contributions drive the dynamics. The non-interference /
// interference decomposition is exposed so either part can be plotted or
// propagated on its own.
enum class PotentialTerms { total, non_interference_only, interference_only };

struct OpticalPotentialSpec {
    SusceptibilitySet chi;
    StandingWaveConfig field;
    PotentialMode mode = PotentialMode::averaged;
    PotentialTerms terms = PotentialTerms::total;
};

OpticalPotentialSpec make_optical_potential(const MoleculeModel& model, const SuperpositionSpec& sup,
                                            const StandingWaveConfig& field,
                                            PotentialMode mode = PotentialMode::averaged,
                                            PotentialTerms terms = PotentialTerms::total,
                                            const ChiOptions& opts = {});

struct PotentialSample {
    double V_ni = 0.0; // J
    double V_in = 0.0; // J
    double total() const { return V_ni + V_in; }
};

// Cycle-averaged potential: every term oscillating at omega1 - omega2 dropped.
PotentialSample potential_averaged(double x, const OpticalPotentialSpec& spec);

// Full form including the beat-frequency terms.
PotentialSample potential_time_dependent(double x, double t, const OpticalPotentialSpec& spec);

// Potential value at x restricted to spec.terms (averaged mode).
double potential_energy(double x, const OpticalPotentialSpec& spec);

// -dV/dx of the averaged potential restricted to spec.terms, closed form.
double force_at(double x, const OpticalPotentialSpec& spec);

// d2V/dx2 of the averaged potential restricted to spec.terms, closed form.
double curvature_at(double x, const OpticalPotentialSpec& spec);

enum class ExtremumKind { minimum, maximum };

struct ExtremumRecord {
    double x = 0.0;        // m
    double value = 0.0;    // J
    double curvature = 0.0; // J/m^2
    ExtremumKind kind = ExtremumKind::minimum;
};

// Brackets every sign change of the force on a uniform grid and refines by
// bisection to |dx| < (x_hi - x_lo) * 1e-9. Records sorted by x. A flat
// potential yields an empty sequence. Grid must resolve the shorter
// wavelength with at least 10 points.
std::vector<ExtremumRecord> find_extrema(const OpticalPotentialSpec& spec, double x_lo, double x_hi,
                                         int grid_points);

// Harmonic oscillation period 2 pi sqrt(mass / V''(x_min)) of a well.
// Errors when x_min is not a minimum.
double well_period(const OpticalPotentialSpec& spec, double x_min, double mass);

// Smallest well period found in [x_lo, x_hi] divided by steps_per_period.
// Falls back to fallback_dt when no well exists (flat or zero potential).
double suggest_time_step(const OpticalPotentialSpec& spec, double x_lo, double x_hi, double mass,
                         int steps_per_period = 200, double fallback_dt = 1e-9);

} // namespace codep
