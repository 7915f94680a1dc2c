#pragma once

#include "codep/dynamics.hpp"

#include <complex>
#include <map>
#include <vector>

namespace codep {

struct PreparationPulse {
    double field_strength = 0.0; // V/m
    double spectral_width = 0.0; // cm-1
    // shape: square (the only supported shape)

    void validate() const;
};

struct MixtureComponent {
    double weight = 0.0;
    SuperpositionSpec superposition;
    int J = 0;
    int M = 0;
};

struct MixtureSpec {
    std::vector<MixtureComponent> components;
    double temperature = 0.0; // K

    void validate() const;
};

struct JMKey {
    int J = 0;
    int M = 0;
    friend auto operator<=>(const JMKey&, const JMKey&) = default;
};

// Rotational Boltzmann weights over the ground-manifold nu = 0 J-ladder,
// w(J, M) proportional to exp(-B J(J+1) hc / kB T), equal across M within a
// J. The ladder is truncated at the smallest J whose continuous rigid-rotor
// population capture reaches `cutoff`; weights renormalize to 1 over the
// included (J, M) states.
std::map<JMKey, double> boltzmann_weights(const MoleculeModel& model, double temperature,
                                          double cutoff);

// Effective two-photon Rabi coefficients for a square pulse driving
// (J, M) -> (J+2, M): |d|^2 = sin^2(A/2) with pulse area A proportional to
// field_strength^2 / spectral_width; |c|^2 + |d|^2 = 1 exactly. The coupling
// constant is fixed so a 3.25e9 V/m, 75.4 cm-1 pulse gives |c|^2 = 0.8.
std::pair<std::complex<double>, std::complex<double>> preparation_coefficients(
    const PreparationPulse& pulse, int J_from, int J_to, int M_from, int M_to);

// Boltzmann mixture of pairwise superpositions (J, M) -> (J+2, M) prepared
// by `pulse`; only pairs whose partner exists in the model are excited.
MixtureSpec make_thermal_mixture(const MoleculeModel& model, double temperature, double cutoff,
                                 const PreparationPulse& pulse);

// Deterministic sub-seed for component k of a mixture run.
std::uint64_t mixture_component_seed(std::uint64_t master_seed, std::size_t component);

// Largest-remainder allocation of n trajectories over the component weights;
// totals exactly n.
std::vector<std::int64_t> allocate_counts(const std::vector<double>& weights, std::int64_t n);

struct MixtureRunResult {
    DepositionHistogram combined;
    std::vector<DepositionHistogram> per_component; // filled when keep_components
    std::vector<std::int64_t> allocation;
};

// Runs simulate_deposition per component with round(w*n) trajectories
// (largest remainder) and per-component sub-seeds, then sums the histograms.
MixtureRunResult simulate_mixture_deposition(const MoleculeModel& model, const MixtureSpec& mixture,
                                             const StandingWaveConfig& field, const BeamConfig& beam,
                                             std::int64_t n, std::uint64_t seed,
                                             const DepositionOptions& options = {},
                                             bool keep_components = false);

} // namespace codep
