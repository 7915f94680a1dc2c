#include "codep/mixture.hpp"

#include "codep/error.hpp"
#include "codep/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace codep {

void PreparationPulse::validate() const {
    if (field_strength <= 0.0) throw ValidationError("pulse: field_strength must be > 0");
    if (spectral_width <= 0.0) throw ValidationError("pulse: spectral_width must be > 0");
}

void MixtureSpec::validate() const {
    if (components.empty()) throw ValidationError("mixture: no components");
    double total = 0.0;
    for (const auto& c : components) {
        if (c.weight < 0.0) throw ValidationError("mixture: negative weight");
        total += c.weight;
        const double n = std::norm(c.superposition.c1) + std::norm(c.superposition.c2);
        if (std::abs(n - 1.0) > 1e-12)
            throw ValidationError("mixture: component coefficients not normalized");
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ValidationError("mixture: weights sum to " + std::to_string(total) + ", expected 1");
}

namespace {

// Fraction of the continuous rigid-rotor population below J + 1/2.
double rotor_capture(double J, double beta) {
    // integral of exp(-beta u(u+1)) du from 0 to J+1/2, normalized; with
    // u(u+1) = (u+1/2)^2 - 1/4 the integral reduces to erf.
    const double a = std::sqrt(beta);
    const double lo = std::erf(0.5 * a);
    return (std::erf(a * (J + 0.5)) - lo) / (1.0 - lo);
}

} // namespace

std::map<JMKey, double> boltzmann_weights(const MoleculeModel& model, double temperature,
                                          double cutoff) {
    if (temperature <= 0.0) throw ValidationError("boltzmann_weights: temperature must be > 0");
    if (cutoff <= 0.0 || cutoff > 1.0) throw ValidationError("boltzmann_weights: cutoff in (0, 1]");
    const double B = model.rotational_constant_cm();
    if (B <= 0.0) throw ValidationError("boltzmann_weights: rotational constant unavailable");
    const double beta = B * kWavenumberJoule / (kBoltzmann * temperature);

    // J values present in the nu = 0 ground manifold.
    std::set<int> available;
    for (const auto& s : model.states())
        if (s.label == model.ground_label() && s.nu == 0) available.insert(s.J);
    if (available.empty()) throw ValidationError("boltzmann_weights: no nu=0 ground states");

    int j_max = *available.rbegin();
    if (cutoff < 1.0) {
        for (int J = 0; J <= j_max; ++J) {
            if (rotor_capture(static_cast<double>(J), beta) >= cutoff) {
                j_max = J;
                break;
            }
        }
    }

    std::map<JMKey, double> weights;
    double total = 0.0;
    for (const auto& s : model.states()) {
        if (s.label != model.ground_label() || s.nu != 0) continue;
        if (s.J > j_max) continue;
        const double q = std::exp(-beta * static_cast<double>(s.J) * (s.J + 1));
        weights[{s.J, s.M}] = q;
        total += q;
    }
    for (auto& [key, w] : weights) w /= total;
    return weights;
}

std::pair<std::complex<double>, std::complex<double>> preparation_coefficients(
    const PreparationPulse& pulse, int J_from, int J_to, int M_from, int M_to) {
    if (J_to - J_from != 2) throw ValidationError("preparation_coefficients: pair must have delta-J = 2");
    if (M_from != M_to) throw ValidationError("preparation_coefficients: pair must have delta-M = 0");
    if (pulse.field_strength == 0.0) return {{1.0, 0.0}, {0.0, 0.0}};
    pulse.validate();

    // Effective two-photon coupling: pulse area A = C E^2 / d_omega, with C
    // fixed so the reference pulse (3.25e9 V/m, 75.4 cm-1) transfers 20% of
    // the population (|c|^2 = 0.8).
    constexpr double ref_field = 3.25e9;                          // V/m
    constexpr double ref_width = 75.4 * kWavenumberRadPerSec;     // rad/s
    const double ref_area = 2.0 * std::asin(std::sqrt(0.2));
    constexpr double ref_e2 = ref_field * ref_field;
    const double coupling = ref_area * ref_width / ref_e2;

    const double d_omega = pulse.spectral_width * kWavenumberRadPerSec;
    const double area = coupling * pulse.field_strength * pulse.field_strength / d_omega;
    const double d = std::sin(0.5 * area);
    const double c = std::cos(0.5 * area);
    return {{c, 0.0}, {d, 0.0}};
}

MixtureSpec make_thermal_mixture(const MoleculeModel& model, double temperature, double cutoff,
                                 const PreparationPulse& pulse) {
    MixtureSpec mix;
    mix.temperature = temperature;
    auto weights = boltzmann_weights(model, temperature, cutoff);
    const std::string& g = model.ground_label();
    double kept = 0.0;
    for (const auto& [key, w] : weights) {
        auto partner = model.find({g, 0, key.J + 2, key.M});
        if (!partner) continue; // pair outside the dataset: left unexcited and unpropagated
        auto [c, d] = preparation_coefficients(pulse, key.J, key.J + 2, key.M, key.M);
        MixtureComponent comp;
        comp.weight = w;
        comp.J = key.J;
        comp.M = key.M;
        comp.superposition = SuperpositionSpec::make(model, {g, 0, key.J, key.M},
                                                     {g, 0, key.J + 2, key.M}, c, d);
        mix.components.push_back(std::move(comp));
        kept += w;
    }
    if (mix.components.empty()) throw ValidationError("make_thermal_mixture: no excitable pairs");
    for (auto& c : mix.components) c.weight /= kept;
    return mix;
}

std::uint64_t mixture_component_seed(std::uint64_t master_seed, std::size_t component) {
    return derive_seed(master_seed ^ 0xC0117EC7ED5EEDULL, component);
}

std::vector<std::int64_t> allocate_counts(const std::vector<double>& weights, std::int64_t n) {
    std::vector<std::int64_t> counts(weights.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double exact = weights[i] * static_cast<double>(n);
        counts[i] = static_cast<std::int64_t>(std::floor(exact));
        assigned += counts[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++counts[remainders[k % remainders.size()].second];
    return counts;
}

MixtureRunResult simulate_mixture_deposition(const MoleculeModel& model, const MixtureSpec& mixture,
                                             const StandingWaveConfig& field, const BeamConfig& beam,
                                             std::int64_t n, std::uint64_t seed,
                                             const DepositionOptions& options, bool keep_components) {
    mixture.validate();
    std::vector<double> weights;
    weights.reserve(mixture.components.size());
    for (const auto& c : mixture.components) weights.push_back(c.weight);
    MixtureRunResult result;
    result.allocation = allocate_counts(weights, n);

    for (std::size_t k = 0; k < mixture.components.size(); ++k) {
        if (result.allocation[k] == 0) {
            if (keep_components) {
                DepositionHistogram empty;
                empty.bin_width = options.bin_width;
                result.per_component.push_back(empty);
            }
            continue;
        }
        DepositionHistogram h =
            simulate_deposition(model, mixture.components[k].superposition, field, beam,
                                result.allocation[k], mixture_component_seed(seed, k), options);
        if (keep_components) result.per_component.push_back(h);
        merge_histogram(result.combined, h);
    }
    return result;
}

} // namespace codep
