#include "codep/suscept.hpp"

#include "codep/error.hpp"

#include <cmath>
#include <sstream>

namespace codep {

namespace {

double check_norm(std::complex<double> c1, std::complex<double> c2) {
    double n = std::norm(c1) + std::norm(c2);
    if (std::abs(n - 1.0) > 1e-12)
        throw ValidationError("superposition coefficients not normalized: |c1|^2 + |c2|^2 = " +
                              std::to_string(n));
    return n;
}

[[noreturn]] void near_resonance_error(const MoleculeModel& model, int level, double den,
                                       double omega) {
    std::ostringstream os;
    os << "near-resonant denominator for level " << model.state(level).key().str() << ": |detuning| = "
       << std::abs(den) << " rad/s (" << std::abs(den) / kWavenumberRadPerSec << " cm-1) at omega = "
       << omega << " rad/s";
    throw NumericsError(os.str());
}

double guarded_inverse(const MoleculeModel& model, int level, double den, double omega,
                       const ChiOptions& opts) {
    if (std::abs(den) < opts.resonance_guard) near_resonance_error(model, level, den, omega);
    return 1.0 / den;
}

// Transition angular frequency (E_j - E_i)/hbar, positive for j above i.
double omega_ji(const MoleculeModel& model, int j, int i) {
    return (model.state(j).energy - model.state(i).energy) / kHbar;
}

} // namespace

SuperpositionSpec SuperpositionSpec::make(const MoleculeModel& model, const StateKey& s1,
                                          const StateKey& s2, std::complex<double> c1,
                                          std::complex<double> c2) {
    SuperpositionSpec sup;
    sup.state1 = model.require(s1);
    sup.state2 = model.require(s2);
    sup.c1 = c1;
    sup.c2 = c2;
    check_norm(c1, c2);
    if (!model.is_ground(sup.state1) || !model.is_ground(sup.state2))
        throw ValidationError("superposition states must be in the ground manifold");
    return sup;
}

SuperpositionSpec SuperpositionSpec::pure(const MoleculeModel& model, const StateKey& s) {
    SuperpositionSpec sup;
    sup.state1 = model.require(s);
    sup.state2 = sup.state1;
    sup.c1 = {1.0, 0.0};
    sup.c2 = {0.0, 0.0};
    if (!model.is_ground(sup.state1))
        throw ValidationError("superposition states must be in the ground manifold");
    return sup;
}

double resonance_detuning(const MoleculeModel& model, const StandingWaveConfig& field,
                          const SuperpositionSpec& sup) {
    const double E1 = model.state(sup.state1).energy;
    const double E2 = model.state(sup.state2).energy;
    return (E1 - E2) / kHbar + (field.omega1() - field.omega2());
}

double chi_ni(const MoleculeModel& model, const SuperpositionSpec& sup, double omega,
              const ChiOptions& opts) {
    double sum = 0.0;
    const int states[2] = {sup.state1, sup.state2};
    const double weights[2] = {std::norm(sup.c1), std::norm(sup.c2)};
    for (int t = 0; t < 2; ++t) {
        if (weights[t] == 0.0) continue;
        const int i = states[t];
        for (const auto& p : model.partners(i)) {
            const double w_ji = omega_ji(model, p.state, i);
            const double term = guarded_inverse(model, p.state, w_ji + omega, omega, opts) +
                                guarded_inverse(model, p.state, w_ji - omega, omega, opts);
            sum += weights[t] * p.mu * p.mu * term;
        }
    }
    return sum / kHbar;
}

namespace {

// Summed over the intermediate states coupled to both pair members.
// f(j, mu_j1, mu_j2) accumulates one shared level's contribution.
template <class F>
void for_each_shared_partner(const MoleculeModel& model, int s1, int s2, F&& f) {
    auto row1 = model.partners(s1);
    auto row2 = model.partners(s2);
    std::size_t a = 0, b = 0;
    while (a < row1.size() && b < row2.size()) {
        if (row1[a].state < row2[b].state) ++a;
        else if (row2[b].state < row1[a].state) ++b;
        else {
            f(row1[a].state, row1[a].mu, row2[b].mu);
            ++a;
            ++b;
        }
    }
}

struct InKernels {
    std::complex<double> w1, w2, w21p1, w21m2;
};

// The four interference sums without amplitude-ratio factors.
InKernels interference_kernels(const MoleculeModel& model, const SuperpositionSpec& sup,
                               const StandingWaveConfig& field, const ChiOptions& opts) {
    InKernels k;
    const std::complex<double> gamma = sup.coherence(); // c1 conj(c2)
    if (gamma == std::complex<double>(0.0, 0.0)) return k;
    if (model.state(sup.state1).parity != model.state(sup.state2).parity) return k;

    const double w1 = field.omega1();
    const double w2 = field.omega2();
    std::complex<double> s_w1{}, s_w2{}, s_p1_g{}, s_p1_gc{}, s_m2_g{}, s_m2_gc{};
    for_each_shared_partner(model, sup.state1, sup.state2, [&](int j, double mu_j1, double mu_j2) {
        const double w_j1 = omega_ji(model, j, sup.state1);
        const double w_j2 = omega_ji(model, j, sup.state2);
        const double mumu = mu_j1 * mu_j2;
        s_w1 += mumu * (guarded_inverse(model, j, w_j1 + w2, w2, opts) +
                        guarded_inverse(model, j, w_j2 - w2, w2, opts));
        s_w2 += mumu * (guarded_inverse(model, j, w_j2 + w1, w1, opts) +
                        guarded_inverse(model, j, w_j1 - w1, w1, opts));
        s_p1_g += mumu * guarded_inverse(model, j, w_j1 + w1, w1, opts);
        s_p1_gc += mumu * guarded_inverse(model, j, w_j2 - w1, w1, opts);
        s_m2_g += mumu * guarded_inverse(model, j, w_j1 - w2, w2, opts);
        s_m2_gc += mumu * guarded_inverse(model, j, w_j2 + w2, w2, opts);
    });
    const std::complex<double> gc = std::conj(gamma);
    k.w1 = gamma * s_w1 / kHbar;
    k.w2 = gc * s_w2 / kHbar;
    k.w21p1 = (gamma * s_p1_g + gc * s_p1_gc) / kHbar;
    k.w21m2 = (gamma * s_m2_g + gc * s_m2_gc) / kHbar;
    return k;
}

} // namespace

std::complex<double> chi_in(const MoleculeModel& model, const SuperpositionSpec& sup,
                            const StandingWaveConfig& field, ChiInComponent which,
                            const ChiOptions& opts) {
    InKernels k = interference_kernels(model, sup, field, opts);
    switch (which) {
    case ChiInComponent::w1:
        if (field.E1_0 == 0.0) throw ValidationError("chi_in(omega1): zero divisor amplitude E1");
        return k.w1 * (field.E2_0 / field.E1_0);
    case ChiInComponent::w2:
        if (field.E2_0 == 0.0) throw ValidationError("chi_in(omega2): zero divisor amplitude E2");
        return k.w2 * (field.E1_0 / field.E2_0);
    case ChiInComponent::w21_plus_w1: return k.w21p1;
    case ChiInComponent::w21_minus_w2: return k.w21m2;
    }
    throw Error("unreachable chi_in component");
}

SusceptibilitySet susceptibility_set(const MoleculeModel& model, const SuperpositionSpec& sup,
                                     const StandingWaveConfig& field, const ChiOptions& opts) {
    SusceptibilitySet set;
    set.chi_ni_w1 = chi_ni(model, sup, field.omega1(), opts);
    set.chi_ni_w2 = chi_ni(model, sup, field.omega2(), opts);
    InKernels k = interference_kernels(model, sup, field, opts);
    set.kernel_w1 = k.w1;
    set.kernel_w2 = k.w2;
    set.chi_in_w21p1 = k.w21p1;
    set.chi_in_w21m2 = k.w21m2;
    set.chi_in_w1 = field.E1_0 > 0.0 ? k.w1 * (field.E2_0 / field.E1_0) : std::complex<double>(0.0);
    set.chi_in_w2 = field.E2_0 > 0.0 ? k.w2 * (field.E1_0 / field.E2_0) : std::complex<double>(0.0);
    return set;
}

StandingWaveConfig StandingWaveConfig::make(double E1, double E2, double lambda1_m, double lambda2_m,
                                            double theta_F_rad) {
    if (E1 < 0.0 || E2 < 0.0) throw ValidationError("field amplitudes must be >= 0");
    if (lambda1_m <= 0.0 || lambda2_m <= 0.0) throw ValidationError("wavelengths must be > 0");
    StandingWaveConfig f;
    f.E1_0 = E1;
    f.E2_0 = E2;
    f.lambda1 = lambda1_m;
    f.lambda2 = lambda2_m;
    f.theta_F = theta_F_rad;
    return f;
}

} // namespace codep
