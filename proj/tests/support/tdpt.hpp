#pragma once

// Independent first-order time-dependent perturbation oracle: direct RK4
// time stepping of the driven amplitude integrals for a molecule at a fixed
// point in the field, with the sudden-turn-on transient removed by exact
// period averaging. Everything here reads only the model's levels and
// dipoles; none of the susceptibility code is used.

#include "codep/constants.hpp"
#include "codep/moldata.hpp"
#include "codep/suscept.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace tdpt {

struct DriveSpec {
    double amp1 = 0.0;   // field amplitude factor A1 (real drive 2 A1 cos w1 t), V/m
    double amp2 = 0.0;   // A2
    double omega1 = 0.0; // rad/s
    double omega2 = 0.0; // rad/s
};

struct Signal {
    std::vector<double> t;
    std::vector<double> mu; // induced dipole, C m
};

// Integrates the first-order amplitudes b_j(t) over one common period
// T0 = 2 pi / base_omega, sampling `samples` points with `substeps` RK4
// steps between samples. All drive and transition frequencies must be
// integer multiples of base_omega for the transient projection to be exact.
inline Signal induced_dipole(const codep::MoleculeModel& model, const codep::SuperpositionSpec& sup,
                             const DriveSpec& drive, double base_omega, int samples = 4096,
                             int substeps = 400) {
    using cplx = std::complex<double>;
    const cplx I(0.0, 1.0);

    const int ground[2] = {sup.state1, sup.state2};
    const cplx coeff[2] = {sup.c1, sup.c2};

    // Union of excited partners with their couplings to each pair member.
    struct Level {
        int index;
        double mu1, mu2; // C m
        double w1, w2;   // omega_j1, omega_j2 (rad/s)
    };
    std::vector<Level> levels;
    auto add_partner = [&](int j) {
        for (const auto& l : levels)
            if (l.index == j) return;
        Level l;
        l.index = j;
        l.mu1 = model.dipole(j, ground[0]);
        l.mu2 = model.dipole(j, ground[1]);
        l.w1 = (model.state(j).energy - model.state(ground[0]).energy) / codep::kHbar;
        l.w2 = (model.state(j).energy - model.state(ground[1]).energy) / codep::kHbar;
        levels.push_back(l);
    };
    for (const auto& p : model.partners(ground[0])) add_partner(p.state);
    if (ground[1] != ground[0])
        for (const auto& p : model.partners(ground[1])) add_partner(p.state);

    auto field = [&](double t) {
        return 2.0 * drive.amp1 * std::cos(drive.omega1 * t) +
               2.0 * drive.amp2 * std::cos(drive.omega2 * t);
    };

    const double T0 = 2.0 * codep::kPi / base_omega;
    const std::size_t n = static_cast<std::size_t>(samples);
    const double dt = T0 / (static_cast<double>(samples) * substeps);

    // b_j sampled on the period grid; db/dt = (i/hbar) sum_i c_i mu_ji E(t) e^{i w_ji t}
    std::vector<std::vector<cplx>> b(levels.size(), std::vector<cplx>(n));
    for (std::size_t j = 0; j < levels.size(); ++j) {
        const Level& l = levels[j];
        auto rate = [&](double t) {
            const double e = field(t);
            cplx s = coeff[0] * l.mu1 * std::exp(I * l.w1 * t);
            if (ground[1] != ground[0]) s += coeff[1] * l.mu2 * std::exp(I * l.w2 * t);
            return (I / codep::kHbar) * s * e;
        };
        cplx bj(0.0, 0.0);
        double t = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            b[j][k] = bj;
            for (int s = 0; s < substeps; ++s) {
                const cplx k1 = rate(t);
                const cplx k2 = rate(t + 0.5 * dt);
                const cplx k4 = rate(t + dt);
                bj += dt / 6.0 * (k1 + 4.0 * k2 + k4);
                t += dt;
            }
        }
        // The free part of b_j is constant in this picture, so the exact
        // period mean isolates the turn-on transient.
        cplx mean(0.0, 0.0);
        for (const cplx& v : b[j]) mean += v;
        mean /= static_cast<double>(n);
        for (cplx& v : b[j]) v -= mean;
    }

    Signal out;
    out.t.resize(n);
    out.mu.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = T0 * static_cast<double>(k) / static_cast<double>(n);
        out.t[k] = t;
        cplx total(0.0, 0.0);
        for (std::size_t j = 0; j < levels.size(); ++j) {
            const Level& l = levels[j];
            total += std::conj(coeff[0]) * l.mu1 * b[j][k] * std::exp(-I * l.w1 * t);
            if (ground[1] != ground[0])
                total += std::conj(coeff[1]) * l.mu2 * b[j][k] * std::exp(-I * l.w2 * t);
        }
        out.mu[k] = 2.0 * total.real();
    }
    return out;
}

// Complex amplitude of the e^{i omega t} component of a sampled real signal
// over its exact period (plain discrete projection).
inline std::complex<double> project(const Signal& sig, double omega) {
    using cplx = std::complex<double>;
    const cplx I(0.0, 1.0);
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < sig.t.size(); ++k)
        acc += sig.mu[k] * std::exp(-I * omega * sig.t[k]);
    return acc / static_cast<double>(sig.t.size());
}

} // namespace tdpt
