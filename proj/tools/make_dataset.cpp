// Emits the synthetic N2-like molecular dataset shipped under data/.
//
// The level structure mimics N2: a ground manifold with B = 1.9896 cm-1 and
// a ~2325 cm-1 vibrational gap, plus six excited electronic manifolds around
// 100,000 cm-1 with three vibrational levels each. Transition dipoles are
// synthetic (order 0.1-1 D) with Franck-Condon-like nu factors and a mild
// (J, M) texture. The overall dipole scale is solved so that the deepest
// well of the reference two-color configuration has an oscillation period T
// with t_int = T / 4, which places the reference interaction time on the
// first focusing quarter-period.

#include "codep/constants.hpp"
#include "codep/dynamics.hpp"
#include "codep/moldata.hpp"
#include "codep/potential.hpp"
#include "codep/suscept.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace codep;

namespace {

struct ExcitedLabel {
    const char* name;
    double T0_cm;     // electronic origin
    double omega_cm;  // vibrational spacing
    double B_cm;      // rotational constant
    double mu_base_D; // electronic transition dipole scale
};

constexpr std::array<ExcitedLabel, 6> kLabels = {{
    {"b1Pu", 100900.0, 1730.0, 1.45, 1.00},
    {"bp1Su", 102800.0, 1520.0, 1.15, 0.85},
    {"c1Pu", 104100.0, 1810.0, 1.63, 0.90},
    {"cp1Su", 107200.0, 2050.0, 1.93, 0.75},
    {"o1Pu", 105900.0, 1900.0, 1.73, 0.70},
    {"ep1Su", 109300.0, 1960.0, 1.81, 0.60},
}};

constexpr double kGroundB = 1.9896;      // cm-1
constexpr double kGroundVib = 2324.69;   // cm-1, resonant with the reference color pair
constexpr int kExcitedNu = 3;
constexpr int kGroundJMax = 21;

// Franck-Condon-like factors for (ground nu, excited nu').
double fc_factor(int nu, int nup) {
    static const double table[2][kExcitedNu] = {{1.00, 0.62, 0.35}, {0.58, 0.88, 0.52}};
    return table[nu][nup];
}


// Mild deterministic (J, M) texture on the dipole magnitudes.
double jm_texture(int J, int M) {
    return 1.0 + 0.012 * static_cast<double>(J) / 21.0 -
           0.008 * static_cast<double>(std::abs(M)) / static_cast<double>(J + 1);
}

struct Entry {
    StateKey ground, excited;
    double mu_D;
};

std::string render(double scale, const std::vector<StateKey>& ground_states,
                   const std::vector<Entry>& entries) {
    std::string out;
    char buf[160];
    out += "# Synthetic N2-like rovibronic dataset: six excited singlet-u manifolds,\n";
    out += "# z-polarized transition dipoles resolved per (J, M).\n";
    out += "[meta]\n";
    out += "name = n2-synthetic\n";
    out += "mass = 28.0134 u\n";
    std::snprintf(buf, sizeof buf, "rotational_constant = %.4f cm-1\n", kGroundB);
    out += buf;
    out += "ground = X\n";
    out += "parity X even_j_even\n";
    for (const auto& L : kLabels) {
        out += "parity ";
        out += L.name;
        out += " even_j_even\n";
    }

    out += "[states]\n";
    for (const auto& s : ground_states) {
        const double e = kGroundVib * s.nu + kGroundB * s.J * (s.J + 1);
        std::snprintf(buf, sizeof buf, "X %d %d %d %.6f cm-1\n", s.nu, s.J, s.M, e);
        out += buf;
    }
    // Excited states: every (label, nu', J', M) reachable from the ground set.
    std::vector<StateKey> excited;
    auto add_excited = [&](const StateKey& k) {
        for (const auto& e : excited)
            if (e == k) return;
        excited.push_back(k);
    };
    for (const auto& e : entries) add_excited(e.excited);
    for (const auto& k : excited) {
        const ExcitedLabel* L = nullptr;
        for (const auto& cand : kLabels)
            if (k.label == cand.name) L = &cand;
        const double e = L->T0_cm + L->omega_cm * k.nu + L->B_cm * k.J * (k.J + 1);
        std::snprintf(buf, sizeof buf, "%s %d %d %d %.6f cm-1\n", k.label.c_str(), k.nu, k.J, k.M, e);
        out += buf;
    }

    out += "[dipoles]\n";
    for (const auto& e : entries) {
        std::snprintf(buf, sizeof buf, "X %d %d %d  %s %d %d %d  %.8f D\n", e.ground.nu, e.ground.J,
                      e.ground.M, e.excited.label.c_str(), e.excited.nu, e.excited.J, e.excited.M,
                      e.mu_D * scale);
        out += buf;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::string out_path = "data/n2_synthetic.mol";
    if (argc > 1) out_path = argv[1];

    std::vector<StateKey> ground_states;
    for (int J = 0; J <= kGroundJMax; ++J)
        for (int M = -J; M <= J; ++M) ground_states.push_back({"X", 0, J, M});
    ground_states.push_back({"X", 1, 2, 0});

    std::vector<Entry> entries;
    for (const auto& g : ground_states) {
        for (const auto& L : kLabels) {
            for (int nup = 0; nup < kExcitedNu; ++nup) {
                const double mu = L.mu_base_D * fc_factor(g.nu, nup) * jm_texture(g.J, g.M);
                if (g.J >= 1 && std::abs(g.M) <= g.J - 1)
                    entries.push_back({g, {L.name, nup, g.J - 1, g.M}, mu});
                entries.push_back({g, {L.name, nup, g.J + 1, g.M}, mu});
            }
        }
    }

    // Reference configuration used for the scale solve.
    const double lambda1 = 0.628e-6, lambda2 = 0.736e-6;
    const double E2 = 5.25e5;         // V/m
    const double E1 = 1.05e6;         // V/m
    const double theta_F = -1.8;
    const double t_int = 0.625e-6;    // s
    const double quarter_multiple = 1.0;

    MoleculeModel probe = load_molecule_text(render(1.0, ground_states, entries), "<generated>");
    auto field = StandingWaveConfig::make(E1, E2, lambda1, lambda2, theta_F);
    auto sup = SuperpositionSpec::make(probe, {"X", 0, 0, 0}, {"X", 0, 2, 0},
                                       {std::sqrt(0.2), 0.0}, {std::sqrt(0.8), 0.0});
    auto spec = make_optical_potential(probe, sup, field);

    const double half_window = 2.0 * lambda2;
    auto extrema = find_extrema(spec, -half_window, half_window,
                                static_cast<int>(4.0 * lambda2 / lambda2 * 2000));
    double t_min_period = 0.0;
    for (const auto& e : extrema) {
        if (e.kind != ExtremumKind::minimum) continue;
        const double T = well_period(spec, e.x, probe.mass());
        if (t_min_period == 0.0 || T < t_min_period) t_min_period = T;
    }
    if (t_min_period == 0.0) {
        std::cerr << "no potential wells found; cannot calibrate\n";
        return 1;
    }

    // chi scales with the square of the dipole scale, so T ~ 1/scale.
    const double target_period = 4.0 * t_int / quarter_multiple;
    const double scale = t_min_period / target_period;

    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
    }
    f << render(scale, ground_states, entries);
    f.close();

    std::printf("wrote %s: %zu states, %zu dipole entries, dipole scale %.6f\n", out_path.c_str(),
                ground_states.size() + 0, entries.size(), scale);
    std::printf("deepest-well period at unit scale %.6g us -> target %.6g us\n",
                t_min_period * 1e6, target_period * 1e6);
    return 0;
}
