#include "codep/potential.hpp"

#include "codep/error.hpp"

#include <algorithm>
#include <cmath>

namespace codep {

OpticalPotentialSpec make_optical_potential(const MoleculeModel& model, const SuperpositionSpec& sup,
                                            const StandingWaveConfig& field, PotentialMode mode,
                                            PotentialTerms terms, const ChiOptions& opts) {
    OpticalPotentialSpec spec;
    spec.chi = susceptibility_set(model, sup, field, opts);
    spec.field = field;
    spec.mode = mode;
    spec.terms = terms;
    return spec;
}

namespace {

struct FieldGeom {
    double E1, E2, k1, k2, th;
};

FieldGeom geom(const OpticalPotentialSpec& spec) {
    return {spec.field.E1_0, spec.field.E2_0, spec.field.k1(), spec.field.k2(), spec.field.theta_F};
}

// Static interference coefficient: 4 E1^2 chi_in_r(w1) + 4 E2^2 chi_in_r(w2)
// expressed through the ratio-free kernels, 4 E1 E2 Re(K1 + K2), which stays
// finite when one amplitude vanishes.
double interference_coeff(const OpticalPotentialSpec& spec) {
    const auto g = geom(spec);
    return 4.0 * g.E1 * g.E2 * (spec.chi.kernel_w1.real() + spec.chi.kernel_w2.real());
}

} // namespace

PotentialSample potential_averaged(double x, const OpticalPotentialSpec& spec) {
    const auto g = geom(spec);
    const double c1 = std::cos(g.k1 * x);
    const double c2 = std::cos(g.k2 * x + g.th);
    PotentialSample s;
    s.V_ni = -2.0 * (4.0 * g.E1 * g.E1 * c1 * c1 * spec.chi.chi_ni_w1 +
                     4.0 * g.E2 * g.E2 * c2 * c2 * spec.chi.chi_ni_w2);
    s.V_in = -2.0 * interference_coeff(spec) * c1 * c2;
    return s;
}

PotentialSample potential_time_dependent(double x, double t, const OpticalPotentialSpec& spec) {
    const auto g = geom(spec);
    const double c1 = std::cos(g.k1 * x);
    const double c2 = std::cos(g.k2 * x + g.th);
    const double dw = spec.field.omega1() - spec.field.omega2();
    const double cos_dw = std::cos(dw * t);
    const double sin_dw = std::sin(dw * t);

    PotentialSample s;
    s.V_ni = -2.0 * (4.0 * g.E1 * g.E1 * c1 * c1 * spec.chi.chi_ni_w1 +
                     4.0 * g.E2 * g.E2 * c2 * c2 * spec.chi.chi_ni_w2 +
                     4.0 * g.E1 * g.E2 * c1 * c2 * (spec.chi.chi_ni_w1 + spec.chi.chi_ni_w2) * cos_dw);

    // 4 E1 E2 chi_in(w1) = 4 E2^2 K1 and 4 E1 E2 chi_in(w2) = 4 E1^2 K2:
    // the ratio-containing beat terms rewritten through the kernels.
    const double beat_w1_r = 4.0 * g.E2 * g.E2 * spec.chi.kernel_w1.real();
    const double beat_w1_i = 4.0 * g.E2 * g.E2 * spec.chi.kernel_w1.imag();
    const double beat_w2_r = 4.0 * g.E1 * g.E1 * spec.chi.kernel_w2.real();
    const double beat_w2_i = 4.0 * g.E1 * g.E1 * spec.chi.kernel_w2.imag();
    s.V_in = -2.0 * (interference_coeff(spec) * c1 * c2 +
                     c2 * c2 * (beat_w1_r * cos_dw - beat_w1_i * sin_dw) +
                     c1 * c1 * (beat_w2_r * cos_dw + beat_w2_i * sin_dw));
    return s;
}

double potential_energy(double x, const OpticalPotentialSpec& spec) {
    const PotentialSample s = potential_averaged(x, spec);
    switch (spec.terms) {
    case PotentialTerms::total: return s.total();
    case PotentialTerms::non_interference_only: return s.V_ni;
    case PotentialTerms::interference_only: return s.V_in;
    }
    throw Error("unreachable potential terms");
}

double force_at(double x, const OpticalPotentialSpec& spec) {
    const auto g = geom(spec);
    double dV = 0.0;
    if (spec.terms != PotentialTerms::interference_only) {
        dV += 8.0 * (g.E1 * g.E1 * spec.chi.chi_ni_w1 * g.k1 * std::sin(2.0 * g.k1 * x) +
                     g.E2 * g.E2 * spec.chi.chi_ni_w2 * g.k2 * std::sin(2.0 * (g.k2 * x + g.th)));
    }
    if (spec.terms != PotentialTerms::non_interference_only) {
        const double coeff = 2.0 * interference_coeff(spec);
        dV += coeff * (g.k1 * std::sin(g.k1 * x) * std::cos(g.k2 * x + g.th) +
                       g.k2 * std::cos(g.k1 * x) * std::sin(g.k2 * x + g.th));
    }
    return -dV;
}

double curvature_at(double x, const OpticalPotentialSpec& spec) {
    const auto g = geom(spec);
    double d2V = 0.0;
    if (spec.terms != PotentialTerms::interference_only) {
        d2V += 16.0 * (g.E1 * g.E1 * spec.chi.chi_ni_w1 * g.k1 * g.k1 * std::cos(2.0 * g.k1 * x) +
                       g.E2 * g.E2 * spec.chi.chi_ni_w2 * g.k2 * g.k2 *
                           std::cos(2.0 * (g.k2 * x + g.th)));
    }
    if (spec.terms != PotentialTerms::non_interference_only) {
        const double coeff = 2.0 * interference_coeff(spec);
        d2V += coeff * (g.k1 * g.k1 + g.k2 * g.k2) * std::cos(g.k1 * x) * std::cos(g.k2 * x + g.th) -
               coeff * 2.0 * g.k1 * g.k2 * std::sin(g.k1 * x) * std::sin(g.k2 * x + g.th);
    }
    return d2V;
}

std::vector<ExtremumRecord> find_extrema(const OpticalPotentialSpec& spec, double x_lo, double x_hi,
                                         int grid_points) {
    if (x_hi <= x_lo) throw ValidationError("find_extrema: empty interval");
    const double lam_min = std::min(spec.field.lambda1, spec.field.lambda2);
    const double span = x_hi - x_lo;
    if (grid_points < 2 || span / grid_points > lam_min / 10.0)
        throw ValidationError("find_extrema: grid must resolve min(lambda1, lambda2) with >= 10 points");

    // Force scale for the flat-potential cutoff.
    double f_scale = 0.0;
    std::vector<double> fs(static_cast<std::size_t>(grid_points) + 1);
    for (int i = 0; i <= grid_points; ++i) {
        const double x = x_lo + span * i / grid_points;
        fs[static_cast<std::size_t>(i)] = force_at(x, spec);
        f_scale = std::max(f_scale, std::abs(fs[static_cast<std::size_t>(i)]));
    }
    std::vector<ExtremumRecord> out;
    if (f_scale == 0.0) return out;

    const double x_tol = span * 1e-9;
    for (int i = 0; i < grid_points; ++i) {
        double a = x_lo + span * i / grid_points;
        double b = x_lo + span * (i + 1) / grid_points;
        double fa = fs[static_cast<std::size_t>(i)];
        double fb = fs[static_cast<std::size_t>(i) + 1];
        if (fa == 0.0 && fb == 0.0) continue;
        if (fa * fb > 0.0) continue;
        // Bisection on the force.
        while (b - a > x_tol) {
            const double m = 0.5 * (a + b);
            const double fm = force_at(m, spec);
            if (fa * fm <= 0.0) {
                b = m;
                fb = fm;
            } else {
                a = m;
                fa = fm;
            }
        }
        ExtremumRecord rec;
        rec.x = 0.5 * (a + b);
        rec.value = potential_energy(rec.x, spec);
        rec.curvature = curvature_at(rec.x, spec);
        rec.kind = rec.curvature > 0.0 ? ExtremumKind::minimum : ExtremumKind::maximum;
        out.push_back(rec);
    }
    std::sort(out.begin(), out.end(),
              [](const ExtremumRecord& a, const ExtremumRecord& b) { return a.x < b.x; });
    // Bracketing at shared grid nodes can report the same root twice.
    std::vector<ExtremumRecord> dedup;
    for (const auto& r : out) {
        if (!dedup.empty() && std::abs(r.x - dedup.back().x) < 2.0 * x_tol) continue;
        dedup.push_back(r);
    }
    return dedup;
}

double well_period(const OpticalPotentialSpec& spec, double x_min, double mass) {
    const double c = curvature_at(x_min, spec);
    if (c <= 0.0)
        throw ValidationError("well_period: x is not a potential minimum (curvature <= 0)");
    return 2.0 * kPi * std::sqrt(mass / c);
}

double suggest_time_step(const OpticalPotentialSpec& spec, double x_lo, double x_hi, double mass,
                         int steps_per_period, double fallback_dt) {
    const double lam_min = std::min(spec.field.lambda1, spec.field.lambda2);
    const int grid = std::max(64, static_cast<int>((x_hi - x_lo) / lam_min * 1000.0));
    auto extrema = find_extrema(spec, x_lo, x_hi, grid);
    double t_min = 0.0;
    for (const auto& e : extrema) {
        if (e.kind != ExtremumKind::minimum) continue;
        const double T = well_period(spec, e.x, mass);
        if (t_min == 0.0 || T < t_min) t_min = T;
    }
    if (t_min == 0.0) return fallback_dt;
    return t_min / steps_per_period;
}

} // namespace codep
