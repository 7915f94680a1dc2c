#include "codep/analysis.hpp"
#include "codep/constants.hpp"
#include "codep/error.hpp"
#include "codep/potential.hpp"
#include "codep/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

using namespace codep;
using cplx = std::complex<double>;

namespace {

const std::string kDataDir = CODEP_DATA_DIR;

MoleculeModel& four_level() {
    static MoleculeModel m = load_molecule(kDataDir + "/fourlevel.mol");
    return m;
}

SuperpositionSpec pair_sup(double c1_sq = 0.3, cplx phase = {1.0, 0.0}) {
    auto& m = four_level();
    return SuperpositionSpec::make(m, {"X", 0, 0, 0}, {"X", 0, 2, 0},
                                   {std::sqrt(c1_sq), 0.0}, std::sqrt(1.0 - c1_sq) * phase);
}

OpticalPotentialSpec make_spec(double E1, double E2, double theta_F,
                               PotentialMode mode = PotentialMode::averaged,
                               double c1_sq = 0.3, cplx phase = {1.0, 0.0}) {
    auto field = StandingWaveConfig::make(E1, E2, 0.628e-6, 0.736e-6, theta_F);
    return make_optical_potential(four_level(), pair_sup(c1_sq, phase), field, mode);
}

} // namespace

TEST_CASE("zero field gives zero potential everywhere") {
    auto spec = make_spec(0.0, 0.0, 0.3);
    for (double x : {-1.0e-6, 0.0, 0.3e-6, 2.0e-6}) {
        auto s = potential_averaged(x, spec);
        CHECK(s.V_ni == 0.0);
        CHECK(s.V_in == 0.0);
    }
}

TEST_CASE("interference term vanishes at nodes of the first wave") {
    auto spec = make_spec(2.0e6, 1.0e6, -0.4);
    const double x_node = 0.25 * spec.field.lambda1; // cos(k1 x) = 0
    CHECK(potential_averaged(x_node, spec).V_in ==
          doctest::Approx(0.0).scale(std::abs(potential_averaged(0.0, spec).V_in)));
}

TEST_CASE("averaged interference envelope beats at 2 pi / (k1 - k2)") {
    auto spec = make_spec(2.0e6, 1.0e6, 0.0);
    const int n = 4000;
    const double span = 10.0e-6;
    std::vector<double> v_in(n);
    for (int i = 0; i < n; ++i)
        v_in[static_cast<std::size_t>(i)] =
            potential_averaged(span * i / (n - 1), spec).V_in;
    auto rep = periodicity_report(v_in, span / (n - 1));
    REQUIRE(rep.beat_length.has_value());
    const double expected = spec.field.lambda1 * spec.field.lambda2 /
                            (spec.field.lambda2 - spec.field.lambda1);
    CHECK(*rep.beat_length == doctest::Approx(expected).epsilon(0.02));
    CHECK(expected == doctest::Approx(4.28e-6).epsilon(0.01));
}

TEST_CASE("time average of the full potential reproduces the averaged form") {
    // complex coefficients so the imaginary interference parts enter the
    // oscillatory terms
    auto spec = make_spec(2.0e6, 1.0e6, -0.7, PotentialMode::time_dependent, 0.3,
                          std::exp(cplx(0.0, -0.6)));
    auto avg_spec = spec;
    avg_spec.mode = PotentialMode::averaged;
    const double beat_T = 2.0 * kPi / (spec.field.omega1() - spec.field.omega2());
    const int nt = 64;
    double v_scale = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = -1.5e-6 + 3.0e-6 * i / 999.0;
        double ni = 0.0, in = 0.0;
        for (int k = 0; k < nt; ++k) {
            auto s = potential_time_dependent(x, beat_T * k / nt, spec);
            ni += s.V_ni;
            in += s.V_in;
        }
        auto avg = potential_averaged(x, avg_spec);
        v_scale = std::max(v_scale, std::abs(avg.total()));
        CHECK(std::abs(ni / nt - avg.V_ni) <= 1e-6 * std::max(std::abs(avg.V_ni), v_scale));
        CHECK(std::abs(in / nt - avg.V_in) <= 1e-6 * std::max(std::abs(avg.V_in), v_scale));
    }
}

TEST_CASE("t = 0 carries the non-interference cross term at full strength") {
    auto spec = make_spec(2.0e6, 1.0e6, 0.9, PotentialMode::time_dependent);
    const double x = 0.13e-6;
    const double c1 = std::cos(spec.field.k1() * x);
    const double c2 = std::cos(spec.field.k2() * x + spec.field.theta_F);
    auto td = potential_time_dependent(x, 0.0, spec);
    auto avg = potential_averaged(x, spec);
    const double cross = -2.0 * 4.0 * spec.field.E1_0 * spec.field.E2_0 * c1 * c2 *
                         (spec.chi.chi_ni_w1 + spec.chi.chi_ni_w2);
    CHECK(td.V_ni - avg.V_ni == doctest::Approx(cross).epsilon(1e-12));
}

TEST_CASE("equal frequencies freeze the cross terms") {
    auto& m = four_level();
    auto field = StandingWaveConfig::make(2.0e6, 1.0e6, 0.7e-6, 0.7e-6, 0.4);
    auto spec = make_optical_potential(m, pair_sup(), field, PotentialMode::time_dependent);
    const double x = 0.21e-6;
    auto a = potential_time_dependent(x, 0.0, spec);
    auto b = potential_time_dependent(x, 3.7e-9, spec);
    CHECK(a.V_ni == doctest::Approx(b.V_ni).epsilon(1e-14));
    CHECK(a.V_in == doctest::Approx(b.V_in).epsilon(1e-14));
    auto avg = potential_averaged(x, spec);
    CHECK(std::abs(a.V_ni - avg.V_ni) > 0.0); // frozen cross term persists
}

TEST_CASE("force is the closed-form derivative") {
    auto spec = make_spec(2.0e6, 1.0e6, -1.1);

    SUBCASE("single wave matches the analytic sine form") {
        auto single = make_spec(2.0e6, 0.0, 0.0);
        const double k1 = single.field.k1();
        for (double x : {0.05e-6, 0.11e-6, 0.29e-6}) {
            const double expected = -8.0 * single.field.E1_0 * single.field.E1_0 *
                                    single.chi.chi_ni_w1 * k1 * std::sin(2.0 * k1 * x);
            CHECK(force_at(x, single) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("zero at a refined minimum") {
        auto extrema = find_extrema(spec, -1.0e-6, 1.0e-6, 4000);
        REQUIRE(!extrema.empty());
        double f_scale = 0.0;
        for (int i = 0; i <= 100; ++i)
            f_scale = std::max(f_scale, std::abs(force_at(-1e-6 + 2e-6 * i / 100.0, spec)));
        for (const auto& e : extrema) CHECK(std::abs(force_at(e.x, spec)) < 1e-6 * f_scale);
    }
    SUBCASE("finite differences agree to 1e-8 at 1000 non-stationary points") {
        double f_scale = 0.0;
        for (int i = 0; i <= 400; ++i)
            f_scale = std::max(f_scale, std::abs(force_at(-1.5e-6 + 3e-6 * i / 400.0, spec)));
        RandomStream rng(99, 0);
        const double h = 1e-12;
        int checked = 0;
        for (int i = 0; i < 1000; ++i) {
            const double x = (rng.uniform01() - 0.5) * 3.0e-6;
            const double f = force_at(x, spec);
            if (std::abs(f) < 1e-2 * f_scale) continue; // near-stationary
            const double fd = -(potential_energy(x + h, spec) - potential_energy(x - h, spec)) /
                              (2.0 * h);
            CHECK(std::abs(fd - f) <= 1e-8 * std::abs(f));
            ++checked;
        }
        CHECK(checked > 900);
    }
}

TEST_CASE("extrema of a single standing wave sit on the lattice") {
    auto spec = make_spec(2.0e6, 0.0, 0.0);
    const double k1 = spec.field.k1();
    auto extrema = find_extrema(spec, -0.9e-6, 0.9e-6, 4000);
    REQUIRE(extrema.size() >= 5);
    std::vector<double> minima;
    for (const auto& e : extrema)
        if (e.kind == ExtremumKind::minimum) minima.push_back(e.x);
    for (double x : minima) {
        const double n = x * k1 / kPi;
        CHECK(std::abs(n - std::round(n)) < 1e-6);
    }
    for (std::size_t i = 1; i < minima.size(); ++i)
        CHECK(minima[i] - minima[i - 1] ==
              doctest::Approx(0.5 * spec.field.lambda1).epsilon(1e-9));
    CHECK(0.5 * spec.field.lambda1 == doctest::Approx(0.314e-6).epsilon(1e-3));
}

TEST_CASE("with E1 = 0 a phase shift translates every extremum by -d/k2") {
    auto a = make_spec(0.0, 1.0e6, 0.2);
    auto b = make_spec(0.0, 1.0e6, 0.2 + 0.77);
    auto ea = find_extrema(a, -1.0e-6, 1.0e-6, 4000);
    auto eb = find_extrema(b, -1.0e-6, 1.0e-6, 4000);
    const double shift = -0.77 / a.field.k2();
    int matched = 0;
    for (const auto& r : ea) {
        const double target = r.x + shift;
        if (target < -1.0e-6 || target > 1.0e-6) continue;
        for (const auto& s : eb) {
            if (std::abs(s.x - target) < 1e-12) {
                ++matched;
                break;
            }
        }
    }
    CHECK(matched >= 8);
}

TEST_CASE("flat potential yields no extrema") {
    auto spec = make_spec(0.0, 0.0, 0.0);
    CHECK(find_extrema(spec, -1.0e-6, 1.0e-6, 2000).empty());
}

TEST_CASE("two-color extrema are aperiodic with unequal depths") {
    auto spec = make_spec(2.0e6, 1.0e6, -1.8);
    auto extrema = find_extrema(spec, 0.0, 3.0e-6, 6000);
    std::vector<ExtremumRecord> minima;
    for (const auto& e : extrema)
        if (e.kind == ExtremumKind::minimum) minima.push_back(e);
    REQUIRE(minima.size() >= 6);

    // dense-grid scan oracle at 10x resolution: every refined minimum must
    // fall inside a dense-scan bracket, one bracket per minimum
    const int dense = 60000;
    std::vector<std::pair<double, double>> brackets;
    double prev = potential_energy(0.0, spec);
    double here = potential_energy(3.0e-6 / dense, spec);
    for (int i = 2; i <= dense; ++i) {
        const double next = potential_energy(3.0e-6 * i / dense, spec);
        if (here < prev && here <= next)
            brackets.emplace_back(3.0e-6 * (i - 2) / dense, 3.0e-6 * i / dense);
        prev = here;
        here = next;
    }
    CHECK(brackets.size() == minima.size());
    for (std::size_t i = 0; i < minima.size() && i < brackets.size(); ++i) {
        CHECK(minima[i].x >= brackets[i].first);
        CHECK(minima[i].x <= brackets[i].second);
    }

    double depth_lo = 0.0, depth_hi = -1e30;
    for (const auto& e : minima) {
        depth_lo = std::min(depth_lo, e.value);
        depth_hi = std::max(depth_hi, e.value);
    }
    CHECK((depth_hi - depth_lo) > 0.05 * std::abs(depth_lo)); // unequal depths

    std::vector<double> gaps;
    for (std::size_t i = 1; i < minima.size(); ++i) gaps.push_back(minima[i].x - minima[i - 1].x);
    double gap_lo = gaps[0], gap_hi = gaps[0];
    for (double g : gaps) {
        gap_lo = std::min(gap_lo, g);
        gap_hi = std::max(gap_hi, g);
    }
    CHECK(gap_hi - gap_lo > 1e-9); // spacing itself is irregular
}

TEST_CASE("well_period") {
    SUBCASE("single wave closed form") {
        auto spec = make_spec(2.0e6, 0.0, 0.0);
        const double V0 = 8.0 * spec.field.E1_0 * spec.field.E1_0 * spec.chi.chi_ni_w1;
        const double k1 = spec.field.k1();
        const double mass = four_level().mass();
        const double expected = 2.0 * kPi * std::sqrt(mass / (2.0 * V0 * k1 * k1));
        CHECK(well_period(spec, 0.0, mass) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("non-minimum input rejected") {
        auto spec = make_spec(2.0e6, 0.0, 0.0);
        CHECK_THROWS_AS(well_period(spec, 0.25 * spec.field.lambda1, four_level().mass()),
                        ValidationError);
    }
    SUBCASE("small-amplitude oscillation matches the harmonic estimate within 1%") {
        auto spec = make_spec(2.0e6, 0.0, 0.0);
        const double mass = four_level().mass();
        const double T = well_period(spec, 0.0, mass);
        const double d = 0.01 * spec.field.lambda1;
        // test-side leapfrog, timing successive downward zero crossings
        const double dt = T / 4000.0;
        double x = d, v = 0.0;
        double a = force_at(x, spec) / mass;
        double t = 0.0, first_cross = 0.0, period = 0.0;
        for (int i = 0; i < 50000; ++i) {
            const double x_prev = x;
            v += 0.5 * dt * a;
            x += dt * v;
            a = force_at(x, spec) / mass;
            v += 0.5 * dt * a;
            t += dt;
            if (x_prev > 0.0 && x <= 0.0) {
                const double t_cross = (t - dt) + dt * x_prev / (x_prev - x);
                if (first_cross == 0.0) {
                    first_cross = t_cross;
                } else {
                    period = t_cross - first_cross;
                    break;
                }
            }
        }
        REQUIRE(period > 0.0);
        CHECK(period == doctest::Approx(T).epsilon(0.01));
    }
}

TEST_CASE("interference term scales exactly as cos(theta)") {
    auto base = make_spec(2.0e6, 1.0e6, -0.9, PotentialMode::averaged, 0.3, {1.0, 0.0});
    double v_scale = 0.0;
    for (int i = 0; i < 200; ++i)
        v_scale = std::max(v_scale,
                           std::abs(potential_averaged(-1e-6 + 2e-6 * i / 199.0, base).V_in));
    for (double theta : {0.0, 0.7, 2.4}) {
        auto rotated = make_spec(2.0e6, 1.0e6, -0.9, PotentialMode::averaged, 0.3,
                                 std::exp(cplx(0.0, -theta)));
        for (int i = 0; i < 200; ++i) {
            const double x = -1e-6 + 2e-6 * i / 199.0;
            const double expected = std::cos(theta) * potential_averaged(x, base).V_in;
            CHECK(std::abs(potential_averaged(x, rotated).V_in - expected) <= 1e-12 * v_scale);
        }
    }
    // exactly imaginary coherence: identically zero interference term
    auto quarter = make_spec(2.0e6, 1.0e6, -0.9, PotentialMode::averaged, 0.3, cplx(0.0, 1.0));
    for (int i = 0; i < 200; ++i)
        CHECK(potential_averaged(-1e-6 + 2e-6 * i / 199.0, quarter).V_in == 0.0);
}

TEST_CASE("non-interference term is periodic for rational wave-vector ratios") {
    auto& m = four_level();
    // k1/k2 = lambda2/lambda1 = 5/4
    auto field = StandingWaveConfig::make(2.0e6, 1.0e6, 0.6e-6, 0.75e-6, 0.33);
    auto spec = make_optical_potential(m, pair_sup(), field, PotentialMode::averaged);
    const double shift = 5.0 * kPi / field.k1(); // k1 shift = 5 pi, k2 shift = 4 pi
    for (int i = 0; i < 200; ++i) {
        const double x = -1e-6 + 2e-6 * i / 199.0;
        const auto a = potential_averaged(x, spec);
        const auto b = potential_averaged(x + shift, spec);
        CHECK(b.V_ni == doctest::Approx(a.V_ni).epsilon(1e-9));
    }
}

TEST_CASE("grid resolution precondition enforced") {
    auto spec = make_spec(2.0e6, 1.0e6, 0.0);
    CHECK_THROWS_AS(find_extrema(spec, -1.0e-6, 1.0e-6, 12), ValidationError);
}
