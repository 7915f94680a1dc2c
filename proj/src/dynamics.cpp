#include "codep/dynamics.hpp"

#include "codep/error.hpp"
#include "codep/rng.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace codep {

void BeamConfig::validate() const {
    if (vz <= 0.0) throw ValidationError("beam: vz must be > 0");
    if (nozzle_width <= 0.0) throw ValidationError("beam: nozzle_width must be > 0");
    if (t_int <= 0.0) throw ValidationError("beam: t_int must be > 0");
    if (sigma_v < 0.0) throw ValidationError("beam: sigma_v must be >= 0");
    if (t_free < 0.0) throw ValidationError("beam: t_free must be >= 0");
    if (mass <= 0.0) throw ValidationError("beam: mass must be > 0");
}

std::vector<TransverseState> sample_ensemble(const BeamConfig& beam, std::int64_t n,
                                             std::uint64_t seed) {
    if (n <= 0) throw ValidationError("sample_ensemble: n must be > 0");
    std::vector<TransverseState> out(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        RandomStream rng(seed, static_cast<std::uint64_t>(i));
        TransverseState s;
        s.x = (rng.uniform01() - 0.5) * beam.nozzle_width;
        s.vx = beam.sigma_v > 0.0 ? beam.sigma_v * rng.gaussian() : 0.0;
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

namespace {

struct StepPlan {
    double dt = 0.0;
    long long n_steps = 0;
};

StepPlan plan_steps(double t_int, double dt) {
    if (dt <= 0.0) throw ValidationError("integrate_trajectory: dt must be > 0");
    StepPlan p;
    p.n_steps = std::max<long long>(1, std::llround(t_int / dt));
    p.dt = t_int / static_cast<double>(p.n_steps);
    return p;
}

} // namespace

TransverseState integrate_trajectory(const TransverseState& s0, const OpticalPotentialSpec& spec,
                                     const BeamConfig& beam, double dt) {
    const StepPlan plan = plan_steps(beam.t_int, dt);
    const double inv_m = 1.0 / beam.mass;
    double x = s0.x;
    double v = s0.vx;
    double a = force_at(x, spec) * inv_m;
    for (long long i = 0; i < plan.n_steps; ++i) {
        v += 0.5 * plan.dt * a;
        x += plan.dt * v;
        a = force_at(x, spec) * inv_m;
        v += 0.5 * plan.dt * a;
        if (!std::isfinite(x) || !std::isfinite(v))
            throw NumericsError("trajectory diverged at step " + std::to_string(i));
    }
    x += v * beam.t_free;
    return {x, v};
}

TrajectoryDiagnostics integrate_trajectory_monitored(const TransverseState& s0,
                                                     const OpticalPotentialSpec& spec,
                                                     const BeamConfig& beam, double dt) {
    const StepPlan plan = plan_steps(beam.t_int, dt);
    const double inv_m = 1.0 / beam.mass;
    TrajectoryDiagnostics diag;
    double x = s0.x;
    double v = s0.vx;
    double a = force_at(x, spec) * inv_m;
    diag.initial_energy = 0.5 * beam.mass * v * v + potential_energy(x, spec);
    for (long long i = 0; i < plan.n_steps; ++i) {
        v += 0.5 * plan.dt * a;
        x += plan.dt * v;
        a = force_at(x, spec) * inv_m;
        v += 0.5 * plan.dt * a;
        if (!std::isfinite(x) || !std::isfinite(v))
            throw NumericsError("trajectory diverged at step " + std::to_string(i));
        const double e = 0.5 * beam.mass * v * v + potential_energy(x, spec);
        diag.max_energy_drift = std::max(diag.max_energy_drift, std::abs(e - diag.initial_energy));
    }
    x += v * beam.t_free;
    diag.final_state = {x, v};
    diag.steps = plan.n_steps;
    return diag;
}

std::vector<double> propagate_ensemble_serial(std::span<const TransverseState> initial,
                                              const OpticalPotentialSpec& spec,
                                              const BeamConfig& beam, double dt) {
    std::vector<double> finals(initial.size());
    for (std::size_t i = 0; i < initial.size(); ++i)
        finals[i] = integrate_trajectory(initial[i], spec, beam, dt).x;
    return finals;
}

std::vector<double> propagate_ensemble_parallel(std::span<const TransverseState> initial,
                                                const OpticalPotentialSpec& spec,
                                                const BeamConfig& beam, double dt, int workers) {
    std::vector<double> finals(initial.size());
    const std::int64_t n = static_cast<std::int64_t>(initial.size());
#ifdef _OPENMP
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i)
        finals[static_cast<std::size_t>(i)] =
            integrate_trajectory(initial[static_cast<std::size_t>(i)], spec, beam, dt).x;
#else
    (void)workers;
    for (std::int64_t i = 0; i < n; ++i)
        finals[static_cast<std::size_t>(i)] =
            integrate_trajectory(initial[static_cast<std::size_t>(i)], spec, beam, dt).x;
#endif
    return finals;
}

DepositionHistogram bin_positions(std::span<const double> xs, double bin_width) {
    if (bin_width <= 0.0) throw ValidationError("bin_positions: bin_width must be > 0");
    DepositionHistogram h;
    h.bin_width = bin_width;
    if (xs.empty()) return h;
    double lo = xs[0], hi = xs[0];
    for (double x : xs) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const double k_lo = std::floor(lo / bin_width);
    const double k_hi = std::floor(hi / bin_width);
    h.origin = k_lo * bin_width;
    const std::size_t n_bins = static_cast<std::size_t>(k_hi - k_lo) + 1;
    h.counts.assign(n_bins, 0);
    for (double x : xs) {
        auto k = static_cast<std::int64_t>(std::floor(x / bin_width) - k_lo);
        k = std::clamp<std::int64_t>(k, 0, static_cast<std::int64_t>(n_bins) - 1);
        ++h.counts[static_cast<std::size_t>(k)];
    }
    h.n_total = static_cast<std::int64_t>(xs.size());
    return h;
}

void merge_histogram(DepositionHistogram& a, const DepositionHistogram& b) {
    if (b.counts.empty()) return;
    if (a.counts.empty()) {
        a = b;
        return;
    }
    if (std::abs(a.bin_width - b.bin_width) > 1e-15 * a.bin_width)
        throw ValidationError("merge_histogram: bin widths differ");
    const double offset = (b.origin - a.origin) / a.bin_width;
    const auto shift = static_cast<std::int64_t>(std::llround(offset));
    if (std::abs(offset - static_cast<double>(shift)) > 1e-6)
        throw ValidationError("merge_histogram: grids not aligned");
    std::int64_t new_lo = std::min<std::int64_t>(0, shift);
    std::int64_t new_hi = std::max<std::int64_t>(static_cast<std::int64_t>(a.counts.size()),
                                                 shift + static_cast<std::int64_t>(b.counts.size()));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(new_hi - new_lo), 0);
    for (std::size_t i = 0; i < a.counts.size(); ++i)
        counts[static_cast<std::size_t>(static_cast<std::int64_t>(i) - new_lo)] += a.counts[i];
    for (std::size_t i = 0; i < b.counts.size(); ++i)
        counts[static_cast<std::size_t>(shift + static_cast<std::int64_t>(i) - new_lo)] += b.counts[i];
    a.origin += static_cast<double>(new_lo) * a.bin_width;
    a.counts = std::move(counts);
    a.n_total += b.n_total;
}

DepositionHistogram simulate_deposition(const MoleculeModel& model, const SuperpositionSpec& sup,
                                        const StandingWaveConfig& field, const BeamConfig& beam,
                                        std::int64_t n, std::uint64_t seed,
                                        const DepositionOptions& options, RunStats* stats) {
    beam.validate();
    OpticalPotentialSpec spec =
        make_optical_potential(model, sup, field, PotentialMode::averaged, options.terms);

    const double margin = std::max(field.lambda1, field.lambda2);
    const double half = 0.5 * beam.nozzle_width + margin;
    double dt = options.dt_override;
    if (dt <= 0.0) {
        const double fallback = beam.t_int / 1000.0;
        dt = suggest_time_step(spec, -half, half, beam.mass, options.steps_per_period, fallback);
    }

    auto initial = sample_ensemble(beam, n, seed);
    std::vector<double> finals = options.workers == 1
                                     ? propagate_ensemble_serial(initial, spec, beam, dt)
                                     : propagate_ensemble_parallel(initial, spec, beam, dt,
                                                                   options.workers);
    if (stats) {
        stats->dt = dt;
        stats->total_steps = static_cast<long long>(std::max<long long>(1, std::llround(beam.t_int / dt))) * n;
    }
    return bin_positions(finals, options.bin_width);
}

} // namespace codep
