#pragma once

#include "codep/potential.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace codep {

struct BeamConfig {
    double vz = 600.0;          // longitudinal speed, m/s
    double nozzle_width = 0.0;  // transverse extent, m
    double sigma_v = 0.0;       // transverse velocity spread (Gaussian sd), m/s
    double t_int = 0.0;         // field interaction time, s
    double t_free = 0.0;        // post-field free flight, s
    double mass = 0.0;          // kg

    void validate() const;
};

struct TransverseState {
    double x = 0.0;  // m
    double vx = 0.0; // m/s
};

// x uniform over [-nozzle_width/2, +nozzle_width/2]; vx Gaussian(0, sigma_v),
// exactly zero when sigma_v is zero. Trajectory i draws from stream
// (seed, i), so any subset is reproducible independent of evaluation order.
std::vector<TransverseState> sample_ensemble(const BeamConfig& beam, std::int64_t n,
                                             std::uint64_t seed);

// Second-order position-velocity leapfrog (kick-drift-kick) for t in
// [0, t_int] at uniform step near dt, then free flight over t_free.
// Errors with the step index if the state stops being finite.
TransverseState integrate_trajectory(const TransverseState& s0, const OpticalPotentialSpec& spec,
                                     const BeamConfig& beam, double dt);

struct TrajectoryDiagnostics {
    TransverseState final_state;
    double max_energy_drift = 0.0; // max |E(t) - E(0)| over the run, J
    double initial_energy = 0.0;   // J
    long long steps = 0;
};

TrajectoryDiagnostics integrate_trajectory_monitored(const TransverseState& s0,
                                                     const OpticalPotentialSpec& spec,
                                                     const BeamConfig& beam, double dt);

// Final positions for a batch of initial states. The serial routine is the
// reference implementation; the parallel one distributes trajectories over
// OpenMP threads (workers = 0 uses the OpenMP default) and produces
// bit-identical output for any worker count.
std::vector<double> propagate_ensemble_serial(std::span<const TransverseState> initial,
                                              const OpticalPotentialSpec& spec,
                                              const BeamConfig& beam, double dt);
std::vector<double> propagate_ensemble_parallel(std::span<const TransverseState> initial,
                                                const OpticalPotentialSpec& spec,
                                                const BeamConfig& beam, double dt, int workers);

struct DepositionHistogram {
    double bin_width = 0.0; // m
    double origin = 0.0;    // left edge of bin 0, aligned to a multiple of bin_width
    std::vector<std::int64_t> counts;
    std::int64_t n_total = 0;

    double bin_center(std::size_t k) const {
        return origin + (static_cast<double>(k) + 0.5) * bin_width;
    }
};

// Bins positions on a grid aligned to multiples of bin_width. Every position
// lands in some bin (range covers the data), so counts sum to n.
DepositionHistogram bin_positions(std::span<const double> xs, double bin_width);

// Adds b into a, extending the range as needed. Grids must share bin width
// and alignment.
void merge_histogram(DepositionHistogram& a, const DepositionHistogram& b);

struct DepositionOptions {
    double bin_width = 1.403e-9; // m
    int workers = 0;             // 0 = OpenMP default, 1 = serial reference
    PotentialTerms terms = PotentialTerms::total;
    int steps_per_period = 200;  // dt = T_min / steps_per_period
    double dt_override = 0.0;    // > 0 forces the step
};

struct RunStats {
    double dt = 0.0;
    long long total_steps = 0;
};

// Propagates n trajectories through the averaged optical potential and bins
// final positions. Deterministic for a fixed seed regardless of worker count.
DepositionHistogram simulate_deposition(const MoleculeModel& model, const SuperpositionSpec& sup,
                                        const StandingWaveConfig& field, const BeamConfig& beam,
                                        std::int64_t n, std::uint64_t seed,
                                        const DepositionOptions& options = {},
                                        RunStats* stats = nullptr);

} // namespace codep
