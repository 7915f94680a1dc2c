// Benchmarks the OpenMP ensemble propagation against the serial reference
// and checks that both produce identical positions.

#include "codep/config.hpp"
#include "codep/dynamics.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

using namespace codep;

int main(int argc, char** argv) {
    std::string dataset = "data/n2_synthetic.mol";
    std::int64_t n = 20000;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "-d") && i + 1 < argc) dataset = argv[++i];
        else if (!std::strcmp(argv[i], "-n") && i + 1 < argc) n = std::atoll(argv[++i]);
    }

    Config cfg;
    cfg.set("dataset.path", dataset);
    RunSetup setup = build_setup(cfg);

    auto spec = make_optical_potential(setup.model, setup.superposition, setup.field);
    const double half = 0.5 * setup.beam.nozzle_width + setup.field.lambda2;
    const double dt = suggest_time_step(spec, -half, half, setup.beam.mass);
    auto initial = sample_ensemble(setup.beam, n, setup.seed);

    auto time_run = [&](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        auto finals = fn();
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::pair{std::move(finals), s};
    };

    auto [serial, t_serial] =
        time_run([&] { return propagate_ensemble_serial(initial, spec, setup.beam, dt); });
    std::printf("%-12s %10.3f s %12.0f traj/s\n", "serial", t_serial,
                static_cast<double>(n) / t_serial);

    for (int workers : {1, 2, 4, 8}) {
        auto [par, t_par] = time_run(
            [&] { return propagate_ensemble_parallel(initial, spec, setup.beam, dt, workers); });
        const bool identical = par == serial;
        std::printf("omp x%-9d %10.3f s %12.0f traj/s  speedup %5.2f  %s\n", workers, t_par,
                    static_cast<double>(n) / t_par, t_serial / t_par,
                    identical ? "bit-identical" : "MISMATCH");
        if (!identical) return 1;
    }
    return 0;
}
