// codep: configuration-driven front end for the two-color standing-wave
// deposition pipeline. Subcommands: potential, deposit, sweep, mixture,
// validate. Every run writes a manifest that pins config, seed and dataset
// hash, so artifacts are reproducible bit-for-bit.

#include "codep/analysis.hpp"
#include "codep/config.hpp"
#include "codep/constants.hpp"
#include "codep/error.hpp"
#include "codep/mixture.hpp"
#include "codep/runio.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace codep;

namespace {

constexpr const char* kVersion = "codep 0.1.0";

struct CliArgs {
    std::string config_path;
    std::string dataset;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    int workers = -1;
    bool strict = false;
};

Config load_config(const CliArgs& args) {
    Config cfg = args.config_path.empty() ? Config() : Config::from_file(args.config_path);
    for (const auto& ov : args.overrides) cfg.apply_override(ov);
    return cfg;
}

RunSetup make_setup(const CliArgs& args, const Config& cfg) {
    RunSetup setup = build_setup(cfg, args.dataset);
    if (args.workers >= 0) setup.deposition.workers = args.workers;
    return setup;
}

json manifest_base(const CliArgs& args, const Config& cfg, const RunSetup& setup,
                   const std::string& command) {
    json m;
    m["tool"] = kVersion;
    m["command"] = command;
    m["dataset"] = {{"path", setup.dataset_path}, {"fnv1a64", file_hash_hex(setup.dataset_path)}};
    m["seed"] = setup.seed;
    m["workers"] = setup.deposition.workers;
    json config = json::object();
    for (const auto& [k, v] : cfg.entries()) config[k] = v;
    m["config"] = config;
    m["config_file"] = args.config_path;
    return m;
}

void write_manifest(const fs::path& dir, json m, std::vector<std::string> outputs, double wall_ms,
                    long long total_steps) {
    m["outputs"] = outputs;
    m["wall_ms"] = wall_ms;
    m["total_steps"] = total_steps;
    std::ofstream f(dir / "manifest.json", std::ios::binary);
    f << m.dump(2) << "\n";
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

double resonance_residual_cm(const RunSetup& setup) {
    return resonance_detuning(setup.model, setup.field, setup.superposition) / kWavenumberRadPerSec;
}

void warn_resonance(const RunSetup& setup) {
    const double res = resonance_residual_cm(setup);
    if (std::abs(res) > 1.0)
        std::fprintf(stderr,
                     "warning: two-photon resonance residual %.4g cm-1 for the configured pair\n",
                     res);
}

int cmd_potential(const CliArgs& args) {
    Config cfg = load_config(args);
    RunSetup setup = make_setup(args, cfg);
    warn_resonance(setup);
    Timer timer;
    fs::create_directories(args.out_dir);

    auto spec = make_optical_potential(setup.model, setup.superposition, setup.field);
    const double half = 0.5 * setup.window;
    const double lam_min = std::min(setup.field.lambda1, setup.field.lambda2);
    const int n_samples =
        std::max(64, static_cast<int>(setup.window / lam_min * setup.grid_per_lambda));

    std::vector<double> xs(static_cast<std::size_t>(n_samples));
    std::vector<PotentialSample> samples(xs.size());
    std::vector<double> v_in(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = -half + setup.window * static_cast<double>(i) / (n_samples - 1);
        samples[i] = potential_averaged(xs[i], spec);
        v_in[i] = samples[i].V_in;
    }
    auto extrema = find_extrema(spec, -half, half, n_samples);
    PeriodicityReport rep;
    try {
        rep = periodicity_report(v_in, setup.window / (n_samples - 1));
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "warning: periodicity not scored: %s\n", e.what());
    }

    const fs::path dir(args.out_dir);
    export_table((dir / "potential.tsv").string(), potential_table(xs, samples));
    export_table((dir / "extrema.tsv").string(), extrema_table(extrema));
    export_table((dir / "periodicity.tsv").string(), periodicity_table(rep));
    export_table((dir / "susceptibility.tsv").string(), susceptibility_table(spec.chi));
    write_manifest(dir, manifest_base(args, cfg, setup, "potential"),
                   {"potential.tsv", "extrema.tsv", "periodicity.tsv", "susceptibility.tsv"},
                   timer.ms(), 0);
    std::printf("potential: %zu samples, %zu extrema, periodicity score %.3f\n", xs.size(),
                extrema.size(), rep.score);
    return 0;
}

long long run_deposit_once(const RunSetup& setup, const fs::path& dir, const std::string& tag,
                           PotentialTerms terms, std::vector<std::string>& outputs) {
    DepositionOptions opt = setup.deposition;
    opt.terms = terms;
    RunStats stats;
    DepositionHistogram h = simulate_deposition(setup.model, setup.superposition, setup.field,
                                                setup.beam, setup.n, setup.seed, opt, &stats);
    auto peaks = peak_metrics(h, setup.threshold_fraction);
    export_table((dir / ("histogram" + tag + ".tsv")).string(), histogram_table(h));
    export_table((dir / ("peaks" + tag + ".tsv")).string(), peaks_table(peaks));
    outputs.push_back("histogram" + tag + ".tsv");
    outputs.push_back("peaks" + tag + ".tsv");
    std::printf("deposit%s: n=%lld bins=%zu peaks=%zu dt=%.4g ns\n", tag.c_str(),
                static_cast<long long>(setup.n), h.counts.size(), peaks.size(), stats.dt * 1e9);
    return stats.total_steps;
}

int cmd_deposit(const CliArgs& args) {
    Config cfg = load_config(args);
    RunSetup setup = make_setup(args, cfg);
    warn_resonance(setup);
    Timer timer;
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    std::vector<std::string> outputs;
    long long steps = run_deposit_once(setup, dir, "", setup.deposition.terms, outputs);
    if (setup.compare_incoherent)
        steps += run_deposit_once(setup, dir, "_ni", PotentialTerms::non_interference_only, outputs);
    write_manifest(dir, manifest_base(args, cfg, setup, "deposit"), outputs, timer.ms(), steps);
    return 0;
}

int cmd_sweep(const CliArgs& args) {
    Config cfg = load_config(args);
    RunSetup probe = make_setup(args, cfg);
    if (probe.sweep_param.empty() || probe.sweep_values.empty())
        throw ValidationError("sweep requires sweep.param and sweep.values");
    Timer timer;
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    long long steps = 0;
    std::vector<std::string> outputs;
    for (double value : probe.sweep_values) {
        Config point = cfg;
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.12g", value);
        point.set(probe.sweep_param, buf);
        RunSetup setup = make_setup(args, point);
        std::snprintf(buf, sizeof buf, "_%g", value);
        steps += run_deposit_once(setup, dir, buf, setup.deposition.terms, outputs);
    }
    write_manifest(dir, manifest_base(args, cfg, probe, "sweep"), outputs, timer.ms(), steps);
    return 0;
}

int cmd_mixture(const CliArgs& args, bool emit_components) {
    Config cfg = load_config(args);
    RunSetup setup = make_setup(args, cfg);
    Timer timer;
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    PreparationPulse pulse = setup.pulse;
    MixtureSpec mix = make_thermal_mixture(setup.model, setup.temperature, setup.cutoff, pulse);
    MixtureRunResult run = simulate_mixture_deposition(setup.model, mix, setup.field, setup.beam,
                                                       setup.n, setup.seed, setup.deposition,
                                                       emit_components);

    Table comp;
    comp.columns = {"J", "M", "weight", "c_sq", "d_sq", "n_alloc"};
    for (std::size_t k = 0; k < mix.components.size(); ++k) {
        const auto& c = mix.components[k];
        comp.rows.push_back({static_cast<double>(c.J), static_cast<double>(c.M), c.weight,
                             std::norm(c.superposition.c1), std::norm(c.superposition.c2),
                             static_cast<double>(run.allocation[k])});
    }
    export_table((dir / "components.tsv").string(), comp);
    export_table((dir / "histogram.tsv").string(), histogram_table(run.combined));
    auto peaks = peak_metrics(run.combined, setup.threshold_fraction);
    export_table((dir / "peaks.tsv").string(), peaks_table(peaks));
    std::vector<std::string> outputs = {"components.tsv", "histogram.tsv", "peaks.tsv"};
    if (emit_components) {
        fs::create_directories(dir / "components");
        for (std::size_t k = 0; k < run.per_component.size(); ++k) {
            char name[64];
            std::snprintf(name, sizeof name, "components/component_%04zu.tsv", k);
            export_table((dir / name).string(), histogram_table(run.per_component[k]));
        }
        outputs.push_back("components/");
    }
    write_manifest(dir, manifest_base(args, cfg, setup, "mixture"), outputs, timer.ms(), 0);
    std::printf("mixture: %zu components, %lld trajectories, %zu peaks\n", mix.components.size(),
                static_cast<long long>(setup.n), peaks.size());
    return 0;
}

int cmd_validate(const CliArgs& args) {
    Config cfg = load_config(args);
    RunSetup setup = make_setup(args, cfg); // schema + dataset + parameter validation
    const double res = resonance_residual_cm(setup);
    const double max_residual = cfg.get_double("validate.max_residual", 1.0);
    std::printf("config: ok (%zu keys)\n", cfg.entries().size());
    std::printf("dataset: %s, %zu states, %zu dipole entries\n", setup.dataset_path.c_str(),
                setup.model.size(), setup.model.dipole_count());
    auto report = validate_transitions(setup.model);
    std::printf("selection rules: %zu violations, %zu interference-eligible ground pairs\n",
                report.violations.size(), report.eligible_pairs.size());
    std::printf("resonance residual: %.6g cm-1\n", res);
    if (!report.violations.empty()) {
        std::fprintf(stderr, "error: dataset contains selection-rule violations\n");
        return 1;
    }
    if (std::abs(res) > max_residual) {
        std::fprintf(stderr, "%s: resonance residual %.4g cm-1 exceeds %.4g cm-1\n",
                     args.strict ? "error" : "warning", res, max_residual);
        if (args.strict) return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-color standing-wave molecular deposition simulator"};
    app.set_version_flag("--version", kVersion);

    CliArgs args;
    app.add_option("-c,--config", args.config_path, "run configuration file");
    app.add_option("-d,--dataset", args.dataset, "molecular dataset (.mol) path");
    app.add_option("-o,--out", args.out_dir, "output directory");
    app.add_option("-s,--set", args.overrides, "override config key: section.key=value");
    app.add_option("-w,--workers", args.workers, "worker threads (0 = all cores)");
    app.add_flag("--strict", args.strict, "treat validation warnings as errors");

    bool emit_components = false;
    auto* sub_potential = app.add_subcommand("potential", "export potential, extrema, periodicity");
    auto* sub_deposit = app.add_subcommand("deposit", "run a deposition ensemble");
    auto* sub_sweep = app.add_subcommand("sweep", "run deposits over a declared parameter sweep");
    auto* sub_mixture = app.add_subcommand("mixture", "run a thermal-mixture deposition");
    sub_mixture->add_flag("--emit-components", emit_components,
                          "write per-component histograms too");
    auto* sub_validate = app.add_subcommand("validate", "check config, dataset and resonance");
    app.require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub_potential->parsed()) return cmd_potential(args);
        if (sub_deposit->parsed()) return cmd_deposit(args);
        if (sub_sweep->parsed()) return cmd_sweep(args);
        if (sub_mixture->parsed()) return cmd_mixture(args, emit_components);
        if (sub_validate->parsed()) return cmd_validate(args);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 2;
    }
    return 0;
}
