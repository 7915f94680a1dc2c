#pragma once

#include "codep/mixture.hpp"
#include "codep/units.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace codep {

// Flat key-value view of the sectioned run configuration: "[field]\nE1 = ..."
// becomes "field.E1". Values keep their raw text (number plus optional unit
// tag) until a typed getter converts them.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_text(const std::string& text, const std::string& origin = "<string>");

    void set(const std::string& dotted_key, const std::string& value);
    // "section.key=value" command-line override.
    void apply_override(const std::string& assignment);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // "0.628 um" -> SI value of the requested dimension.
    double get_quantity(const std::string& key, Dimension dim, double fallback_si) const;
    // "0.625 us" -> seconds; accepts s, ms, us, ns.
    double get_time(const std::string& key, double fallback_s) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }
    const std::string& origin() const { return origin_; }

    // Rejects keys outside the known schema, naming the offending key.
    void check_schema() const;

private:
    std::map<std::string, std::string> kv_;
    std::string origin_ = "<empty>";
};

// Everything a run needs, built from a config document with defaults filled.
struct RunSetup {
    RunSetup(MoleculeModel m, SuperpositionSpec s, StandingWaveConfig f, BeamConfig b)
        : model(std::move(m)), superposition(s), field(f), beam(b) {}

    MoleculeModel model;
    SuperpositionSpec superposition;
    StandingWaveConfig field;
    BeamConfig beam;
    std::int64_t n = 20000;
    std::uint64_t seed = 1;
    DepositionOptions deposition;
    double threshold_fraction = 0.5;
    bool compare_incoherent = false;
    // mixture parameters
    double temperature = 298.0;
    double cutoff = 0.99;
    PreparationPulse pulse;
    // sweep parameters
    std::string sweep_param;
    std::vector<double> sweep_values;
    // potential sampling window and resolution
    double window = 0.0; // m, centered on 0; defaults to the nozzle width
    int grid_per_lambda = 1000;

    std::string dataset_path;
};

// Builds and validates a RunSetup. `dataset_override` (CLI flag or the
// CODEP_DATASET environment variable) wins over the config's dataset.path.
RunSetup build_setup(const Config& config, const std::string& dataset_override = "");

} // namespace codep
