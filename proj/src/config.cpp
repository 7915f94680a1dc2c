#include "codep/config.hpp"

#include "codep/constants.hpp"
#include "codep/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace codep {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double_str(const std::string& key, const std::string& tok) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "': malformed number '" + tok + "'");
    }
}

// Splits "value [unit]" into tokens.
std::pair<std::string, std::string> split_value_unit(const std::string& raw) {
    std::istringstream is(raw);
    std::string value, unit, extra;
    is >> value >> unit >> extra;
    if (!extra.empty()) throw ValidationError("expected 'value [unit]', got '" + raw + "'");
    return {value, unit};
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "dataset.path",
        "superposition.state1",
        "superposition.state2",
        "superposition.c1_sq",
        "superposition.theta",
        "field.E1",
        "field.E2",
        "field.lambda1",
        "field.lambda2",
        "field.theta_F",
        "beam.vz",
        "beam.nozzle_width",
        "beam.sigma_v",
        "beam.t_int",
        "beam.t_free",
        "run.n",
        "run.seed",
        "run.bin_width",
        "run.workers",
        "run.threshold_fraction",
        "run.compare_incoherent",
        "run.terms",
        "run.steps_per_period",
        "run.window",
        "run.grid_per_lambda",
        "mixture.temperature",
        "mixture.cutoff",
        "mixture.pulse_field",
        "mixture.pulse_width",
        "sweep.param",
        "sweep.values",
        "validate.max_residual",
    };
    return keys;
}

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_text(ss.str(), path);
}

Config Config::from_text(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw ParseError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        if (section.empty())
            throw ParseError(origin + ":" + std::to_string(lineno) + ": entry outside any section");
        cfg.kv_[section + "." + key] = value;
    }
    return cfg;
}

void Config::set(const std::string& dotted_key, const std::string& value) {
    kv_[dotted_key] = value;
}

void Config::apply_override(const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ValidationError("override must have the form section.key=value: '" + assignment + "'");
    std::string key = trim(assignment.substr(0, eq));
    if (key.find('.') == std::string::npos)
        throw ValidationError("override key must be dotted (section.key): '" + key + "'");
    kv_[key] = trim(assignment.substr(eq + 1));
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ValidationError("missing required config key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    return parse_double_str(key, it->second);
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        std::size_t pos = 0;
        auto v = std::stoll(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "': malformed integer '" + it->second + "'");
    }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "on") return true;
    if (it->second == "false" || it->second == "0" || it->second == "off") return false;
    throw ValidationError("config key '" + key + "': expected boolean, got '" + it->second + "'");
}

double Config::get_quantity(const std::string& key, Dimension dim, double fallback_si) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback_si;
    auto [value, unit] = split_value_unit(it->second);
    const double v = parse_double_str(key, value);
    if (unit.empty())
        throw ValidationError("config key '" + key + "': missing unit tag on '" + it->second + "'");
    Unit u;
    try {
        u = parse_unit(unit);
    } catch (const ParseError& e) {
        throw ValidationError("config key '" + key + "': " + e.what());
    }
    if (dimension_of(u) != dim)
        throw ValidationError("config key '" + key + "': unit '" + unit + "' has the wrong dimension");
    return to_si(v, u);
}

double Config::get_time(const std::string& key, double fallback_s) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback_s;
    auto [value, unit] = split_value_unit(it->second);
    const double v = parse_double_str(key, value);
    if (unit == "s") return v;
    if (unit == "ms") return v * 1e-3;
    if (unit == "us") return v * 1e-6;
    if (unit == "ns") return v * 1e-9;
    throw ValidationError("config key '" + key + "': expected a time unit (s, ms, us, ns), got '" +
                          unit + "'");
}

void Config::check_schema() const {
    const auto& known = known_keys();
    for (const auto& [key, value] : kv_) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ValidationError("unknown config key '" + key + "'");
    }
}

namespace {

StateKey parse_state_key(const std::string& ground_label, const std::string& key,
                         const std::string& raw) {
    std::istringstream is(raw);
    int nu, J, M;
    std::string extra;
    if (!(is >> nu >> J >> M) || (is >> extra))
        throw ValidationError("config key '" + key + "': expected 'nu J M', got '" + raw + "'");
    return {ground_label, nu, J, M};
}

} // namespace

RunSetup build_setup(const Config& config, const std::string& dataset_override) {
    config.check_schema();

    std::string dataset = dataset_override;
    if (dataset.empty()) dataset = config.get_string("dataset.path", "");
    if (dataset.empty()) {
        if (const char* env = std::getenv("CODEP_DATASET")) dataset = env;
    }
    if (dataset.empty())
        throw ValidationError("no dataset: set dataset.path, --dataset, or CODEP_DATASET");

    MoleculeModel model = load_molecule(dataset);

    // Field defaults: E1 = 1e2 V/cm, E2/E1 = 1e4, lambda 0.628/0.736 um,
    // theta_F = -2.65 rad.
    const double E1 = config.get_quantity("field.E1", Dimension::Field, 1.0e4);
    const double E2 = config.get_quantity("field.E2", Dimension::Field, 1.0e8);
    const double lambda1 = config.get_quantity("field.lambda1", Dimension::Length, 0.628e-6);
    const double lambda2 = config.get_quantity("field.lambda2", Dimension::Length, 0.736e-6);
    const double theta_F = config.get_double("field.theta_F", -2.65);
    StandingWaveConfig field = StandingWaveConfig::make(E1, E2, lambda1, lambda2, theta_F);

    const StateKey s1 = parse_state_key(model.ground_label(), "superposition.state1",
                                        config.get_string("superposition.state1", "0 0 0"));
    const StateKey s2 = parse_state_key(model.ground_label(), "superposition.state2",
                                        config.get_string("superposition.state2", "0 2 0"));
    const double c1_sq = config.get_double("superposition.c1_sq", 0.2);
    if (c1_sq < 0.0 || c1_sq > 1.0)
        throw ValidationError("superposition.c1_sq must lie in [0, 1]");
    const double theta = config.get_double("superposition.theta", 0.0);
    const std::complex<double> c1{std::sqrt(c1_sq), 0.0};
    const std::complex<double> c2 =
        std::sqrt(1.0 - c1_sq) * std::exp(std::complex<double>(0.0, -theta));
    SuperpositionSpec sup = SuperpositionSpec::make(model, s1, s2, c1, c2);

    BeamConfig beam;
    beam.vz = config.get_double("beam.vz", 600.0);
    beam.nozzle_width = config.get_quantity("beam.nozzle_width", Dimension::Length, 4.0 * lambda2);
    beam.sigma_v = config.get_double("beam.sigma_v", 0.0);
    beam.t_int = config.get_time("beam.t_int", 0.625e-6);
    beam.t_free = config.get_time("beam.t_free", 0.0);
    beam.mass = model.mass();
    beam.validate();

    RunSetup setup(std::move(model), sup, field, beam);
    setup.n = config.get_int("run.n", 20000);
    if (setup.n <= 0) throw ValidationError("run.n must be > 0");
    setup.seed = static_cast<std::uint64_t>(config.get_int("run.seed", 1));
    setup.deposition.bin_width = config.get_quantity("run.bin_width", Dimension::Length, 1.403e-9);
    setup.deposition.workers = static_cast<int>(config.get_int("run.workers", 0));
    setup.deposition.steps_per_period = static_cast<int>(config.get_int("run.steps_per_period", 200));
    const std::string terms = config.get_string("run.terms", "total");
    if (terms == "total") setup.deposition.terms = PotentialTerms::total;
    else if (terms == "ni") setup.deposition.terms = PotentialTerms::non_interference_only;
    else if (terms == "in") setup.deposition.terms = PotentialTerms::interference_only;
    else throw ValidationError("run.terms must be one of total, ni, in");
    setup.threshold_fraction = config.get_double("run.threshold_fraction", 0.5);
    setup.compare_incoherent = config.get_bool("run.compare_incoherent", false);
    setup.window = config.get_quantity("run.window", Dimension::Length, beam.nozzle_width);
    setup.grid_per_lambda = static_cast<int>(config.get_int("run.grid_per_lambda", 1000));

    setup.temperature = config.get_double("mixture.temperature", 298.0);
    setup.cutoff = config.get_double("mixture.cutoff", 0.99);
    setup.pulse.field_strength = config.get_quantity("mixture.pulse_field", Dimension::Field, 3.25e9);
    setup.pulse.spectral_width = [&] {
        const double si = config.get_quantity("mixture.pulse_width", Dimension::Energy,
                                              75.4 * kWavenumberJoule);
        return si / kWavenumberJoule; // stored in cm-1
    }();

    setup.sweep_param = config.get_string("sweep.param", "");
    const std::string values = config.get_string("sweep.values", "");
    if (!values.empty()) {
        std::istringstream is(values);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            tok = trim(tok);
            if (!tok.empty()) setup.sweep_values.push_back(parse_double_str("sweep.values", tok));
        }
    }
    setup.dataset_path = dataset;
    return setup;
}

} // namespace codep
