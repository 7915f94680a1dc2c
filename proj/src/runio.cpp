#include "codep/runio.hpp"

#include "codep/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace codep {

namespace {

std::string format_row(const std::vector<double>& row, char sep) {
    std::string out;
    char buf[48];
    for (std::size_t i = 0; i < row.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", row[i]);
        if (i) out += sep;
        out += buf;
    }
    return out;
}

} // namespace

void export_table(const std::string& path, const Table& table) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) f << '\t';
        f << table.columns[i];
    }
    f << '\n';
    for (const auto& row : table.rows) f << format_row(row, '\t') << '\n';
    if (!f) throw ValidationError("write failed for '" + path + "'");

    auto dot = path.rfind('.');
    const std::string stem = dot == std::string::npos ? path : path.substr(0, dot);
    std::ofstream xy(stem + ".xy", std::ios::binary);
    if (!xy) throw ValidationError("cannot write '" + stem + ".xy'");
    for (const auto& row : table.rows) xy << format_row(row, ' ') << '\n';
    if (!xy) throw ValidationError("write failed for '" + stem + ".xy'");
}

Table histogram_table(const DepositionHistogram& h) {
    Table t;
    t.columns = {"bin_center(nm)", "count"};
    for (std::size_t k = 0; k < h.counts.size(); ++k)
        t.rows.push_back({h.bin_center(k) * 1e9, static_cast<double>(h.counts[k])});
    return t;
}

Table histogram_table(const RealHistogram& h) {
    Table t;
    t.columns = {"bin_center(nm)", "count"};
    for (std::size_t k = 0; k < h.values.size(); ++k)
        t.rows.push_back({h.bin_center(k) * 1e9, h.values[k]});
    return t;
}

Table potential_table(const std::vector<double>& xs, const std::vector<PotentialSample>& samples) {
    Table t;
    t.columns = {"x(um)", "V_ni(J)", "V_in(J)", "V(J)"};
    for (std::size_t i = 0; i < xs.size(); ++i)
        t.rows.push_back({xs[i] * 1e6, samples[i].V_ni, samples[i].V_in, samples[i].total()});
    return t;
}

Table extrema_table(const std::vector<ExtremumRecord>& extrema) {
    Table t;
    t.columns = {"x(um)", "V(J)", "kind(1=min)", "curvature(J/m^2)"};
    for (const auto& e : extrema)
        t.rows.push_back({e.x * 1e6, e.value, e.kind == ExtremumKind::minimum ? 1.0 : 0.0,
                          e.curvature});
    return t;
}

Table peaks_table(const std::vector<PeakRecord>& peaks) {
    Table t;
    t.columns = {"position(nm)", "height(count)", "fwhm(nm)", "background(count)", "contrast"};
    for (const auto& p : peaks)
        t.rows.push_back({p.position * 1e9, p.height, p.fwhm * 1e9, p.background, p.contrast});
    return t;
}

Table periodicity_table(const PeriodicityReport& report) {
    Table t;
    t.columns = {"dominant_period(um)", "beat_length(um)", "score"};
    t.rows.push_back({report.dominant_period ? *report.dominant_period * 1e6 : -1.0,
                      report.beat_length ? *report.beat_length * 1e6 : -1.0, report.score});
    return t;
}

Table susceptibility_table(const SusceptibilitySet& chi) {
    Table t;
    t.columns = {"chi_ni_w1(C*m^2/V)",      "chi_ni_w2(C*m^2/V)",    "chi_in_w1_r(C*m^2/V)",
                 "chi_in_w1_i(C*m^2/V)",    "chi_in_w2_r(C*m^2/V)",  "chi_in_w2_i(C*m^2/V)",
                 "chi_in_w21p1_r(C*m^2/V)", "chi_in_w21p1_i(C*m^2/V)",
                 "chi_in_w21m2_r(C*m^2/V)", "chi_in_w21m2_i(C*m^2/V)"};
    t.rows.push_back({chi.chi_ni_w1, chi.chi_ni_w2, chi.chi_in_w1.real(), chi.chi_in_w1.imag(),
                      chi.chi_in_w2.real(), chi.chi_in_w2.imag(), chi.chi_in_w21p1.real(),
                      chi.chi_in_w21p1.imag(), chi.chi_in_w21m2.real(), chi.chi_in_w21m2.imag()});
    return t;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string file_hash_hex(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot read '" + path + "' for hashing");
    std::ostringstream ss;
    ss << f.rdbuf();
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(ss.str())));
    return buf;
}

} // namespace codep
