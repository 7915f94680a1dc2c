#pragma once

#include "codep/analysis.hpp"
#include "codep/potential.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace codep {

// Tabular artifact: tab-separated values with a unit-bearing header, plus a
// plot-ready companion "<stem>.xy" holding the same rows without the header.
// Re-exporting an identical object yields byte-identical files.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void export_table(const std::string& path, const Table& table);

Table histogram_table(const DepositionHistogram& h);
Table histogram_table(const RealHistogram& h);
Table potential_table(const std::vector<double>& xs, const std::vector<PotentialSample>& samples);
Table extrema_table(const std::vector<ExtremumRecord>& extrema);
Table peaks_table(const std::vector<PeakRecord>& peaks);
Table periodicity_table(const PeriodicityReport& report);
Table susceptibility_table(const SusceptibilitySet& chi);

// FNV-1a 64-bit content hash, hex string; identifies the dataset in manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string file_hash_hex(const std::string& path);

} // namespace codep
