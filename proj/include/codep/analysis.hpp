#pragma once

#include "codep/dynamics.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace codep {

// Histogram with real-valued bin contents (deposition counts or broadened
// densities share the analysis path).
struct RealHistogram {
    double bin_width = 0.0;
    double origin = 0.0;
    std::vector<double> values;

    static RealHistogram from(const DepositionHistogram& h);
    double bin_center(std::size_t k) const {
        return origin + (static_cast<double>(k) + 0.5) * bin_width;
    }
    double total_mass() const;
};

struct PeakRecord {
    double position = 0.0;   // m
    double height = 0.0;     // counts above zero
    double fwhm = 0.0;       // m, floored at one bin width
    double background = 0.0; // median bin content
    double contrast = 0.0;   // height / max(background, 1)
};

// Background = median bin content. Peaks are maximal bins exceeding
// background + threshold_fraction * (max - background), separated by
// sub-threshold valleys; FWHM by linear interpolation at half height above
// background. A flat histogram yields no peaks.
std::vector<PeakRecord> peak_metrics(const RealHistogram& h, double threshold_fraction = 0.5);
std::vector<PeakRecord> peak_metrics(const DepositionHistogram& h, double threshold_fraction = 0.5);

// Convolution with a Gaussian kernel of standard deviation t_int * sigma_v
// (bin-integrated kernel, renormalized, so total mass is conserved).
RealHistogram broaden_histogram(const RealHistogram& h, double sigma_v, double t_int);

struct PeriodicityReport {
    std::optional<double> dominant_period; // m
    std::optional<double> beat_length;     // m
    double score = 0.0;                    // [0, 1] normalized autocorrelation peak
};

// Normalized autocorrelation analysis of a uniformly sampled signal.
// dominant_period is the lag of the strongest repeat when its correlation
// reaches 0.8; otherwise the signal is reported aperiodic at that scale with
// the best score found. beat_length tracks the slow envelope repeat of a
// modulated carrier. Errors when the window holds fewer than four periods of
// the detected repeat scale.
PeriodicityReport periodicity_report(std::span<const double> samples, double dx);

// Rebins a histogram by an integer factor (used to score periodicity on a
// coarser grid than the deposition bin).
RealHistogram rebin(const RealHistogram& h, int factor);

} // namespace codep
