#include "codep/analysis.hpp"

#include "codep/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace codep {

RealHistogram RealHistogram::from(const DepositionHistogram& h) {
    RealHistogram r;
    r.bin_width = h.bin_width;
    r.origin = h.origin;
    r.values.assign(h.counts.begin(), h.counts.end());
    return r;
}

double RealHistogram::total_mass() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid) - 1, v.end());
        m = 0.5 * (m + v[mid - 1]);
    }
    return m;
}

// x position where the linear interpolation between bins k and k+1 crosses
// `level` (bin centers as abscissae).
double cross_position(const RealHistogram& h, std::size_t k, double level) {
    const double y0 = h.values[k];
    const double y1 = h.values[k + 1];
    const double x0 = h.bin_center(k);
    if (y1 == y0) return x0;
    return x0 + (level - y0) / (y1 - y0) * h.bin_width;
}

} // namespace

std::vector<PeakRecord> peak_metrics(const RealHistogram& h, double threshold_fraction) {
    std::vector<PeakRecord> out;
    if (h.values.empty()) return out;
    const double background = median(h.values);
    const double top = *std::max_element(h.values.begin(), h.values.end());
    if (top <= background) return out; // flat
    const double threshold = background + threshold_fraction * (top - background);

    const std::size_t n = h.values.size();
    std::size_t i = 0;
    while (i < n) {
        if (h.values[i] < threshold) {
            ++i;
            continue;
        }
        // A contiguous super-threshold region holds one peak.
        std::size_t peak = i;
        std::size_t j = i;
        while (j < n && h.values[j] >= threshold) {
            if (h.values[j] > h.values[peak]) peak = j;
            ++j;
        }
        PeakRecord rec;
        rec.position = h.bin_center(peak);
        rec.height = h.values[peak];
        rec.background = background;
        rec.contrast = rec.height / std::max(background, 1.0);

        const double half = background + 0.5 * (rec.height - background);
        double left = h.bin_center(peak) - 0.5 * h.bin_width;
        for (std::size_t k = peak; k-- > 0;) {
            if (h.values[k] < half) {
                left = cross_position(h, k, half);
                break;
            }
        }
        double right = h.bin_center(peak) + 0.5 * h.bin_width;
        for (std::size_t k = peak; k + 1 < n; ++k) {
            if (h.values[k + 1] < half) {
                right = cross_position(h, k, half);
                break;
            }
        }
        rec.fwhm = std::max(right - left, h.bin_width);
        out.push_back(rec);
        i = j;
    }
    return out;
}

std::vector<PeakRecord> peak_metrics(const DepositionHistogram& h, double threshold_fraction) {
    return peak_metrics(RealHistogram::from(h), threshold_fraction);
}

RealHistogram broaden_histogram(const RealHistogram& h, double sigma_v, double t_int) {
    if (sigma_v < 0.0) throw ValidationError("broaden_histogram: sigma_v must be >= 0");
    const double sigma = sigma_v * t_int;
    if (sigma == 0.0 || h.values.empty()) return h;

    const double dx = h.bin_width;
    const int reach = std::max(1, static_cast<int>(std::ceil(8.0 * sigma / dx)));
    std::vector<double> kernel(static_cast<std::size_t>(2 * reach + 1));
    const double inv = 1.0 / (std::sqrt(2.0) * sigma);
    double norm = 0.0;
    for (int m = -reach; m <= reach; ++m) {
        const double lo = (static_cast<double>(m) - 0.5) * dx;
        const double hi = (static_cast<double>(m) + 0.5) * dx;
        const double w = 0.5 * (std::erf(hi * inv) - std::erf(lo * inv));
        kernel[static_cast<std::size_t>(m + reach)] = w;
        norm += w;
    }
    for (double& w : kernel) w /= norm;

    RealHistogram out;
    out.bin_width = dx;
    out.origin = h.origin - reach * dx;
    out.values.assign(h.values.size() + static_cast<std::size_t>(2 * reach), 0.0);
    for (std::size_t i = 0; i < h.values.size(); ++i) {
        const double v = h.values[i];
        if (v == 0.0) continue;
        for (int m = -reach; m <= reach; ++m)
            out.values[i + static_cast<std::size_t>(m + reach)] +=
                v * kernel[static_cast<std::size_t>(m + reach)];
    }
    return out;
}

RealHistogram rebin(const RealHistogram& h, int factor) {
    if (factor < 1) throw ValidationError("rebin: factor must be >= 1");
    RealHistogram out;
    out.bin_width = h.bin_width * factor;
    out.origin = h.origin;
    out.values.assign((h.values.size() + static_cast<std::size_t>(factor) - 1) /
                          static_cast<std::size_t>(factor),
                      0.0);
    for (std::size_t i = 0; i < h.values.size(); ++i)
        out.values[i / static_cast<std::size_t>(factor)] += h.values[i];
    return out;
}

namespace {

// Autocorrelation with per-lag normalization, r(0) = 1.
std::vector<double> autocorr(std::span<const double> s) {
    const std::size_t n = s.size();
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : s) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    std::vector<double> r(n / 2, 0.0);
    if (var <= 0.0) return r;
    for (std::size_t lag = 0; lag < r.size(); ++lag) {
        double acc = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) acc += (s[i] - mean) * (s[i + lag] - mean);
        r[lag] = acc / (static_cast<double>(n - lag) * var);
    }
    return r;
}

struct CorrPeak {
    double lag;   // fractional samples
    double value;
};

// Local maxima of r for lag >= 1, vertex-refined by a parabola through the
// three surrounding samples.
std::vector<CorrPeak> corr_peaks(const std::vector<double>& r) {
    std::vector<CorrPeak> peaks;
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
        if (!(r[i] >= r[i - 1] && r[i] > r[i + 1])) continue;
        const double denom = r[i - 1] - 2.0 * r[i] + r[i + 1];
        double shift = 0.0;
        double value = r[i];
        if (denom < 0.0) {
            shift = 0.5 * (r[i - 1] - r[i + 1]) / denom;
            shift = std::clamp(shift, -0.5, 0.5);
            value = r[i] - 0.25 * (r[i - 1] - r[i + 1]) * shift;
        }
        peaks.push_back({static_cast<double>(i) + shift, value});
    }
    return peaks;
}

// Parabola vertex through three (x, y) points with uniform-ish spacing.
CorrPeak parabola_vertex(const CorrPeak& a, const CorrPeak& b, const CorrPeak& c) {
    const double x1 = a.lag, x2 = b.lag, x3 = c.lag;
    const double y1 = a.value, y2 = b.value, y3 = c.value;
    const double d21 = (y2 - y1) / (x2 - x1);
    const double d32 = (y3 - y2) / (x3 - x2);
    const double second = (d32 - d21) / (x3 - x1);
    if (second >= 0.0) return b;
    const double vx = 0.5 * (x1 + x2 - d21 / second);
    const double vy = y1 + d21 * (vx - x1) + second * (vx - x1) * (vx - x2);
    return {vx, vy};
}

} // namespace

PeriodicityReport periodicity_report(std::span<const double> samples, double dx) {
    if (samples.size() < 16) throw ValidationError("periodicity_report: need at least 16 samples");
    if (dx <= 0.0) throw ValidationError("periodicity_report: dx must be > 0");

    PeriodicityReport rep;
    const auto r = autocorr(samples);
    auto peaks = corr_peaks(r);
    if (peaks.empty()) return rep; // constant or structureless: score 0

    // Strongest repeat; near-ties resolve toward the smallest lag so the
    // fundamental wins over its multiples.
    const double best =
        std::max_element(peaks.begin(), peaks.end(), [](const CorrPeak& a, const CorrPeak& b) {
            return a.value < b.value;
        })->value;
    const CorrPeak* dominant = nullptr;
    for (const auto& p : peaks) {
        if (p.value >= best - std::max(1e-3, 0.1 * std::abs(best))) {
            dominant = &p;
            break;
        }
    }
    rep.score = std::clamp(best, 0.0, 1.0);
    if (rep.score >= 0.8 && dominant) {
        const double period = dominant->lag * dx;
        const double window = static_cast<double>(samples.size()) * dx;
        if (window < 4.0 * period)
            throw ValidationError("periodicity_report: window too short; need >= " +
                                  std::to_string(4.0 * period) + " m for the detected scale");
        rep.dominant_period = period;
    }

    // Beat length: the carrier-peak sequence samples the envelope of r; its
    // first strong return (away from lag 0) is the slow modulation scale.
    if (rep.dominant_period && peaks.size() >= 4) {
        const double carrier_lag = *rep.dominant_period / dx;
        double env_min = 2.0, env_max = -2.0;
        for (const auto& p : peaks) {
            env_min = std::min(env_min, p.value);
            env_max = std::max(env_max, p.value);
        }
        if (env_max - env_min > 0.05) { // a flat envelope has no beat
            // local maxima of the envelope samples beyond the carrier scale
            std::size_t chosen = 0;
            double chosen_val = -2.0;
            for (std::size_t i = 1; i + 1 < peaks.size(); ++i) {
                if (peaks[i].lag < 1.5 * carrier_lag) continue;
                if (peaks[i].value < peaks[i - 1].value || peaks[i].value < peaks[i + 1].value)
                    continue;
                if (peaks[i].value > chosen_val) chosen_val = peaks[i].value;
            }
            // the smallest-lag revival within tolerance of the best one
            for (std::size_t i = 1; i + 1 < peaks.size(); ++i) {
                if (peaks[i].lag < 1.5 * carrier_lag) continue;
                if (peaks[i].value < peaks[i - 1].value || peaks[i].value < peaks[i + 1].value)
                    continue;
                if (peaks[i].value >= chosen_val - 0.05) {
                    chosen = i;
                    break;
                }
            }
            if (chosen > 0) {
                const CorrPeak v = parabola_vertex(peaks[chosen - 1], peaks[chosen],
                                                   peaks[chosen + 1]);
                if (v.value >= 0.8) rep.beat_length = v.lag * dx;
            }
        }
    }
    return rep;
}

} // namespace codep
