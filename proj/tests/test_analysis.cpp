#include "codep/analysis.hpp"
#include "codep/constants.hpp"
#include "codep/error.hpp"
#include "codep/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace codep;

namespace {

RealHistogram gaussian_histogram(double sigma, double bin_width, double mass = 1e4) {
    RealHistogram h;
    h.bin_width = bin_width;
    const int reach = static_cast<int>(std::ceil(8.0 * sigma / bin_width));
    h.origin = -reach * bin_width;
    for (int k = -reach; k <= reach; ++k) {
        const double x = (k + 0.5) * bin_width;
        h.values.push_back(mass * std::exp(-0.5 * x * x / (sigma * sigma)));
    }
    return h;
}

} // namespace

TEST_CASE("Gaussian peak width recovers 2 sqrt(2 ln 2) sigma") {
    auto h = gaussian_histogram(2.0e-9, 0.2e-9);
    auto peaks = peak_metrics(h, 0.5);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].fwhm == doctest::Approx(4.71e-9).epsilon(0.2e-9 / 4.71e-9));
    CHECK(std::abs(peaks[0].position) <= 0.6 * h.bin_width);
}

TEST_CASE("uniform histogram has no peaks") {
    RealHistogram h;
    h.bin_width = 1e-9;
    h.origin = 0.0;
    h.values.assign(100, 7.0);
    CHECK(peak_metrics(h, 0.5).empty());
}

TEST_CASE("single occupied bin floors at one bin width") {
    RealHistogram h;
    h.bin_width = 1.403e-9;
    h.origin = 0.0;
    h.values.assign(21, 0.0);
    h.values[10] = 50.0;
    auto peaks = peak_metrics(h, 0.5);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].fwhm == h.bin_width);
}

TEST_CASE("peak metrics are invariant under count scaling") {
    auto h = gaussian_histogram(3.0e-9, 1.0e-9, 500.0);
    for (auto& v : h.values) v += 20.0; // background floor
    auto a = peak_metrics(h, 0.5);
    RealHistogram scaled = h;
    for (auto& v : scaled.values) v *= 7.0;
    auto b = peak_metrics(scaled, 0.5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].position == b[i].position);
        CHECK(a[i].fwhm == doctest::Approx(b[i].fwhm).epsilon(1e-12));
        CHECK(b[i].height == doctest::Approx(7.0 * a[i].height).epsilon(1e-12));
        CHECK(a[i].contrast == doctest::Approx(b[i].contrast).epsilon(1e-12));
    }
}

TEST_CASE("broadening") {
    SUBCASE("zero spread is the identity") {
        auto h = gaussian_histogram(2.0e-9, 1.403e-9);
        auto out = broaden_histogram(h, 0.0, 0.625e-6);
        CHECK(out.values == h.values);
    }
    SUBCASE("a delta spreads to the kernel width") {
        RealHistogram h;
        h.bin_width = 1.403e-9;
        h.origin = 0.0;
        h.values.assign(3, 0.0);
        h.values[1] = 1e5;
        // sigma_v t_int = 5 nm
        auto out = broaden_histogram(h, 8.0, 0.625e-6);
        auto peaks = peak_metrics(out, 0.5);
        REQUIRE(peaks.size() == 1);
        CHECK(peaks[0].fwhm == doctest::Approx(11.77e-9).epsilon(0.5e-9 / 11.77e-9));
    }
    SUBCASE("mass conserved within 1e-9") {
        auto h = gaussian_histogram(2.0e-9, 1.403e-9, 3.33e4);
        auto out = broaden_histogram(h, 11.3, 0.625e-6);
        CHECK(std::abs(out.total_mass() - h.total_mass()) <= 1e-9 * h.total_mass());
    }
    SUBCASE("widths add in quadrature within 5%") {
        const double sigma_in = 4.0e-9;
        const double spread = 5.0e-9; // sigma_v t_int
        auto h = gaussian_histogram(sigma_in, 0.4e-9);
        auto out = broaden_histogram(h, spread / 0.625e-6, 0.625e-6);
        auto peaks = peak_metrics(out, 0.5);
        REQUIRE(peaks.size() == 1);
        const double expected =
            2.0 * std::sqrt(2.0 * std::log(2.0)) *
            std::sqrt(sigma_in * sigma_in + spread * spread);
        CHECK(peaks[0].fwhm == doctest::Approx(expected).epsilon(0.05));
    }
}

TEST_CASE("periodicity detection") {
    SUBCASE("cos^2 signal repeats at half the wavelength") {
        const double lambda = 0.628e-6;
        const double span = 10.0 * lambda;
        const int n = 2000;
        std::vector<double> s(n);
        for (int i = 0; i < n; ++i) {
            const double x = span * i / (n - 1);
            s[static_cast<std::size_t>(i)] = std::pow(std::cos(2.0 * kPi / lambda * x), 2);
        }
        auto rep = periodicity_report(s, span / (n - 1));
        REQUIRE(rep.dominant_period.has_value());
        CHECK(*rep.dominant_period == doctest::Approx(0.314e-6).epsilon(0.01));
        CHECK(rep.score >= 0.95);
    }
    SUBCASE("constant signal scores zero") {
        std::vector<double> s(256, 3.0);
        auto rep = periodicity_report(s, 1e-9);
        CHECK(rep.score == 0.0);
        CHECK_FALSE(rep.dominant_period.has_value());
    }
    SUBCASE("period recovered within one sample at SNR 10") {
        const double period = 37.0; // samples
        const int n = 1024;
        std::vector<double> s(n);
        RandomStream rng(4, 0);
        double sig_sd = std::sqrt(0.5);
        for (int i = 0; i < n; ++i)
            s[static_cast<std::size_t>(i)] =
                std::cos(2.0 * kPi * i / period) + (sig_sd / 10.0) * rng.gaussian();
        auto rep = periodicity_report(s, 1.0);
        REQUIRE(rep.dominant_period.has_value());
        CHECK(std::abs(*rep.dominant_period - period) <= 1.0);
    }
    SUBCASE("window shorter than four periods errors with the required span") {
        const int n = 300;
        std::vector<double> s(n);
        for (int i = 0; i < n; ++i)
            s[static_cast<std::size_t>(i)] = std::cos(2.0 * kPi * i / 100.0);
        CHECK_THROWS_AS(periodicity_report(s, 1.0), ValidationError);
    }
}

TEST_CASE("rebin sums adjacent bins") {
    RealHistogram h;
    h.bin_width = 1.0;
    h.origin = 0.0;
    h.values = {1, 2, 3, 4, 5};
    auto out = rebin(h, 2);
    CHECK(out.bin_width == 2.0);
    CHECK(out.values == std::vector<double>{3, 7, 5});
    CHECK(out.total_mass() == h.total_mass());
}
