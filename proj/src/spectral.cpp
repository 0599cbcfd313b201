#include "banddist/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include "banddist/csv.hpp"

namespace banddist {
namespace {

// Planning is not thread-safe in FFTW; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance_of(std::span<const double> v, double mean) {
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(v.size());
}

std::size_t mirror_index(std::ptrdiff_t i, std::size_t n) {
    const auto period = static_cast<std::ptrdiff_t>(2 * n);
    std::ptrdiff_t m = i % period;
    if (m < 0) m += period;
    if (m >= static_cast<std::ptrdiff_t>(n)) m = period - 1 - m;
    return static_cast<std::size_t>(m);
}

}  // namespace

std::vector<std::complex<double>> dft(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n == 0) return {};
    std::vector<double> in(series.begin(), series.end());
    std::vector<std::complex<double>> half(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), reinterpret_cast<fftw_complex*>(half.data()),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    std::vector<std::complex<double>> full(n);
    for (std::size_t j = 0; j < half.size(); ++j) full[j] = half[j];
    for (std::size_t j = half.size(); j < n; ++j) full[j] = std::conj(half[n - j]);
    return full;
}

double Periodogram::parseval_variance() const noexcept {
    double acc = 0.0;
    for (std::size_t j = 0; j < ordinates.size(); ++j) {
        const bool nyquist = series_length % 2 == 0 && j + 1 == series_length / 2;
        acc += (nyquist ? 1.0 : 2.0) * ordinates[j];
    }
    return acc / static_cast<double>(series_length);
}

Periodogram periodogram(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) throw Error(Errc::too_short, "periodogram needs at least 2 points, got " + std::to_string(n));
    const double mean = mean_of(series);
    std::vector<double> centered(n);
    std::transform(series.begin(), series.end(), centered.begin(), [mean](double x) { return x - mean; });
    const auto spectrum = dft(centered);
    Periodogram pg;
    pg.series_length = n;
    pg.ordinates.resize(n / 2);
    for (std::size_t j = 1; j <= n / 2; ++j) pg.ordinates[j - 1] = std::norm(spectrum[j]) / static_cast<double>(n);
    return pg;
}

std::vector<double> modified_daniell_weights(std::size_t span) {
    if (span < 3 || span % 2 == 0) {
        throw Error(Errc::invalid_span, "Daniell span must be odd and >= 3, got " + std::to_string(span));
    }
    const std::size_t half = (span - 1) / 2;
    std::vector<double> w(span, 1.0 / static_cast<double>(2 * half));
    w.front() = w.back() = 1.0 / static_cast<double>(4 * half);
    return w;
}

std::vector<double> reflect_convolve(std::span<const double> values, std::span<const double> weights) {
    if (weights.size() % 2 == 0) throw Error(Errc::invalid_argument, "kernel length must be odd");
    const std::size_t n = values.size();
    const auto half = static_cast<std::ptrdiff_t>(weights.size() / 2);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::ptrdiff_t k = -half; k <= half; ++k) {
            acc += weights[static_cast<std::size_t>(k + half)] *
                   values[mirror_index(static_cast<std::ptrdiff_t>(i) + k, n)];
        }
        out[i] = acc;
    }
    return out;
}

Periodogram daniell_smooth(const Periodogram& pg, std::span<const std::size_t> spans) {
    for (auto span : spans) modified_daniell_weights(span);  // validate all before work
    Periodogram out = pg;
    if (out.ordinates.empty()) return out;
    for (auto span : spans) out.ordinates = reflect_convolve(out.ordinates, modified_daniell_weights(span));
    return out;
}

std::vector<double> taper_weights(Taper taper, std::size_t length) {
    std::vector<double> w(length, 1.0);
    if (length < 2) return w;
    const double denom = static_cast<double>(length - 1);
    for (std::size_t i = 0; i < length; ++i) {
        const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
        switch (taper) {
            case Taper::hanning: w[i] = 0.5 - 0.5 * c; break;
            case Taper::hamming: w[i] = 0.54 - 0.46 * c; break;
            case Taper::rectangular: break;
        }
    }
    // cos() is not exactly symmetric in floating point; mirror the first half.
    for (std::size_t i = 0; i < length / 2; ++i) w[length - 1 - i] = w[i];
    return w;
}

std::size_t stft_window_count(std::size_t length, std::size_t window, std::size_t hop) noexcept {
    if (window == 0 || hop == 0 || window > length) return 0;
    return (length - window) / hop + 1;
}

StftImage stft(std::span<const double> series, const StftParams& params) {
    if (params.window == 0) throw Error(Errc::invalid_argument, "window length must be positive");
    if (params.hop == 0) throw Error(Errc::invalid_argument, "hop must be at least 1");
    if (params.window > series.size()) {
        throw Error(Errc::window_too_long, "window " + std::to_string(params.window) + " exceeds series length " +
                                               std::to_string(series.size()));
    }
    if (params.coefficients == 0 || params.coefficients > params.window / 2) {
        throw Error(Errc::too_many_coefficients, "coefficients must be in 1.." + std::to_string(params.window / 2));
    }
    if (!(params.floor_eps > 0.0)) throw Error(Errc::invalid_argument, "floor_eps must be positive");

    StftImage image;
    image.params = params;
    image.series_mean = mean_of(series);
    image.series_variance = variance_of(series, image.series_mean);

    std::vector<double> input(series.begin(), series.end());
    if (params.normalize_variance && image.series_variance > 0.0) {
        const double sd = std::sqrt(image.series_variance);
        for (auto& v : input) v /= sd;
    }

    const auto taper = taper_weights(params.taper, params.window);
    image.windows = stft_window_count(series.size(), params.window, params.hop);
    image.bins = params.coefficients;
    image.cells.resize(image.windows * image.bins);
    std::vector<double> segment(params.window);
    for (std::size_t w = 0; w < image.windows; ++w) {
        const std::size_t start = w * params.hop;
        for (std::size_t i = 0; i < params.window; ++i) segment[i] = input[start + i] * taper[i];
        const auto spectrum = dft(segment);
        for (std::size_t f = 0; f < image.bins; ++f) {
            image.cells[w * image.bins + f] = std::log(std::max(std::abs(spectrum[f + 1]), params.floor_eps));
        }
    }
    return image;
}

std::vector<double> vectorize_stft(const StftImage& image, bool augment_mean, bool normalize_variance) {
    if (normalize_variance != image.params.normalize_variance) {
        throw Error(Errc::invalid_argument,
                    "normalize_variance must match the flag the image was computed with");
    }
    std::vector<double> out(image.cells);
    if (augment_mean) out.push_back(image.series_mean);
    if (normalize_variance) out.push_back(image.series_variance);
    return out;
}

TimeSeriesSet stft_features(const TimeSeriesSet& set, const StftParams& params, bool augment_mean) {
    std::vector<std::vector<double>> rows(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        rows[i] = vectorize_stft(stft(set.row(i), params), augment_mean, params.normalize_variance);
    }
    return validate_set(rows, set.labels());
}

TimeSeriesSet periodogram_set(const TimeSeriesSet& set, std::span<const std::size_t> spans) {
    std::vector<std::vector<double>> rows(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) rows[i] = daniell_smooth(periodogram(set.row(i)), spans).ordinates;
    return validate_set(rows, set.labels());
}

void write_stft_triples(std::ostream& out, const StftImage& image, bool header) {
    if (header) out << "window,bin,value\n";
    for (std::size_t w = 0; w < image.windows; ++w) {
        for (std::size_t f = 0; f < image.bins; ++f) {
            out << w + 1 << ',' << f + 1 << ',' << csv::format_double(image(w, f)) << '\n';
        }
    }
}

}  // namespace banddist
