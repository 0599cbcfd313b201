#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "banddist/core.hpp"

namespace banddist {

/// Full complex DFT, X_j = sum_t x_t exp(-2 pi i j t / T), j = 0..T-1.
std::vector<std::complex<double>> dft(std::span<const double> series);

/// Ordinates at the Fourier frequencies j / T, j = 1..floor(T/2); the mean is
/// removed and the zero frequency dropped.
struct Periodogram {
    std::vector<double> ordinates;
    std::size_t series_length = 0;

    /// Frequency of ordinate `index` (0-based) in cycles per sample.
    double frequency(std::size_t index) const noexcept {
        return static_cast<double>(index + 1) / static_cast<double>(series_length);
    }
    /// Population variance recovered from the ordinates: interior frequencies
    /// count twice, the Nyquist ordinate (even T) once, all over T.
    double parseval_variance() const noexcept;
};

/// I(j) = |DFT(x - mean)_j|^2 / T. Throws Errc::too_short for T < 2.
Periodogram periodogram(std::span<const double> series);

/// Weights of the modified Daniell kernel for an odd span m >= 3: 1/(m-1)
/// inside, 1/(2(m-1)) at the two ends. Index 0 is offset -(m-1)/2.
std::vector<double> modified_daniell_weights(std::size_t span);

/// One convolution pass per span. Edges use half-sample mirror reflection
/// (x[-1] = x[0]), which keeps the total mass.
Periodogram daniell_smooth(const Periodogram& pg, std::span<const std::size_t> spans);

/// Convolution with arbitrary symmetric weights (centered) under the same
/// reflection rule as daniell_smooth.
std::vector<double> reflect_convolve(std::span<const double> values, std::span<const double> weights);

enum class Taper { hanning, hamming, rectangular };

std::vector<double> taper_weights(Taper taper, std::size_t length);

struct StftParams {
    std::size_t window = 40;
    std::size_t hop = 8;
    std::size_t coefficients = 12;
    Taper taper = Taper::hanning;
    double floor_eps = 1e-12;
    /// Divide the series by its standard deviation before transforming.
    bool normalize_variance = false;
};

/// W windows x F bins of log(max(|DFT|, floor_eps)), bins 1..F, windows
/// starting at 0, hop, 2 hop, ... while they fit.
struct StftImage {
    std::size_t windows = 0;
    std::size_t bins = 0;
    std::vector<double> cells;  // row-major, one row per window
    StftParams params;
    double series_mean = 0.0;
    double series_variance = 0.0;

    double operator()(std::size_t w, std::size_t f) const noexcept { return cells[w * bins + f]; }
};

std::size_t stft_window_count(std::size_t length, std::size_t window, std::size_t hop) noexcept;

/// Throws Errc::window_too_long, Errc::too_many_coefficients or
/// Errc::invalid_argument for a zero hop.
StftImage stft(std::span<const double> series, const StftParams& params = {});

/// Row-major cells, then the series mean when augment_mean, then the series
/// variance when normalize_variance. normalize_variance must match the flag
/// the image was computed with.
std::vector<double> vectorize_stft(const StftImage& image, bool augment_mean, bool normalize_variance);

/// STFT features for every row of a set, one vector per observation.
TimeSeriesSet stft_features(const TimeSeriesSet& set, const StftParams& params, bool augment_mean);

/// Smoothed periodogram of every row (spans empty -> raw periodogram).
TimeSeriesSet periodogram_set(const TimeSeriesSet& set, std::span<const std::size_t> spans);

/// Heatmap plot data: one "window,bin,value" line per cell, 1-based.
void write_stft_triples(std::ostream& out, const StftImage& image, bool header = true);

}  // namespace banddist
