#include "banddist/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace banddist {
namespace {

void check_p(double p) {
    if (!(p >= 1.0) || std::isnan(p)) throw Error(Errc::invalid_p, "p must be >= 1, got " + std::to_string(p));
}

double lp_pair(std::span<const double> a, std::span<const double> b, double p) {
    double acc = 0.0;
    if (p == 1.0) {
        for (std::size_t t = 0; t < a.size(); ++t) acc += std::abs(a[t] - b[t]);
        return acc;
    }
    if (p == 2.0) {
        for (std::size_t t = 0; t < a.size(); ++t) acc += (a[t] - b[t]) * (a[t] - b[t]);
        return std::sqrt(acc);
    }
    for (std::size_t t = 0; t < a.size(); ++t) acc += std::pow(std::abs(a[t] - b[t]), p);
    return std::pow(acc, 1.0 / p);
}

}  // namespace

DistanceMatrix lp_distance_matrix(const TimeSeriesSet& set, double p) {
    check_p(p);
    const std::size_t n = set.size();
    std::vector<double> entries(n * n, 0.0);
    const auto n_signed = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t xs = 0; xs < n_signed; ++xs) {
        const auto x = static_cast<std::size_t>(xs);
        for (std::size_t y = x + 1; y < n; ++y) {
            const double d = lp_pair(set.row(x), set.row(y), p);
            entries[x * n + y] = d;
            entries[y * n + x] = d;
        }
    }
    return DistanceMatrix(n, std::move(entries), DistanceMethod::lp);
}

std::optional<std::size_t> EquidepthRanges::assign(std::size_t t, double value) const {
    const auto& dim = ranges_.at(t);
    for (std::size_t g = 0; g < dim.size(); ++g) {
        if (dim[g].lower <= value && value <= dim[g].upper) return g;
    }
    return std::nullopt;
}

EquidepthRanges build_equidepth_ranges(const TimeSeriesSet& set, std::size_t k) {
    const std::size_t n = set.size();
    if (k == 0) throw Error(Errc::invalid_argument, "k must be positive");
    if (k > n) throw Error(Errc::k_too_large, "k = " + std::to_string(k) + " exceeds N = " + std::to_string(n));

    EquidepthRanges out;
    out.k_ = k;
    out.ranges_.resize(set.length());
    const std::size_t base = n / k;
    const std::size_t larger = n % k;  // the first `larger` groups hold base + 1
    std::vector<std::size_t> order(n);
    for (std::size_t t = 0; t < set.length(); ++t) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return set(a, t) < set(b, t); });
        auto& dim = out.ranges_[t];
        dim.reserve(k);
        std::size_t pos = 0;
        for (std::size_t g = 0; g < k; ++g) {
            const std::size_t count = base + (g < larger ? 1 : 0);
            dim.push_back({set(order[pos], t), set(order[pos + count - 1], t)});
            pos += count;
        }
    }
    return out;
}

double pidist_similarity(const TimeSeriesSet& set, const EquidepthRanges& ranges, std::size_t x, std::size_t y,
                         double p) {
    check_p(p);
    if (x >= set.size() || y >= set.size()) throw Error(Errc::invalid_argument, "observation index out of range");
    if (ranges.dimensions() != set.length()) throw Error(Errc::length_mismatch, "ranges built for another set");
    double acc = 0.0;
    for (std::size_t t = 0; t < set.length(); ++t) {
        const double a = set(x, t);
        const double b = set(y, t);
        const auto ga = ranges.assign(t, a);
        if (!ga || ga != ranges.assign(t, b)) continue;
        const double width = ranges.ranges(t)[*ga].width();
        // Zero width forces a == b; the term takes its limiting value 1.
        const double term = width == 0.0 ? 1.0 : 1.0 - std::abs(a - b) / width;
        acc += p == 1.0 ? term : std::pow(term, p);
    }
    return p == 1.0 ? acc : std::pow(acc, 1.0 / p);
}

std::size_t default_pidist_groups(std::size_t n_obs) noexcept {
    const std::size_t k = (n_obs + 9) / 10;
    return std::clamp<std::size_t>(k, 2, std::max<std::size_t>(n_obs, 2));
}

DistanceMatrix pidist_distance_matrix(const TimeSeriesSet& set, const PidistOptions& options) {
    check_p(options.p);
    const std::size_t n = set.size();
    const std::size_t k = options.k == 0 ? default_pidist_groups(n) : options.k;
    const auto ranges = build_equidepth_ranges(set, k);
    const double max_similarity =
        options.p == 1.0 ? static_cast<double>(set.length()) : std::pow(static_cast<double>(set.length()), 1.0 / options.p);

    std::vector<double> entries(n * n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
            const double s = pidist_similarity(set, ranges, x, y, options.p);
            double d = options.rescale ? 1.0 - s / max_similarity : max_similarity - s;
            d = std::max(d, 0.0);
            entries[x * n + y] = d;
            entries[y * n + x] = d;
        }
    }
    return DistanceMatrix(n, std::move(entries), DistanceMethod::pidist);
}

}  // namespace banddist
