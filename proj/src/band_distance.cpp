#include "banddist/band_distance.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

namespace banddist {
namespace {

struct PairCounts {
    std::uint32_t intersection;
    std::uint32_t union_size;
};

class JaccardAccumulator {
public:
    void add(PairCounts counts) {
        if (counts.union_size == 0) return;  // band not informative for this pair
        sum_ += 1.0 - static_cast<double>(counts.intersection) / static_cast<double>(counts.union_size);
        ++informative_;
    }
    double mean() const { return informative_ == 0 ? 0.0 : sum_ / static_cast<double>(informative_); }
    std::size_t informative() const { return informative_; }

private:
    double sum_ = 0.0;
    std::size_t informative_ = 0;
};

PairCounts pair_counts(const ContainmentTable& table, std::size_t band, std::size_t x, std::size_t y) {
    const auto px = table.popcount(band, x);
    const auto py = table.popcount(band, y);
    if (px == 0 && py == 0) return {0, 0};
    const auto bx = table.bits(band, x);
    const auto by = table.bits(band, y);
    std::uint32_t inter = 0;
    for (std::size_t w = 0; w < bx.size(); ++w) inter += static_cast<std::uint32_t>(std::popcount(bx[w] & by[w]));
    return {inter, px + py - inter};
}

}  // namespace

Band band_at(std::size_t n_obs, std::size_t index) {
    if (index >= band_count(n_obs)) throw Error(Errc::invalid_argument, "band index out of range");
    std::size_t i = 0;
    while (index >= n_obs - i - 1) {
        index -= n_obs - i - 1;
        ++i;
    }
    return {i, i + 1 + index};
}

ContainmentOptions containment_options_from_env() {
    ContainmentOptions options;
    if (const char* cap = std::getenv("BANDDIST_MEMORY_CAP"); cap != nullptr && *cap != '\0') {
        try {
            options.memory_cap_bytes = std::stoull(cap);
        } catch (const std::exception&) {
            throw Error(Errc::invalid_argument, std::string("BANDDIST_MEMORY_CAP is not a byte count: ") + cap);
        }
    }
    return options;
}

std::size_t containment_bytes(std::size_t n_obs, std::size_t n_time) noexcept {
    const std::size_t words = (n_time + 63) / 64;
    return band_count(n_obs) * n_obs * (words * sizeof(std::uint64_t) + sizeof(std::uint32_t));
}

ContainmentTable build_containment(const TimeSeriesSet& set, const ContainmentOptions& options) {
    const std::size_t n = set.size();
    const std::size_t n_time = set.length();
    const std::size_t bytes = containment_bytes(n, n_time);
    if (bytes > options.memory_cap_bytes) {
        throw Error(Errc::resource_limit, "containment table needs " + std::to_string(bytes) +
                                              " bytes, cap is " + std::to_string(options.memory_cap_bytes));
    }

    ContainmentTable table;
    table.n_obs_ = n;
    table.n_time_ = n_time;
    table.n_bands_ = band_count(n);
    table.words_ = (n_time + 63) / 64;
    table.bits_.assign(table.n_bands_ * n * table.words_, 0);
    table.popcounts_.assign(table.n_bands_ * n, 0);

    const auto n_bands = static_cast<std::ptrdiff_t>(table.n_bands_);
#pragma omp parallel
    {
        std::vector<double> lower(n_time);
        std::vector<double> upper(n_time);
#pragma omp for schedule(static)
        for (std::ptrdiff_t b = 0; b < n_bands; ++b) {
            const Band band = band_at(n, static_cast<std::size_t>(b));
            for (std::size_t t = 0; t < n_time; ++t) {
                lower[t] = std::min(set(band.first, t), set(band.second, t));
                upper[t] = std::max(set(band.first, t), set(band.second, t));
            }
            for (std::size_t x = 0; x < n; ++x) {
                std::uint64_t* words = table.bits_.data() + (x * table.n_bands_ + b) * table.words_;
                std::uint32_t count = 0;
                for (std::size_t t = 0; t < n_time; ++t) {
                    const double v = set(x, t);
                    if (lower[t] <= v && v <= upper[t]) {
                        words[t / 64] |= std::uint64_t{1} << (t % 64);
                        ++count;
                    }
                }
                table.popcounts_[x * table.n_bands_ + b] = count;
            }
        }
    }
    return table;
}

double bandwise_similarity(const ContainmentTable& table, std::size_t band, std::size_t x, std::size_t y) {
    if (band >= table.band_total() || x >= table.observation_count() || y >= table.observation_count()) {
        throw Error(Errc::invalid_argument, "band or observation index out of range");
    }
    const auto counts = pair_counts(table, band, x, y);
    if (counts.union_size == 0) return 1.0;
    return static_cast<double>(counts.intersection) / static_cast<double>(counts.union_size);
}

std::size_t informative_band_count(const ContainmentTable& table, std::size_t x, std::size_t y) {
    std::size_t count = 0;
    for (std::size_t b = 0; b < table.band_total(); ++b) {
        if (table.popcount(b, x) != 0 || table.popcount(b, y) != 0) ++count;
    }
    return count;
}

double band_distance_pair(const ContainmentTable& table, std::size_t x, std::size_t y) {
    if (x >= table.observation_count() || y >= table.observation_count()) {
        throw Error(Errc::invalid_argument, "observation index out of range");
    }
    if (x == y) return 0.0;
    JaccardAccumulator acc;
    for (std::size_t b = 0; b < table.band_total(); ++b) acc.add(pair_counts(table, b, x, y));
    return acc.mean();
}

DistanceMatrix band_distance_matrix(const TimeSeriesSet& set, const ContainmentOptions& options) {
    const auto table = build_containment(set, options);
    const std::size_t n = set.size();
    std::vector<double> entries(n * n, 0.0);
    const auto n_signed = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t xs = 0; xs < n_signed; ++xs) {
        const auto x = static_cast<std::size_t>(xs);
        for (std::size_t y = x + 1; y < n; ++y) {
            const double d = band_distance_pair(table, x, y);
            entries[x * n + y] = d;
            entries[y * n + x] = d;
        }
    }
    return DistanceMatrix(n, std::move(entries), DistanceMethod::band);
}

DistanceMatrix naive_band_distance_matrix(const TimeSeriesSet& set) {
    const std::size_t n = set.size();
    std::vector<double> entries(n * n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
            double sum = 0.0;
            std::size_t informative = 0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    std::uint32_t inter = 0;
                    std::uint32_t uni = 0;
                    for (std::size_t t = 0; t < set.length(); ++t) {
                        const double lo = std::min(set(i, t), set(j, t));
                        const double hi = std::max(set(i, t), set(j, t));
                        const bool in_x = lo <= set(x, t) && set(x, t) <= hi;
                        const bool in_y = lo <= set(y, t) && set(y, t) <= hi;
                        inter += (in_x && in_y) ? 1u : 0u;
                        uni += (in_x || in_y) ? 1u : 0u;
                    }
                    if (uni == 0) continue;
                    sum += 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
                    ++informative;
                }
            }
            const double d = sum / static_cast<double>(informative);
            entries[x * n + y] = d;
            entries[y * n + x] = d;
        }
    }
    return DistanceMatrix(n, std::move(entries), DistanceMethod::band);
}

}  // namespace banddist
