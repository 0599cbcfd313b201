#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "banddist/core.hpp"

namespace banddist {

/// Band spanned by two distinct observations, first < second. Its envelopes
/// at t are min and max of the two defining rows.
struct Band {
    std::size_t first;
    std::size_t second;

    friend bool operator==(const Band&, const Band&) = default;
};

/// Number of two-observation bands, N choose 2.
constexpr std::size_t band_count(std::size_t n_obs) noexcept { return n_obs * (n_obs - 1) / 2; }

/// Position of band (i, j), i < j, in lexicographic order.
constexpr std::size_t band_index(std::size_t n_obs, std::size_t i, std::size_t j) noexcept {
    return i * n_obs - i * (i + 1) / 2 + (j - i - 1);
}

Band band_at(std::size_t n_obs, std::size_t index);

struct ContainmentOptions {
    /// Upper bound on the packed bit storage, in bytes.
    std::size_t memory_cap_bytes = std::size_t{2} << 30;
};

/// Reads BANDDIST_MEMORY_CAP (bytes) when set, otherwise the default cap.
ContainmentOptions containment_options_from_env();

/// Closed-interval containment bits for every (band, observation) pair,
/// packed 64 time points per word, with cached popcounts.
///
/// Storage is observation-major: the bands of one observation are
/// contiguous, so a pair (x, y) streams two arrays in lockstep.
class ContainmentTable {
public:
    std::size_t observation_count() const noexcept { return n_obs_; }
    std::size_t time_count() const noexcept { return n_time_; }
    std::size_t band_total() const noexcept { return n_bands_; }
    std::size_t words_per_row() const noexcept { return words_; }

    std::span<const std::uint64_t> bits(std::size_t band, std::size_t obs) const noexcept {
        return {bits_.data() + (obs * n_bands_ + band) * words_, words_};
    }
    bool contains(std::size_t band, std::size_t obs, std::size_t t) const noexcept {
        return (bits(band, obs)[t / 64] >> (t % 64)) & 1u;
    }
    std::uint32_t popcount(std::size_t band, std::size_t obs) const noexcept {
        return popcounts_[obs * n_bands_ + band];
    }

private:
    friend ContainmentTable build_containment(const TimeSeriesSet&, const ContainmentOptions&);

    std::size_t n_obs_ = 0;
    std::size_t n_time_ = 0;
    std::size_t n_bands_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint32_t> popcounts_;
};

/// Packed storage size build_containment would allocate for an N x T set.
std::size_t containment_bytes(std::size_t n_obs, std::size_t n_time) noexcept;

/// Throws Errc::resource_limit when the packed table would exceed the cap.
ContainmentTable build_containment(const TimeSeriesSet& set, const ContainmentOptions& options = {});

/// Jaccard similarity of the time sets during which x and y lie in the band;
/// 1 when neither ever does.
double bandwise_similarity(const ContainmentTable& table, std::size_t band, std::size_t x, std::size_t y);

/// Number of bands containing x or y at some time point.
std::size_t informative_band_count(const ContainmentTable& table, std::size_t x, std::size_t y);

/// Mean bandwise Jaccard distance over the bands containing x or y at some
/// time. Bands are visited in lexicographic order; the sum is divided once.
double band_distance_pair(const ContainmentTable& table, std::size_t x, std::size_t y);

DistanceMatrix band_distance_matrix(const TimeSeriesSet& set, const ContainmentOptions& options = {});

/// Definition-level recomputation without a containment table, O(N^4 T).
/// Sums in the same order as band_distance_matrix, so results match exactly.
DistanceMatrix naive_band_distance_matrix(const TimeSeriesSet& set);

}  // namespace banddist
