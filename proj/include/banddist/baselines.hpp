#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "banddist/core.hpp"

namespace banddist {

/// Pairwise (sum |x_t - y_t|^p)^(1/p). Throws Errc::invalid_p for p < 1.
DistanceMatrix lp_distance_matrix(const TimeSeriesSet& set, double p = 2.0);

struct ValueRange {
    double lower;
    double upper;

    double width() const noexcept { return upper - lower; }
};

/// Per-dimension equal-count groups of the observation values. Groups differ
/// in size by at most one, larger groups first; ties sort by observation index.
class EquidepthRanges {
public:
    std::size_t dimensions() const noexcept { return ranges_.size(); }
    std::size_t groups() const noexcept { return k_; }
    const std::vector<ValueRange>& ranges(std::size_t t) const { return ranges_.at(t); }

    /// Lowest-indexed range holding `value` on dimension t, if any. A value on
    /// the shared edge of two ranges goes to the lower one.
    std::optional<std::size_t> assign(std::size_t t, double value) const;

private:
    friend EquidepthRanges build_equidepth_ranges(const TimeSeriesSet&, std::size_t);

    std::size_t k_ = 0;
    std::vector<std::vector<ValueRange>> ranges_;
};

/// Throws Errc::k_too_large when k > N, Errc::invalid_argument when k == 0.
EquidepthRanges build_equidepth_ranges(const TimeSeriesSet& set, std::size_t k);

/// PIDist similarity: summed over dimensions where x and y share a range. A
/// zero-width shared range contributes 1.
double pidist_similarity(const TimeSeriesSet& set, const EquidepthRanges& ranges, std::size_t x, std::size_t y,
                         double p);

/// ceil(N / 10), clamped to [2, N].
std::size_t default_pidist_groups(std::size_t n_obs) noexcept;

struct PidistOptions {
    std::size_t k = 0;  // 0 selects default_pidist_groups
    double p = 2.0;
    /// Divide by the maximum attainable similarity T^(1/p) before inverting.
    /// When off, distance = T^(1/p) - similarity.
    bool rescale = true;
};

DistanceMatrix pidist_distance_matrix(const TimeSeriesSet& set, const PidistOptions& options = {});

}  // namespace banddist
