#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "banddist/error.hpp"

namespace banddist {

class TimeSeriesSet;

/// Checks shape and finiteness; never repairs. Labels are optional but, when
/// given, must have one entry per row.
TimeSeriesSet validate_set(const std::vector<std::vector<double>>& rows, std::vector<std::string> labels = {});
TimeSeriesSet validate_set(std::span<const double> row_major, std::size_t n_obs, std::size_t n_time,
                           std::vector<std::string> labels = {});
TimeSeriesSet validate_set(const TimeSeriesSet& set);

/// N observations by T time points of finite doubles, stored row-major.
/// Immutable once built; construct through validate_set.
class TimeSeriesSet {
public:
    std::size_t size() const noexcept { return n_obs_; }
    std::size_t length() const noexcept { return n_time_; }

    double operator()(std::size_t obs, std::size_t t) const noexcept { return values_[obs * n_time_ + t]; }
    std::span<const double> row(std::size_t obs) const noexcept {
        return {values_.data() + obs * n_time_, n_time_};
    }
    std::span<const double> values() const noexcept { return values_; }

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::vector<std::vector<double>> to_rows() const;

    friend bool operator==(const TimeSeriesSet&, const TimeSeriesSet&) = default;

private:
    friend TimeSeriesSet validate_set(std::span<const double>, std::size_t, std::size_t, std::vector<std::string>);

    std::size_t n_obs_ = 0;
    std::size_t n_time_ = 0;
    std::vector<double> values_;
    std::vector<std::string> labels_;
};

/// Non-fatal findings about a valid set (currently only the N = 2 case, where
/// the single band contains both observations and all distances collapse to 0).
std::vector<std::string> validation_warnings(const TimeSeriesSet& set);

/// Returns a new set with a subset of rows, labels carried along.
TimeSeriesSet select_rows(const TimeSeriesSet& set, std::span<const std::size_t> rows);

enum class DistanceMethod { band, lp, pidist };

const char* method_name(DistanceMethod method) noexcept;

class DistanceMatrix {
public:
    /// Validates symmetry (exact), zero diagonal and nonnegativity; band
    /// matrices must also be bounded by 1.
    DistanceMatrix(std::size_t n, std::vector<double> entries, DistanceMethod method);

    std::size_t size() const noexcept { return n_; }
    DistanceMethod method() const noexcept { return method_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
    std::span<const double> entries() const noexcept { return entries_; }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_;
    std::vector<double> entries_;
    DistanceMethod method_;
};

/// Cluster ids are 1..k. Medoids (0-based observation indices) are ordered by
/// cluster id and present only for medoid-based methods.
class Partition {
public:
    Partition(std::vector<int> labels, std::size_t k, std::vector<std::size_t> medoids = {});

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t cluster_count() const noexcept { return k_; }
    const std::vector<int>& labels() const noexcept { return labels_; }
    const std::vector<std::size_t>& medoids() const noexcept { return medoids_; }
    bool has_medoids() const noexcept { return !medoids_.empty(); }
    std::vector<std::size_t> cluster_sizes() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> labels_;
    std::size_t k_;
    std::vector<std::size_t> medoids_;
};

struct LabeledDataset {
    LabeledDataset(TimeSeriesSet series, std::vector<int> truth);

    TimeSeriesSet series;
    std::vector<int> truth;
};

}  // namespace banddist
