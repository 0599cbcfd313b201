#include "banddist/core.hpp"

#include <algorithm>
#include <cmath>

namespace banddist {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::non_finite: return "NonFinite";
        case Errc::too_few_observations: return "TooFewObservations";
        case Errc::ragged_rows: return "RaggedRows";
        case Errc::resource_limit: return "ResourceLimit";
        case Errc::invalid_p: return "InvalidP";
        case Errc::k_too_large: return "KTooLarge";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::too_short: return "TooShort";
        case Errc::invalid_span: return "InvalidSpan";
        case Errc::window_too_long: return "WindowTooLong";
        case Errc::too_many_coefficients: return "TooManyCoefficients";
        case Errc::insufficient_data: return "InsufficientData";
        case Errc::missing_date_label: return "MissingDateLabel";
        case Errc::not_positive_definite: return "NotPositiveDefinite";
        case Errc::not_stationary: return "NotStationary";
        case Errc::incomplete_day: return "IncompleteDay";
        case Errc::parse_error: return "ParseError";
        case Errc::missing_artifact: return "MissingArtifact";
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::io_error: return "IOError";
    }
    return "Unknown";
}

NonFiniteError::NonFiniteError(std::size_t row, std::size_t col)
    : Error(Errc::non_finite,
            "non-finite value at (" + std::to_string(row) + "," + std::to_string(col) + ")"),
      row_(row),
      col_(col) {}

TimeSeriesSet validate_set(std::span<const double> row_major, std::size_t n_obs, std::size_t n_time,
                           std::vector<std::string> labels) {
    if (n_obs < 2) {
        throw Error(Errc::too_few_observations, "need at least 2 observations, got " + std::to_string(n_obs));
    }
    if (n_time < 1) {
        throw Error(Errc::ragged_rows, "observations must have at least one time point");
    }
    if (row_major.size() != n_obs * n_time) {
        throw Error(Errc::ragged_rows, "value count does not match N x T");
    }
    if (!labels.empty() && labels.size() != n_obs) {
        throw Error(Errc::invalid_argument, "label count does not match observation count");
    }
    for (std::size_t i = 0; i < n_obs; ++i) {
        for (std::size_t t = 0; t < n_time; ++t) {
            if (!std::isfinite(row_major[i * n_time + t])) throw NonFiniteError(i + 1, t + 1);
        }
    }
    TimeSeriesSet set;
    set.n_obs_ = n_obs;
    set.n_time_ = n_time;
    set.values_.assign(row_major.begin(), row_major.end());
    set.labels_ = std::move(labels);
    return set;
}

TimeSeriesSet validate_set(const std::vector<std::vector<double>>& rows, std::vector<std::string> labels) {
    if (rows.size() < 2) {
        throw Error(Errc::too_few_observations, "need at least 2 observations, got " + std::to_string(rows.size()));
    }
    const std::size_t n_time = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * n_time);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n_time) {
            throw Error(Errc::ragged_rows, "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                               " values, expected " + std::to_string(n_time));
        }
        flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return validate_set(flat, rows.size(), n_time, std::move(labels));
}

TimeSeriesSet validate_set(const TimeSeriesSet& set) {
    return validate_set(set.values(), set.size(), set.length(), set.labels());
}

std::vector<std::vector<double>> TimeSeriesSet::to_rows() const {
    std::vector<std::vector<double>> rows(n_obs_);
    for (std::size_t i = 0; i < n_obs_; ++i) {
        auto r = row(i);
        rows[i].assign(r.begin(), r.end());
    }
    return rows;
}

std::vector<std::string> validation_warnings(const TimeSeriesSet& set) {
    std::vector<std::string> out;
    if (set.size() == 2) {
        out.emplace_back(
            "only two observations: the single band contains both everywhere, so band distances are all 0");
    }
    return out;
}

TimeSeriesSet select_rows(const TimeSeriesSet& set, std::span<const std::size_t> rows) {
    std::vector<double> flat;
    flat.reserve(rows.size() * set.length());
    std::vector<std::string> labels;
    for (auto r : rows) {
        if (r >= set.size()) throw Error(Errc::invalid_argument, "row index out of range");
        auto v = set.row(r);
        flat.insert(flat.end(), v.begin(), v.end());
        if (set.has_labels()) labels.push_back(set.labels()[r]);
    }
    return validate_set(flat, rows.size(), set.length(), std::move(labels));
}

const char* method_name(DistanceMethod method) noexcept {
    switch (method) {
        case DistanceMethod::band: return "band";
        case DistanceMethod::lp: return "lp";
        case DistanceMethod::pidist: return "pidist";
    }
    return "unknown";
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries, DistanceMethod method)
    : n_(n), entries_(std::move(entries)), method_(method) {
    if (entries_.size() != n_ * n_) throw Error(Errc::invalid_argument, "distance matrix must be N x N");
    for (std::size_t i = 0; i < n_; ++i) {
        if (entries_[i * n_ + i] != 0.0) throw Error(Errc::invalid_argument, "distance matrix diagonal must be 0");
        for (std::size_t j = 0; j < n_; ++j) {
            const double v = entries_[i * n_ + j];
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw Error(Errc::invalid_argument, "distance entries must be finite and nonnegative");
            }
            if (method_ == DistanceMethod::band && v > 1.0) {
                throw Error(Errc::invalid_argument, "band distances must not exceed 1");
            }
            if (v != entries_[j * n_ + i]) throw Error(Errc::invalid_argument, "distance matrix must be symmetric");
        }
    }
}

Partition::Partition(std::vector<int> labels, std::size_t k, std::vector<std::size_t> medoids)
    : labels_(std::move(labels)), k_(k), medoids_(std::move(medoids)) {
    if (k_ == 0) throw Error(Errc::invalid_argument, "partition needs at least one cluster");
    std::vector<bool> seen(k_, false);
    for (int label : labels_) {
        if (label < 1 || static_cast<std::size_t>(label) > k_) {
            throw Error(Errc::invalid_argument, "cluster id " + std::to_string(label) + " outside 1..k");
        }
        seen[label - 1] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw Error(Errc::invalid_argument, "every cluster id must be used");
    }
    if (!medoids_.empty()) {
        if (medoids_.size() != k_) throw Error(Errc::invalid_argument, "need one medoid per cluster");
        for (std::size_t c = 0; c < k_; ++c) {
            if (medoids_[c] >= labels_.size() || labels_[medoids_[c]] != static_cast<int>(c + 1)) {
                throw Error(Errc::invalid_argument, "medoid label must equal its cluster id");
            }
        }
    }
}

std::vector<std::size_t> Partition::cluster_sizes() const {
    std::vector<std::size_t> sizes(k_, 0);
    for (int label : labels_) ++sizes[label - 1];
    return sizes;
}

LabeledDataset::LabeledDataset(TimeSeriesSet series_, std::vector<int> truth_)
    : series(std::move(series_)), truth(std::move(truth_)) {
    if (truth.size() != series.size()) throw Error(Errc::length_mismatch, "truth length must equal N");
}

}  // namespace banddist
