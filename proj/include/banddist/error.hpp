#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace banddist {

enum class Errc {
    non_finite,
    too_few_observations,
    ragged_rows,
    resource_limit,
    invalid_p,
    k_too_large,
    length_mismatch,
    too_short,
    invalid_span,
    window_too_long,
    too_many_coefficients,
    insufficient_data,
    missing_date_label,
    not_positive_definite,
    not_stationary,
    incomplete_day,
    parse_error,
    missing_artifact,
    invalid_argument,
    io_error,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Raised by validate_set. Row and column are 1-based.
class NonFiniteError : public Error {
public:
    NonFiniteError(std::size_t row, std::size_t col);

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

}  // namespace banddist
