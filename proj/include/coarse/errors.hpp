#ifndef COARSE_ERRORS_HPP_
#define COARSE_ERRORS_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coarse {

/// Failure categories surfaced by the library. The CLI maps these onto
/// process exit codes, so the distinction between "bad input" and
/// "verification failed" matters.
enum class Errc {
    invalid_argument,
    not_square,
    asymmetric_matrix,
    nonzero_diagonal,
    negative_entry,
    nonfinite_entry,
    triangle_violation,
    disconnected_graph,
    budget_exceeded,
    empty_subset,
    empty_cover,
    not_a_cover,
    not_a_grid_space,
    side_too_small,
    lebesgue_too_small,
    cap_overflow,
    empty_witness_set,
    invalid_witness,
    invalid_cover,
    premise_failed,
    no_cover_exists,
    parse_error,
    io_error,
};

const char* errc_name(Errc code);

/// Library-wide exception. `detail()` carries up to three offending indices
/// (unused slots are -1), e.g. the (i,j,k) of a triangle violation.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message,
          std::array<std::int64_t, 3> detail = {-1, -1, -1})
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code),
          detail_(detail) {}

    Errc code() const noexcept { return code_; }
    const std::array<std::int64_t, 3>& detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::array<std::int64_t, 3> detail_;
};

/// Raised when an operation requires a genuine cover; carries the points
/// left uncovered.
class NotACoverError : public Error {
public:
    explicit NotACoverError(std::vector<std::int32_t> uncovered);
    const std::vector<std::int32_t>& uncovered() const noexcept { return uncovered_; }

private:
    std::vector<std::int32_t> uncovered_;
};

}  // namespace coarse

#endif  // COARSE_ERRORS_HPP_
