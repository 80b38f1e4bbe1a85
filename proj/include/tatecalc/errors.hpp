#ifndef TATECALC_ERRORS_HPP
#define TATECALC_ERRORS_HPP

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tatecalc {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands belong to different rings, variables or degrees.
struct mismatch_error : error {
    using error::error;
};

// A value violates the homogeneity (grading) law.
struct grading_error : error {
    using error::error;
};

// Malformed JSON input or a value outside the documented schema.
struct schema_error : error {
    using error::error;
};

// The ring's projective-class table does not reach the requested index.
struct table_error : error {
    using error::error;
};

// A coefficient beyond the reliable truncation order was requested.
struct precision_error : error {
    using error::error;
};

// Global count of grading-law violations detected at construction time.
// Stays at zero for any well-formed computation; every increment is
// followed by a grading_error throw.
std::atomic<std::uint64_t>& grading_violations() noexcept;

[[noreturn]] void throw_grading(const std::string& what);

} // namespace tatecalc

#endif
