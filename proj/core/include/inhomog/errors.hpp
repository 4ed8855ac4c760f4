#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace inhomog {

// Base for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (delta out of
// range, |z| >= 1, non-contracting scale, ...).
struct domain_error : error {
    using error::error;
};

// Word index out of range for the system it is applied to.
struct invalid_word_error : error {
    using error::error;
};

// Operation requested on geometry it cannot represent exactly, e.g. a
// rotated similarity applied to an axis-aligned rectangle.
struct unsupported_geometry_error : error {
    using error::error;
};

// Work or memory bound exceeded; carries the limit and the projected size.
struct budget_exceeded_error : error {
    budget_exceeded_error(std::uint64_t limit_, std::uint64_t required_)
        : error("budget exceeded: required " + std::to_string(required_) +
                " exceeds limit " + std::to_string(limit_)),
          limit(limit_),
          required(required_) {}

    std::uint64_t limit = 0;
    std::uint64_t required = 0;
};

// Not enough samples/scales/radii to fit anything meaningful.
struct insufficient_data_error : error {
    using error::error;
};

// File or format problems on the I/O surfaces.
struct io_error : error {
    using error::error;
};

} // namespace inhomog
