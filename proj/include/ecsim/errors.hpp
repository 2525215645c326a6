#pragma once

#include <stdexcept>

namespace ecsim {

// Validation failures use std::invalid_argument / std::domain_error.
// These two exist so callers (and the CLI exit-code mapping) can tell
// numerical breakdowns and I/O failures apart from bad input.

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ecsim
