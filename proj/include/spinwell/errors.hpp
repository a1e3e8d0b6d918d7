// errors.hpp — Error taxonomy shared by all modules

#pragma once

#include <stdexcept>
#include <string>

namespace spinwell {

// Bad user-supplied parameter (CLI exit code 2). Message names the offending field.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Broken internal contract: dimension mismatch, non-symmetric input, lost norm.
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

// An iterative numeric procedure failed to converge (CLI exit code 3).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested quantity lies outside the computed range, e.g. a derivative
// minimum sitting on the sweep boundary (CLI exit code 4).
struct range_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace spinwell
