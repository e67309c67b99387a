#pragma once

#include <stdexcept>
#include <string>

namespace ratekit {

/// Bad user input: malformed files, invalid values, violated preconditions.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inconsistent configuration: mismatched dimensions, spec/params mismatch.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter values outside their admissible region (nonstationary AR, ...).
struct ConstraintError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical degeneracy or failure during filtering/optimization.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A pipeline stage was invoked before the artifacts it consumes exist.
struct MissingArtifactError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ratekit
