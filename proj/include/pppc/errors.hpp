#pragma once

#include <stdexcept>
#include <string>

namespace pppc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A code specification is malformed: bad file syntax, violated invariants,
/// a matrix that is not SC-aimed, or a referenced external spec that is missing.
struct SpecError : Error {
    using Error::Error;
};

/// A brute-force guard was exceeded (exhaustive enumeration limited to k <= 24).
struct GuardError : Error {
    using Error::Error;
};

} // namespace pppc
