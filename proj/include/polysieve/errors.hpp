#pragma once

#include <stdexcept>
#include <string>

namespace polysieve {

// Common base so callers can catch everything the library throws in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside a function's mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

// Invalid parameter combination (orderings, positivity, ranges).
struct InvalidParameters : Error {
    using Error::Error;
};

// An iterative routine exhausted its budget before reaching tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

// A user-supplied callable produced NaN or infinity.
struct NonFinite : Error {
    using Error::Error;
};

// Root bracketing failed: same sign at both bracket ends.
struct NoSignChange : Error {
    using Error::Error;
};

// A modulus that must be prime is not.
struct NotPrime : Error {
    using Error::Error;
};

// A modulus that must be squarefree is not.
struct NotSquarefree : Error {
    using Error::Error;
};

// 128-bit integer arithmetic would overflow.
struct Overflow : Error {
    using Error::Error;
};

// The factoring strategy gave up on some input.
struct FactorizationFailure : Error {
    using Error::Error;
};

}  // namespace polysieve
