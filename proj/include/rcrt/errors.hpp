#pragma once

#include <stdexcept>

namespace rcrt {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Moduli handed to a coprime-set builder share a factor.
struct NotCoprimeError : Error {
    using Error::Error;
};

// Remainders disagree modulo d; the congruence system has no solution.
struct InconsistentError : Error {
    using Error::Error;
};

// Value outside the dynamic range [0, dM).
struct OutOfRangeError : Error {
    using Error::Error;
};

// Quotient recovery hit a non-exact division.
struct NonExactQuotientError : Error {
    using Error::Error;
};

// High-spread branch selected but no residue lies above d/2.
struct DegenerateStatsError : Error {
    using Error::Error;
};

// Malformed caller input (zero modulus, composite prime argument, ...).
struct InvalidParamsError : Error {
    using Error::Error;
};

// Internal invariant breach; indicates a bug, not a caller mistake.
struct InternalError : Error {
    using Error::Error;
};

namespace detail {

// Always-on invariant check; never compiled out.
inline void require(bool ok, const char *what) {
    if (!ok) throw InternalError(what);
}

}  // namespace detail

}  // namespace rcrt
