#pragma once

#include <stdexcept>

namespace mtype {

// Base class for everything this library throws.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad probability vectors, dimension or
// support mismatches, reducible chains.
class invalid_input : public error {
public:
    using error::error;
};

// The requested precision M cannot accommodate the instance (pre-allocation
// exceeds M, M below the support size, or P_M is empty).
class infeasible : public error {
public:
    using error::error;
};

// An exhaustive enumeration would exceed its candidate guard.
class too_large : public error {
public:
    using error::error;
};

// Numeric breakdown: NaN increments or a violated internal invariant.
class numeric_error : public error {
public:
    using error::error;
};

}  // namespace mtype
