#pragma once

#include <stdexcept>
#include <string>

namespace mbg {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed arguments: bad vertex ids, overlapping sets, out-of-range steps.
struct invalid_input : error {
    using error::error;
};

// An exact enumeration would exceed its configured cap. Never silently
// approximated; the caller decides what to do.
struct cap_exceeded : error {
    using error::error;
};

// A documented precondition of an operation does not hold.
struct precondition_failed : error {
    using error::error;
};

// hitting_time: the predicate never becomes true along the process.
struct no_hitting_time : error {
    using error::error;
};

// Verify-and-retry constructions (edge splits, thinning) ran out of retries.
struct retries_exhausted : error {
    using error::error;
};

// A strategy returned an edge that is not free. Names the offender.
struct illegal_move : error {
    using error::error;
};

} // namespace mbg
