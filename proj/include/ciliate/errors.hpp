#pragma once

#include <stdexcept>
#include <string>

namespace ciliate {

/// Malformed textual input (pointer strings, arrangements, JSON).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A pointer sequence that violates the two-occurrence condition.
struct not_legal_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation that needs a realistic string or overlap graph got something else.
struct not_realistic_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive search was asked to run above its configured size cap.
struct cap_exceeded_error : std::length_error {
    using std::length_error::length_error;
};

/// A structural invariant of a constructed object does not hold.
struct invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace ciliate
