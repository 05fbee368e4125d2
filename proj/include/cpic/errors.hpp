#pragma once

#include <stdexcept>

namespace cpic {

// Malformed user input: bad text/JSON, p not an odd prime, inseparable polynomial.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input that violates an operation's preconditions,
// and internal identity failures.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cpic
