#pragma once

#include <stdexcept>
#include <string>

namespace morlax {

// Invalid user-facing configuration (bad config key, malformed file,
// incompatible checkpoint). The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched dimensions between values that should agree (parameter vector
// length vs. spec, objective count vs. trade-off length, ...).
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite value detected during training or evaluation. The CLI maps
// this to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Query outside an operation's mathematical domain (oracle weight out of
// range, metric undefined for the given input).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace morlax
