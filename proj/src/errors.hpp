#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

// Invalid argument or violated precondition.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed input document (JSON schema or syntax).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative routine failed to converge or a solve broke down.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An embedded invariant failed while producing output.
struct assertion_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction bug: inputs that the library itself produced are inconsistent.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace conelab
