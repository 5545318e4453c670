#pragma once

#include <stdexcept>

namespace congruent {

// Precondition violations: input outside an operation's stated domain.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Asked for a square root of a nonresidue.
struct no_root_error : domain_error {
    using domain_error::domain_error;
};

// Two paths that must agree by theorem disagreed: an implementation bug,
// never a math failure.
struct internal_inconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : io_error {
    using io_error::io_error;
};

struct config_error : io_error {
    using io_error::io_error;
};

}  // namespace congruent
