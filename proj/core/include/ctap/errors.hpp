#pragma once

#include <stdexcept>
#include <string>

namespace ctap {

// An iterative routine failed to reach its tolerance; message carries the residual.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A root bracket contained no sign change. Distinct from convergence_error so
// callers can tell "this regime is unresolvable" apart from "needs more iterations".
struct bracket_error : std::runtime_error {
    explicit bracket_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ctap
