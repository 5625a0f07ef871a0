#pragma once

#include <stdexcept>
#include <string>

namespace dcgame {

// Malformed or out-of-range inputs (dimension mismatches, bad parameters).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A solver hit its iteration cap or broke down numerically. Callers get
// this instead of a silently wrong answer.
struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A combinatorial enumeration exceeded the configured cap.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A synthesized portfolio failed the membership check for its channel cone.
// Carries the offending message/prefix so the scheme-model mismatch can be located.
struct SynthesisError : std::runtime_error {
    SynthesisError(const std::string& what, int message, std::string prefix)
        : std::runtime_error(what), message_index(message), prefix_key(std::move(prefix)) {}
    int message_index;
    std::string prefix_key;
};

// Raised when a cost-game transform cannot find a feasible output, i.e. the
// supplied strategy was not a winning strategy for the dual channel.
struct DualityViolation : std::runtime_error {
    DualityViolation(const std::string& what, int step)
        : std::runtime_error(what), step_index(step) {}
    int step_index;
};

}  // namespace dcgame
