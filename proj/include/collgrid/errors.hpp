#pragma once

#include <stdexcept>
#include <string>

namespace collgrid {

// Input exceeds a documented hard cap (isomorphism matcher, state vector, ...).
struct unsupported_size : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// steady_state_overhead: no window ever classifies entirely as the target.
struct no_steady_state : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed pattern/trace document; line is 1-based.
struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

}  // namespace collgrid
