#pragma once

#include <stdexcept>
#include <string>

namespace lvs {

// Invalid argument or out-of-domain input (negative parameter, non-finite
// state, undefined formula requested).
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A stage or accepted state became non-finite or left the expected region.
class overflow_error : public std::runtime_error {
public:
    overflow_error(const std::string& what, double t) : std::runtime_error(what), time(t) {}
    double time = 0.0;
};

// max_steps exhausted before reaching t_end.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Error control demanded a step below h_min.
class stiffness_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation had no samples to work with (empty band, transient cut past
// the end of a trajectory).
class insufficient_data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lvs
