#pragma once

#include <stdexcept>
#include <string>

namespace ternexp {

// Input violates an operation's precondition (bad parameters, wrong instance).
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A checked mathematical statement did not hold. Never swallowed.
class verification_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ternexp
