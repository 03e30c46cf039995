#pragma once

#include <stdexcept>
#include <string>

namespace rose {

/// Bad input: malformed, out of domain, or violating a type invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solver hit its iteration cap before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rose
