#pragma once

#include <stdexcept>
#include <string>

namespace kakeya {

// Bad user input: malformed files, unparsable generator specs.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A depth, fineness or budget cap was hit before the construction finished.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A geometric precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace kakeya
