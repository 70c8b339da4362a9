#pragma once

#include <stdexcept>
#include <string>

namespace symcub {

// Bad user input: NaN entries, shape mismatches, malformed files.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

// A documented precondition of an operation does not hold
// (non-symmetric measure passed to a symmetric-only path, etc).
class PreconditionError : public std::logic_error {
public:
    explicit PreconditionError(const std::string& msg) : std::logic_error(msg) {}
};

// Requested (kernel, measure) pair or feature has no closed form here.
class NotImplementedError : public std::logic_error {
public:
    explicit NotImplementedError(const std::string& msg) : std::logic_error(msg) {}
};

// Factorization breakdown, singular system, severe ill-conditioning.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace symcub
