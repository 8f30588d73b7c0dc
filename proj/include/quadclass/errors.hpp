#pragma once

#include <stdexcept>
#include <string>

namespace quadclass {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments or violated preconditions.
class InputError : public Error {
public:
    using Error::Error;
};

/// Requests outside the imaginary-field setting (for example d >= 0).
class OutOfScopeError : public InputError {
public:
    using InputError::InputError;
};

/// A configured work or size limit was reached.
class ResourceCapError : public Error {
public:
    using Error::Error;
};

/// Two computations that must agree did not. Always a bug or a wrong input certificate.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace quadclass
