#pragma once

#include <stdexcept>
#include <string>

namespace sylsep {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates an operation's precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Input data is well-formed but semantically invalid (bad annotation rows,
/// empty classes, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A file was readable but its contents do not match the expected container.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A matrix factorization failed (not positive-definite, singular, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace sylsep
