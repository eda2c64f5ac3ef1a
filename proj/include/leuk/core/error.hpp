#pragma once

#include <stdexcept>
#include <string>

namespace leuk {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes are inconsistent (matrix/tensor dimensions, image sizes).
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iterative numerical routine hit its iteration limit.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Training diverged or produced non-finite values.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Input data (images, datasets, directories) could not be used.
class DataError : public Error {
public:
    using Error::Error;
};

enum class FormatErrorKind {
    bad_magic,
    unsupported_version,
    truncated,
    checksum_mismatch,
    unsupported_maxval,
    malformed,
};

const char* to_string(FormatErrorKind kind) noexcept;

/// Binary container or image decoding failure; `kind()` tells the cases apart.
class FormatError : public Error {
public:
    FormatError(FormatErrorKind kind, const std::string& what)
        : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    FormatErrorKind kind() const noexcept { return kind_; }

private:
    FormatErrorKind kind_;
};

}  // namespace leuk
