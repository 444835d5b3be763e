#pragma once

#include <stdexcept>
#include <string>

namespace ktheory {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Two operands live over different primes or prime spots.
class PrimeMismatch : public Error {
public:
    using Error::Error;
};

/// A pair of maps whose composite is nonzero was handed to a homology routine.
class NotAComplex : public Error {
public:
    using Error::Error;
};

/// Input is well-formed but violates a precondition of the requested operation.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input; `pointer` is a JSON pointer into the document.
class SchemaError : public Error {
public:
    SchemaError(std::string pointer, const std::string& what)
        : Error(pointer.empty() ? what : pointer + ": " + what), pointer_(std::move(pointer)), message_(what) {}

    const std::string& pointer() const noexcept { return pointer_; }
    /// The message without the pointer prefix.
    const std::string& message() const noexcept { return message_; }

private:
    std::string pointer_;
    std::string message_;
};

} // namespace ktheory
