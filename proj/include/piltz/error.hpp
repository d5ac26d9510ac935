#pragma once

#include <stdexcept>
#include <string>

namespace piltz {

/// Argument outside an operation's domain (k = 0, lo = 0, h > X/8, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Query beyond what the loaded summatory checkpoints cover.
class CoverageError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Exact integer arithmetic would overflow its type.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A result failed an independent re-check; always an implementation bug
/// or a precision failure, never a user error.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure could not reach its requested tolerance.
class ToleranceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace piltz
