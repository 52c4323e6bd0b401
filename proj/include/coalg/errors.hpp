#pragma once

#include <stdexcept>
#include <string>

namespace coalg {

// Base class for all domain errors (CLI exit code 1).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input could not be parsed (CLI exit code 2). `pos` is a byte offset
// into the offending source text, or -1 when not applicable.
struct ParseError : std::runtime_error {
    long pos;
    ParseError(const std::string& msg, long position = -1)
        : std::runtime_error(position >= 0 ? msg + " (at position " + std::to_string(position) + ")"
                                           : msg),
          pos(position) {}
};

struct FunctorMismatch : DomainError {
    using DomainError::DomainError;
};

struct NotWellFounded : DomainError {
    using DomainError::DomainError;
};

struct NotWellPointed : DomainError {
    using DomainError::DomainError;
};

struct DecodeError : DomainError {
    using DomainError::DomainError;
};

struct FullExpansionDiverges : DomainError {
    using DomainError::DomainError;
};

struct ResourceLimit : DomainError {
    using DomainError::DomainError;
};

}  // namespace coalg
