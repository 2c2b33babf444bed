#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skd {

enum class ErrorKind {
    InvalidMatrix,
    NumericalFailure,
    DegenerateSpectrum,
    InvalidThreshold,
    InvalidRank,
    InvalidConfig,
    InvalidSequence,
    CorruptCheckpoint,
    ShapeError,
    InsufficientData,
    UnreachableTarget,
    ScheduleMismatch,
    InvalidSparsity,
    InvalidK,
    CorruptCache,
    CacheMismatch,
    InvalidTeacher,
    InvalidFraction,
    Io,
    Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// CLI exit code for an error: 1 usage, 2 data, 3 numerical.
int exit_code(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace skd
