#pragma once

#include <stdexcept>
#include <string>

namespace cyclecent {

enum class ErrorKind {
    usage,
    format,
    empty_input,
    argument,
    lookup,
    degenerate,
    undefined,
    internal,
};

/// Base exception for everything the library throws. The kind decides the
/// process exit code used by the command-line tool.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct FormatError : Error {
    explicit FormatError(const std::string& what) : Error(ErrorKind::format, what) {}
};

struct EmptyInputError : Error {
    explicit EmptyInputError(const std::string& what) : Error(ErrorKind::empty_input, what) {}
};

struct ArgumentError : Error {
    explicit ArgumentError(const std::string& what) : Error(ErrorKind::argument, what) {}
};

struct LookupError : Error {
    explicit LookupError(const std::string& what) : Error(ErrorKind::lookup, what) {}
};

/// A class whose death is zero was asked for a ratio scaling, or similar.
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& what) : Error(ErrorKind::degenerate, what) {}
};

struct UndefinedError : Error {
    explicit UndefinedError(const std::string& what) : Error(ErrorKind::undefined, what) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

}  // namespace cyclecent
