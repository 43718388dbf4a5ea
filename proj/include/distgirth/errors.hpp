#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace distgirth {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (n = 0, p outside (0,1), ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// An enumeration or materialization would exceed a configured size guard.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Malformed DIMACS or JSON input. `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Raised by family_girth_reduction when a forbidden graph has no cycle.
class ForestError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

} // namespace distgirth
