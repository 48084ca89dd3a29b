#pragma once

#include <stdexcept>
#include <string>

namespace lmfp {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or record. Carries the offending line when known.
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A documented precondition of an operation does not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace lmfp
