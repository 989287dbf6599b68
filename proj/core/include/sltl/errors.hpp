#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sltl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column);

    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

/// A formula was handed to an operation outside the fragment it accepts.
class FragmentError : public Error {
public:
    using Error::Error;
};

/// Evaluation against a model that cannot interpret the formula.
class EvalError : public Error {
public:
    using Error::Error;
};

/// A configured search limit fired. `limit` names the limit.
class ResourceError : public Error {
public:
    ResourceError(std::string limit, std::string message)
        : Error(message), limit_(std::move(limit)) {}
    const std::string& limit() const noexcept { return limit_; }

private:
    std::string limit_;
};

/// Malformed model or witness description.
class ModelError : public Error {
public:
    using Error::Error;
};

/// Broken internal invariant; always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace sltl
