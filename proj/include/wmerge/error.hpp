#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wmerge {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad syntax, unknown names, inconsistent arguments.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public ValidationError {
public:
    ParseError(const std::string& message, std::size_t position)
        : ValidationError(message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownVariableError : public ValidationError {
public:
    explicit UnknownVariableError(const std::string& name)
        : ValidationError("unknown variable '" + name + "'"), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// The distance from a model to an unsatisfiable formula is undefined.
class InconsistentFormulaError : public ValidationError {
public:
    explicit InconsistentFormulaError(const std::string& what, std::size_t index = npos)
        : ValidationError(what), index_(index) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Profile position of the offending formula, or npos when not applicable.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// A configurable size guard was exceeded (enumeration, elimination).
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

}  // namespace wmerge
