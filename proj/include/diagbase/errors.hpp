#pragma once

#include <stdexcept>
#include <string>

namespace diagbase {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration or search would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Input data failed a structural or mathematical invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (wrong top group, composite order, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The requested path exists in principle but is not implemented for this input.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class NotInnerError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string field, const std::string& what)
        : Error("line " + std::to_string(line) + ", field '" + field + "': " + what),
          line_(line),
          field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

}  // namespace diagbase
