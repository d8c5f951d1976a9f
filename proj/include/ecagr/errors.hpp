#pragma once

#include <stdexcept>
#include <string>

namespace ecagr {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad arguments, configuration, or violated domain preconditions.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// File, parse, schema, or data-coverage problems.
class DataError : public Error {
public:
    using Error::Error;
};

/// Numerical failures: singular systems, missing degrees of freedom.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace ecagr
