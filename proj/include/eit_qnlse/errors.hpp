#pragma once

#include <stdexcept>
#include <string>

namespace eitq {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Bad input: invalid parameters, malformed config, violated preconditions.
// The CLI maps these to exit code 2.
class ParameterError : public Error
{
public:
    using Error::Error;
};

class ConfigError : public ParameterError
{
public:
    ConfigError(const std::string& source, int line, const std::string& field,
                const std::string& what)
        : ParameterError(source + ":" + std::to_string(line) +
                         (field.empty() ? "" : ": field '" + field + "'") +
                         ": " + what),
          m_line(line), m_field(field)
    {
    }

    int line() const { return m_line; }
    const std::string& field() const { return m_field; }

private:
    int m_line;
    std::string m_field;
};

class UnitError : public ConfigError
{
public:
    using ConfigError::ConfigError;
};

class InvariantError : public ParameterError
{
public:
    using ParameterError::ParameterError;
};

// Numerical failure on valid input. CLI exit code 3.
class NumericError : public Error
{
public:
    using Error::Error;
};

class PoleError : public NumericError
{
public:
    using NumericError::NumericError;
};

class RegimeError : public NumericError
{
public:
    using NumericError::NumericError;
};

class SingularSystemError : public NumericError
{
public:
    SingularSystemError(const std::string& what, double condition_number)
        : NumericError(what + " (condition number " +
                       std::to_string(condition_number) + ")"),
          m_condition(condition_number)
    {
    }
    double condition_number() const { return m_condition; }

private:
    double m_condition;
};

class FitInstabilityError : public NumericError
{
public:
    using NumericError::NumericError;
};

class NoSolutionError : public NumericError
{
public:
    using NumericError::NumericError;
};

class ConvergenceError : public NumericError
{
public:
    using NumericError::NumericError;
};

} // namespace eitq
