#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace layerdiff {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One failed invariant of a problem description.
struct Violation {
    std::string constraint;  // e.g. "l_1 < l_2 fails"
    int index = -1;          // layer / interface / breakpoint index, -1 if global
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    ValidationError(const std::string& constraint, int index);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Malformed or incomplete configuration text; `key_path()` names the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string key_path, const std::string& what);
    const std::string& key_path() const noexcept { return key_path_; }

private:
    std::string key_path_;
};

/// Requested feature is outside what the solver supports.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Root finding, quadrature, linear solves, overflow and non-finite values.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace layerdiff
