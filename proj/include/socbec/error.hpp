#pragma once

#include <stdexcept>
#include <string>

namespace socbec {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments or configuration. `key()` names the offending setting
/// when the error comes from a configuration document.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::string key = {})
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// A numerical procedure failed (non-convergence, NaN, broken invariant).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The periodic-boundary density guard tripped.
class GuardError : public Error {
public:
    using Error::Error;
};

} // namespace socbec
