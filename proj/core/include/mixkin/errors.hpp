#ifndef MIXKIN_ERRORS_HPP
#define MIXKIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mixkin {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or precondition violation detectable before any
/// numerics run (bad grid sizes, malformed config files, unknown keys).
/// The CLI maps this to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Failure detected while the solver is running (non-positive density,
/// negative temperature, singular moment system, non-finite state).
/// The CLI maps this to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace mixkin

#endif
