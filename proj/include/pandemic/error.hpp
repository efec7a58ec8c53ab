#pragma once

#include <stdexcept>
#include <string>

namespace pandemic {

// Base of every error raised by the library. The CLI maps ValidationError to
// exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An input violated a documented invariant (bad field, bad path, bad flag).
class ValidationError : public Error {
public:
    using Error::Error;
};

// The integrator produced a non-finite state.
class IntegrationError : public Error {
public:
    using Error::Error;
};

// Phase milestones could not be located on the baseline curve.
class ScheduleError : public Error {
public:
    using Error::Error;
};

// The requested path space is too large for exhaustive enumeration.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Government spending exceeds what the economy produces.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

}  // namespace pandemic
