#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

// Argument outside the mathematical domain of a function (poles, negative
// orders, alpha outside (0,2], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Inconsistent or out-of-range configuration values.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure did not reach its declared accuracy.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hardy
