#pragma once

#include <stdexcept>
#include <string>

namespace cuckoo {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Parameter combination the analysis does not cover (e.g. k + ell <= 4).
class UnsupportedCase : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// c lies at or below the core appearance point, so beta(c) does not exist.
class NoSupercriticalSolution : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Root bracketing / minimization did not meet its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Least-squares data without a transition to locate (all rates 0 or all 1).
class DegenerateFit : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace cuckoo
