#pragma once

#include <stdexcept>
#include <string>

namespace plate_modes {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// evaluation exactly at (or numerically on top of) a tan singularity
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ExistenceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegeneratePlate : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularDerivative : std::domain_error {
    using std::domain_error::domain_error;
};

struct IntegrationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace plate_modes
