#pragma once

#include <stdexcept>
#include <string>

namespace gpeval {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GPEVAL_DEFINE_ERROR(Name)              \
    class Name : public Error {                \
    public:                                    \
        using Error::Error;                    \
    }

// kernel / config domains
GPEVAL_DEFINE_ERROR(DomainError);
GPEVAL_DEFINE_ERROR(DimensionMismatch);

// linear algebra
GPEVAL_DEFINE_ERROR(CholeskyFailure);
GPEVAL_DEFINE_ERROR(AsymmetryError);

// simulation and regression
GPEVAL_DEFINE_ERROR(InfeasibleSparsity);
GPEVAL_DEFINE_ERROR(EmptyObservations);

// autoregressive models
GPEVAL_DEFINE_ERROR(SeriesTooShort);
GPEVAL_DEFINE_ERROR(StateMismatch);
GPEVAL_DEFINE_ERROR(SingularToeplitz);
GPEVAL_DEFINE_ERROR(NonFiniteObjective);
GPEVAL_DEFINE_ERROR(OptimizerFailure);

// evaluation
GPEVAL_DEFINE_ERROR(LengthMismatch);
GPEVAL_DEFINE_ERROR(NoEvaluablePoints);

// I/O and configuration
GPEVAL_DEFINE_ERROR(ParseError);
GPEVAL_DEFINE_ERROR(ValidationError);
GPEVAL_DEFINE_ERROR(NonMonotonicTime);
GPEVAL_DEFINE_ERROR(IoError);

#undef GPEVAL_DEFINE_ERROR

}  // namespace gpeval
