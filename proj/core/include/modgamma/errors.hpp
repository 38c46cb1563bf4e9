#pragma once

#include <stdexcept>
#include <string>

namespace modgamma {

// Root of every library error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside the documented domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The numerics could not deliver the requested accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

#define MODGAMMA_ERROR(Name, Base)       \
  class Name : public Base {             \
   public:                               \
    using Base::Base;                    \
  };

MODGAMMA_ERROR(DomainError, ValidationError)
MODGAMMA_ERROR(PoleError, ValidationError)
MODGAMMA_ERROR(UnsupportedParameterError, ValidationError)
MODGAMMA_ERROR(UnsupportedRegimeError, ValidationError)
MODGAMMA_ERROR(UnsupportedKindError, ValidationError)
MODGAMMA_ERROR(RangeError, ValidationError)
MODGAMMA_ERROR(InvalidZoneError, ValidationError)
MODGAMMA_ERROR(ExponentRangeError, ValidationError)
MODGAMMA_ERROR(EmptyBatchError, ValidationError)
MODGAMMA_ERROR(NonGaussianRegimeError, ValidationError)
MODGAMMA_ERROR(NonEvaluableLimitError, ValidationError)

MODGAMMA_ERROR(QuadratureError, NumericalError)
MODGAMMA_ERROR(NonDecayError, NumericalError)
MODGAMMA_ERROR(OverflowError, NumericalError)
MODGAMMA_ERROR(ConvergenceError, NumericalError)
MODGAMMA_ERROR(IdentityMismatchError, NumericalError)

#undef MODGAMMA_ERROR

}  // namespace modgamma
