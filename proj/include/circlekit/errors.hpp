#pragma once

#include <stdexcept>
#include <string>

namespace circlekit {

// Root of every error the library throws. Each subclass names one failure
// mode so callers (and the CLI exit-code mapping) can dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CIRCLEKIT_ERROR(Name)          \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

CIRCLEKIT_ERROR(DegenerateInput);
CIRCLEKIT_ERROR(DimensionMismatch);
CIRCLEKIT_ERROR(CenterOnCircle);
CIRCLEKIT_ERROR(CenterOnLine);
CIRCLEKIT_ERROR(NotTangent);
CIRCLEKIT_ERROR(PreconditionViolation);
CIRCLEKIT_ERROR(BudgetExceeded);
CIRCLEKIT_ERROR(SurrogateFailed);
CIRCLEKIT_ERROR(TriesExhausted);
CIRCLEKIT_ERROR(SearchFailed);
CIRCLEKIT_ERROR(RadiusNotPositive);
CIRCLEKIT_ERROR(CollisionAfterRotation);
CIRCLEKIT_ERROR(ProviderFailed);
CIRCLEKIT_ERROR(InversionCenterInvalid);
CIRCLEKIT_ERROR(VerificationFailed);
CIRCLEKIT_ERROR(ParseError);
CIRCLEKIT_ERROR(InvalidPath);

#undef CIRCLEKIT_ERROR

}  // namespace circlekit
