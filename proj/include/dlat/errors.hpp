#pragma once

#include <stdexcept>
#include <string>

namespace dlat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* name() const noexcept { return "Error"; }
};

#define DLAT_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    using Error::Error;                                          \
    const char* name() const noexcept override { return #Name; } \
  };

DLAT_DEFINE_ERROR(CycleError)
DLAT_DEFINE_ERROR(DuplicateLabelError)
DLAT_DEFINE_ERROR(NotComparableError)
DLAT_DEFINE_ERROR(NotOrderPreservingError)
DLAT_DEFINE_ERROR(OrderAxiomError)
DLAT_DEFINE_ERROR(NotPrimePowerError)
DLAT_DEFINE_ERROR(SizeLimitError)
DLAT_DEFINE_ERROR(DegenerateFormError)
DLAT_DEFINE_ERROR(NonReflexiveError)
DLAT_DEFINE_ERROR(UnsupportedFormError)
DLAT_DEFINE_ERROR(ParseError)
DLAT_DEFINE_ERROR(UnboundedError)
DLAT_DEFINE_ERROR(UnknownElementError)
DLAT_DEFINE_ERROR(BudgetExceededError)
DLAT_DEFINE_ERROR(MissingFiberError)
DLAT_DEFINE_ERROR(UnknownIdentityError)
DLAT_DEFINE_ERROR(IOError)
// internal consistency failure (a checked invariant did not hold)
DLAT_DEFINE_ERROR(InvariantError)

#undef DLAT_DEFINE_ERROR

}  // namespace dlat
