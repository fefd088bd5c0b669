#pragma once

#include <stdexcept>
#include <string>

namespace gmhbt {

// Base for every error raised by the library. Subclasses name the failure
// kind so callers can dispatch with catch clauses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GMHBT_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

GMHBT_DEFINE_ERROR(MalformedHeader);
GMHBT_DEFINE_ERROR(TruncatedData);
GMHBT_DEFINE_ERROR(IoFailure);
GMHBT_DEFINE_ERROR(NonFiniteValue);
GMHBT_DEFINE_ERROR(InvalidSpec);
GMHBT_DEFINE_ERROR(DegenerateTarget);
GMHBT_DEFINE_ERROR(RankDeficient);
GMHBT_DEFINE_ERROR(InfeasibleConstraint);
GMHBT_DEFINE_ERROR(LengthMismatch);
GMHBT_DEFINE_ERROR(KernelTooLarge);
GMHBT_DEFINE_ERROR(DimensionMismatch);

#undef GMHBT_DEFINE_ERROR

}  // namespace gmhbt
