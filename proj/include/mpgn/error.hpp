#pragma once

#include <stdexcept>
#include <string>

namespace mpgn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MPGN_DEFINE_ERROR(Name)                 \
  class Name : public Error {                   \
   public:                                      \
    explicit Name(const std::string& what)      \
        : Error(#Name ": " + what) {}           \
  };

MPGN_DEFINE_ERROR(SingularBasis)
MPGN_DEFINE_ERROR(BudgetExceeded)
MPGN_DEFINE_ERROR(ZeroVector)
MPGN_DEFINE_ERROR(DegenerateVector)
MPGN_DEFINE_ERROR(ZeroGauge)
MPGN_DEFINE_ERROR(InsufficientSamples)
MPGN_DEFINE_ERROR(OutOfDomain)
MPGN_DEFINE_ERROR(BadParams)
MPGN_DEFINE_ERROR(MissingEstimates)
MPGN_DEFINE_ERROR(NotIrrational)

#undef MPGN_DEFINE_ERROR

}  // namespace mpgn
