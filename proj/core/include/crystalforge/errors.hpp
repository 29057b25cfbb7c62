#pragma once

#include <stdexcept>
#include <string>

namespace cf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define CF_DECLARE_ERROR(Name)                                  \
  struct Name : Error {                                         \
    explicit Name(const std::string& what = #Name)              \
        : Error(what) {}                                        \
  }

CF_DECLARE_ERROR(DivisionByZeroFunction);
CF_DECLARE_ERROR(PoleAtPoint);
CF_DECLARE_ERROR(ZeroFunction);
CF_DECLARE_ERROR(ParseError);
CF_DECLARE_ERROR(TermBudgetExceeded);
CF_DECLARE_ERROR(NotInBigCell);
CF_DECLARE_ERROR(NotInCell);
CF_DECLARE_ERROR(NonInvertible);
CF_DECLARE_ERROR(NotReduced);
CF_DECLARE_ERROR(UnsupportedIndex);
CF_DECLARE_ERROR(PatternMismatch);
CF_DECLARE_ERROR(NotSupported);
CF_DECLARE_ERROR(DegenerateGamma);
CF_DECLARE_ERROR(NotCertifiedPositive);
CF_DECLARE_ERROR(Degenerate);

#undef CF_DECLARE_ERROR

}  // namespace cf
