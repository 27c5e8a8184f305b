#pragma once

#include <stdexcept>
#include <string>

namespace bgeom {

/// Base of every error raised by the library. Each derived type names one
/// failure condition so callers can catch exactly what they handle.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BGEOM_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

BGEOM_DEFINE_ERROR(DegeneratePresentation);
BGEOM_DEFINE_ERROR(BadExponent);
BGEOM_DEFINE_ERROR(DimensionMismatch);
BGEOM_DEFINE_ERROR(NotPolytopal);
BGEOM_DEFINE_ERROR(Infeasible);
BGEOM_DEFINE_ERROR(EmptySlice);
BGEOM_DEFINE_ERROR(EmptyRegion);
BGEOM_DEFINE_ERROR(RegionTooThin);
BGEOM_DEFINE_ERROR(NotInDualBall);
BGEOM_DEFINE_ERROR(BadIndex);
BGEOM_DEFINE_ERROR(UnsupportedFormula);
BGEOM_DEFINE_ERROR(ParseError);
BGEOM_DEFINE_ERROR(NumericalFailure);
BGEOM_DEFINE_ERROR(TooLarge);

#undef BGEOM_DEFINE_ERROR

}  // namespace bgeom
