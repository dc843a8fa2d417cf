#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcx {

/// Every failure raised by the library derives from this type; `kind()` names
/// the contract that was violated so that callers (the CLI in particular) can
/// map it to a stage or exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, const std::string& what)
      : std::runtime_error(std::string(kind) + ": " + what), kind_(kind) {}

  std::string_view kind() const noexcept { return kind_; }

 private:
  std::string_view kind_;
};

#define PCX_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  }

PCX_DEFINE_ERROR(DivisionByZero);
PCX_DEFINE_ERROR(DescriptorMismatch);
PCX_DEFINE_ERROR(InfiniteField);
PCX_DEFINE_ERROR(InvalidField);
PCX_DEFINE_ERROR(ParseError);
PCX_DEFINE_ERROR(CommonComponent);
PCX_DEFINE_ERROR(InfiniteMultiplicity);
PCX_DEFINE_ERROR(CenterNotInChart);
PCX_DEFINE_ERROR(CurveContainsChartImage);
PCX_DEFINE_ERROR(NotContractible);
PCX_DEFINE_ERROR(DegenerateParameters);
PCX_DEFINE_ERROR(FactorizationMismatch);
PCX_DEFINE_ERROR(NotUnique);
PCX_DEFINE_ERROR(Reducible);
PCX_DEFINE_ERROR(CriterionMismatch);

#undef PCX_DEFINE_ERROR

}  // namespace pcx
