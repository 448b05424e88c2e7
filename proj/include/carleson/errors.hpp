#pragma once

#include <stdexcept>
#include <string>

namespace carleson {

// Base of every error raised by the toolkit. `kind()` is the stable name used
// in CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CARLESON_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  };

CARLESON_DEFINE_ERROR(DomainError)
CARLESON_DEFINE_ERROR(NonPositiveMass)
CARLESON_DEFINE_ERROR(DivergentConstant)
CARLESON_DEFINE_ERROR(ZeroInfimum)
CARLESON_DEFINE_ERROR(DegenerateWeight)
CARLESON_DEFINE_ERROR(TruncationTooTight)
CARLESON_DEFINE_ERROR(MissingEnvelope)
CARLESON_DEFINE_ERROR(MomentConditionFailed)
CARLESON_DEFINE_ERROR(ParseError)

#undef CARLESON_DEFINE_ERROR

}  // namespace carleson
