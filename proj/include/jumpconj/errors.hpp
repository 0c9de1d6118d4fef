#pragma once

#include <stdexcept>
#include <string>

namespace jumpconj {

/// Base of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI's JSON error output.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define JUMPCONJ_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                                \
  public:                                                                    \
    explicit Name(const std::string& message) : Error(#Name, message) {}    \
  }

JUMPCONJ_DEFINE_ERROR(ArgumentError);
JUMPCONJ_DEFINE_ERROR(DomainError);
JUMPCONJ_DEFINE_ERROR(RangeError);
JUMPCONJ_DEFINE_ERROR(ParseError);
JUMPCONJ_DEFINE_ERROR(IoError);
JUMPCONJ_DEFINE_ERROR(NotComparable);
JUMPCONJ_DEFINE_ERROR(NotConjugate);
JUMPCONJ_DEFINE_ERROR(OrbitError);
JUMPCONJ_DEFINE_ERROR(DepthExceeded);
JUMPCONJ_DEFINE_ERROR(PinOrderError);
JUMPCONJ_DEFINE_ERROR(InitError);
JUMPCONJ_DEFINE_ERROR(ConstructionDomainError);
JUMPCONJ_DEFINE_ERROR(NonDifferentiableBranch);
JUMPCONJ_DEFINE_ERROR(ScopeError);
JUMPCONJ_DEFINE_ERROR(InvalidMap);

#undef JUMPCONJ_DEFINE_ERROR

}  // namespace jumpconj
