#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace obstructo {

/// Base class for every error raised by the engine. `kind()` is the stable
/// error name used in CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define OBSTRUCTO_ERROR(Name)                                      \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

OBSTRUCTO_ERROR(UnboundParameter);
OBSTRUCTO_ERROR(UnknownParameter);
OBSTRUCTO_ERROR(UnknownSpace);
OBSTRUCTO_ERROR(SpaceMismatch);
OBSTRUCTO_ERROR(NotASubalgebra);
OBSTRUCTO_ERROR(ParameterInBasis);
OBSTRUCTO_ERROR(AlgebraMismatch);
OBSTRUCTO_ERROR(RingMismatch);
OBSTRUCTO_ERROR(TruncationTooSmall);
OBSTRUCTO_ERROR(SingularSystem);
OBSTRUCTO_ERROR(GridTooSmall);
OBSTRUCTO_ERROR(UnassignedGenerator);
OBSTRUCTO_ERROR(IncompatiblePreset);
OBSTRUCTO_ERROR(UnknownSymbol);
OBSTRUCTO_ERROR(InexactDivision);
OBSTRUCTO_ERROR(InvalidArgument);

#undef OBSTRUCTO_ERROR

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error("SyntaxError", what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace obstructo
