#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kh {

enum class Errc {
  MalformedSyntax,
  EdgeDegreeError,
  OrientationInconsistent,
  AmbiguousOrientation,
  NoMarkedRegion,
  IncoherentRegion,
  RegionNotAdjacent,
  NegativeTwistCount,
  IndexOutOfRange,
  LengthMismatch,
  NotACubeEdge,
  PositionAlreadyOne,
  BudgetExceeded,
  ComplexNotValid,
  AlreadyNormalized,
  EmptyTable,
  ZeroPolynomial,
  InexactDivision,
  UnitMismatch,
  QuarterExponentResidue,
  ModularRankMismatch,
  Overflow,
};

std::string_view errc_name(Errc code) noexcept;

/// All library failures are reported through this one exception type; `code()`
/// identifies the failure class named in the module contracts.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kh
