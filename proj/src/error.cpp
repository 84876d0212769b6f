#include "kh/error.hpp"

namespace kh {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedSyntax: return "MalformedSyntax";
    case Errc::EdgeDegreeError: return "EdgeDegreeError";
    case Errc::OrientationInconsistent: return "OrientationInconsistent";
    case Errc::AmbiguousOrientation: return "AmbiguousOrientation";
    case Errc::NoMarkedRegion: return "NoMarkedRegion";
    case Errc::IncoherentRegion: return "IncoherentRegion";
    case Errc::RegionNotAdjacent: return "RegionNotAdjacent";
    case Errc::NegativeTwistCount: return "NegativeTwistCount";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NotACubeEdge: return "NotACubeEdge";
    case Errc::PositionAlreadyOne: return "PositionAlreadyOne";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ComplexNotValid: return "ComplexNotValid";
    case Errc::AlreadyNormalized: return "AlreadyNormalized";
    case Errc::EmptyTable: return "EmptyTable";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::InexactDivision: return "InexactDivision";
    case Errc::UnitMismatch: return "UnitMismatch";
    case Errc::QuarterExponentResidue: return "QuarterExponentResidue";
    case Errc::ModularRankMismatch: return "ModularRankMismatch";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace kh
