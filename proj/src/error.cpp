#include <transmod/error.hpp>

namespace transmod {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DegenerateContinuum: return "DegenerateContinuum";
    case Errc::NotDisjoint: return "NotDisjoint";
    case Errc::EmptyInterior: return "EmptyInterior";
    case Errc::OverlappingDisks: return "OverlappingDisks";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::InvalidShape: return "InvalidShape";
    case Errc::SpacingTooCoarse: return "SpacingTooCoarse";
    case Errc::DisconnectedComplement: return "DisconnectedComplement";
    case Errc::EmptyEndpointSet: return "EmptyEndpointSet";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::DomainError: return "DomainError";
    case Errc::PackingFailed: return "PackingFailed";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace transmod
