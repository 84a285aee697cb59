#pragma once

#include <stdexcept>
#include <string>

namespace transmod {

enum class Errc {
  DegenerateContinuum,
  NotDisjoint,
  EmptyInterior,
  OverlappingDisks,
  PreconditionViolated,
  InvalidShape,
  SpacingTooCoarse,
  DisconnectedComplement,
  EmptyEndpointSet,
  NotApplicable,
  DomainError,
  PackingFailed,
  ParseError,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace transmod
