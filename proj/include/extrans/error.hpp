#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace extrans {

enum class ErrorCode {
  InvalidArgument,
  EmptyGeneratorSet,
  NotFiniteIndex,
  DimensionLimit,
  NotUpwardClosed,
  ExtendedVectorOutsideSupport,
  NonSimplicial,
  NotPureFullDimensional,
  BijectionFailure,
  NonvanishingAboveCap,
  CenterNotCone,
  CenterMeetsExtendedSet,
  OmegaOnWall,
  ChamberChanged,
  InconsistentOnSharedFace,
  UnboundedPolytope,
  NoCommonWall,
  ValidationFailed,
  ParseError,
  SchemaError,
  UnknownPreset,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// the CLI can map it onto an exit status and a report error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace extrans
