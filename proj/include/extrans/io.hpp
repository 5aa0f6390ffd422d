#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "extrans/error.hpp"
#include "extrans/transition.hpp"

namespace extrans {

enum class Request { Validate, Fan, Cohomology, Transition };

std::string_view to_string(Request r);

struct BlowupInput {
  std::vector<int> center;
  std::optional<IntVec> weights;
  std::optional<Rational> epsilon;
  bool operator==(const BlowupInput&) const = default;
};

struct InputDocument {
  int torus_rank = 0;
  std::vector<IntVec> characters;
  QVec stability;
  std::optional<IntVec> divisor;
  std::optional<BlowupInput> blowup;
  Request request = Request::Validate;
  bool narrow = false;
  bool sectors = false;
  bool operator==(const InputDocument&) const = default;
};

/// Strict: unknown keys are rejected. Throws ParseError ("line L, column C")
/// and SchemaError naming the key.
InputDocument parse_input(std::string_view text);
/// Canonical JSON, sorted keys, rationals as strings. parse_input inverts it.
std::string serialize_input(const InputDocument& doc);

GitPresentation to_presentation(const InputDocument& doc);
/// SchemaError when divisor or blowup is missing.
TransitionSpec to_spec(const InputDocument& doc);

/// Throws UnknownPreset; SchemaError for bad or unknown parameters.
InputDocument preset(const std::string& name, const std::map<std::string, long>& params = {});
std::vector<std::string> preset_names();

/// 0 clean, 1 validation or input failure, 2 internal error.
int exit_code_for(ErrorCode code);

struct RunResult {
  int exit_code = 0;
  std::string json;  // byte-stable for identical input
  std::string text;  // human-readable summary
};

/// Never throws on library errors; they land in the report.
RunResult run(const InputDocument& doc);

}  // namespace extrans
