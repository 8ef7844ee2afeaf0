#pragma once

#include "mission/command.hpp"
#include "mission/quant_table.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace nemesys::mission {

/// Human-readable command spec: "<pattern> key=value ...", e.g.
///   square speed=0.5 depth=0.5 side=10 dir=ccw
/// Keys are the role option names; dir takes cw/ccw. Values printed are the
/// quantized physical values, so format -> parse is exact on raw slots.
std::string format_spec(const MissionCommand& cmd, const QuantTable& table);

/// Throws CommandError (syntax, unknown_pattern, unknown_parameter,
/// missing_parameter, out_of_range).
MissionCommand parse_spec(std::string_view text, const QuantTable& table);
MissionCommand parse_spec(const std::vector<std::string>& tokens, const QuantTable& table);

/// Parse a single value for a role ("ccw" for direction, numbers otherwise).
double parse_value(ParamRole role, std::string_view text);
std::string format_value(ParamRole role, double value);

}  // namespace nemesys::mission
