#pragma once

#include "link/mission_link.hpp"

#include <json.hpp>

namespace nemesys::link {

/// Link bit rate used for the airtime figure, bit/s.
inline constexpr double kLinkBitRate = 36000.0;

/// Pattern, slot values (raw and physical) and the spec string of a command.
nlohmann::ordered_json command_json(const mission::MissionCommand& cmd, const mission::QuantTable& table);

/// Packet hex plus a field-by-field breakdown: preamble, delimiter, pattern id
/// bits, every slot, padding, parity and guard.
nlohmann::ordered_json encode_report(const MissionLink& link, const mission::MissionCommand& cmd);

/// Disposition, decoded command (when accepted) and FEC details.
nlohmann::ordered_json decode_report(const MissionLink& link, const Reception& rx);

/// Table version, per-role quantization and per-pattern slot layouts.
nlohmann::ordered_json quant_table_json(const mission::QuantTable& table);

}  // namespace nemesys::link
