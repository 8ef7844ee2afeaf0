#pragma once

#include "common/bits.hpp"
#include "mission/command.hpp"
#include "mission/quant_table.hpp"

#include <map>
#include <string>

namespace nemesys::mission {

/// 4-bit pattern id followed by six 8-bit parameter slots.
inline constexpr std::size_t kPayloadBits = 4 + 8 * kParamSlots;  // 52

/// Checks slot ranges against the table and that unused slots are zero.
/// Throws CommandError(out_of_range) naming the 1-based slot.
void validate(const MissionCommand& cmd, const QuantTable& table);

/// Pattern id (MSB first) then params 1..6 (MSB first). Validates first.
BitVector encode_command(const MissionCommand& cmd, const QuantTable& table);

/// Inverse of encode_command. Throws CommandError with kind bad_length,
/// unknown_pattern (reserved id) or malformed (nonzero unused slot or a raw
/// value outside the role's range).
MissionCommand decode_payload(BitSpan payload, const QuantTable& table);

/// Build a command from physical values keyed by role. Every slot the
/// pattern uses must be given; roles it does not use are rejected.
MissionCommand make_command(PatternType pattern, const std::map<ParamRole, double>& values,
                            const QuantTable& table);

/// Physical value of a role in the command. Throws std::out_of_range if the
/// pattern has no such slot.
double physical(const MissionCommand& cmd, ParamRole role, const QuantTable& table);

/// Pad a payload with trailing zeros to the FEC message length.
BitVector to_message_bits(BitSpan payload, std::size_t message_bits);

/// Strip padding. Throws CommandError(malformed) if a padding bit is set.
BitVector from_message_bits(BitSpan message);

}  // namespace nemesys::mission
