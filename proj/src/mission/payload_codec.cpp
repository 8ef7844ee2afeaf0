#include "mission/payload_codec.hpp"

#include <fmt/format.h>
#include <stdexcept>

namespace nemesys::mission {

void validate(const MissionCommand& cmd, const QuantTable& table)
{
    const auto& layout = pattern_layout(cmd.pattern);
    for (std::size_t i = 0; i < kParamSlots; ++i) {
        const auto raw = cmd.raw[i];
        if (!layout[i]) {
            if (raw != 0)
                throw CommandError(CommandErrorKind::out_of_range,
                                   fmt::format("slot {} is unused by {} and must be zero", i + 1,
                                               pattern_name(cmd.pattern)),
                                   static_cast<int>(i + 1));
            continue;
        }
        const auto limit = table.at(*layout[i]).raw_max();
        if (raw > limit)
            throw CommandError(CommandErrorKind::out_of_range,
                               fmt::format("slot {} ({}) raw value {} exceeds {}", i + 1,
                                           role_key(*layout[i]), raw, limit),
                               static_cast<int>(i + 1));
    }
}

BitVector encode_command(const MissionCommand& cmd, const QuantTable& table)
{
    validate(cmd, table);
    BitVector bits;
    bits.reserve(kPayloadBits);
    append_bits(bits, static_cast<std::uint64_t>(cmd.pattern), 4);
    for (auto raw : cmd.raw)
        append_bits(bits, raw, 8);
    return bits;
}

MissionCommand decode_payload(BitSpan payload, const QuantTable& table)
{
    if (payload.size() != kPayloadBits)
        throw CommandError(CommandErrorKind::bad_length,
                           fmt::format("payload must be {} bits, got {}", kPayloadBits,
                                       payload.size()));
    const auto id = static_cast<unsigned>(read_bits(payload, 0, 4));
    const auto pattern = pattern_from_id(id);
    if (!pattern)
        throw CommandError(CommandErrorKind::unknown_pattern,
                           fmt::format("pattern id {:04b} is reserved", id));
    MissionCommand cmd;
    cmd.pattern = *pattern;
    for (std::size_t i = 0; i < kParamSlots; ++i)
        cmd.raw[i] = static_cast<std::uint8_t>(read_bits(payload, 4 + 8 * i, 8));
    try {
        validate(cmd, table);
    } catch (const CommandError& e) {
        throw CommandError(CommandErrorKind::malformed, e.what(), e.slot());
    }
    return cmd;
}

MissionCommand make_command(PatternType pattern, const std::map<ParamRole, double>& values,
                            const QuantTable& table)
{
    MissionCommand cmd;
    cmd.pattern = pattern;
    const auto& layout = pattern_layout(pattern);
    for (const auto& [role, value] : values) {
        if (!cmd.slot_of(role))
            throw CommandError(CommandErrorKind::unknown_parameter,
                               fmt::format("{} does not take {}", pattern_name(pattern),
                                           role_option(role)));
    }
    for (std::size_t i = 0; i < kParamSlots; ++i) {
        if (!layout[i])
            continue;
        const auto it = values.find(*layout[i]);
        if (it == values.end())
            throw CommandError(CommandErrorKind::missing_parameter,
                               fmt::format("{} requires {}", pattern_name(pattern),
                                           role_option(*layout[i])),
                               static_cast<int>(i + 1));
        try {
            cmd.raw[i] = table.quantize(*layout[i], it->second);
        } catch (const CommandError& e) {
            throw CommandError(e.kind(), fmt::format("slot {}: {}", i + 1, e.what()),
                               static_cast<int>(i + 1));
        }
    }
    return cmd;
}

double physical(const MissionCommand& cmd, ParamRole role, const QuantTable& table)
{
    const auto slot = cmd.slot_of(role);
    if (!slot)
        throw std::out_of_range(fmt::format("{} has no {} slot", pattern_name(cmd.pattern),
                                            role_key(role)));
    return table.dequantize(role, cmd.raw[*slot]);
}

BitVector to_message_bits(BitSpan payload, std::size_t message_bits)
{
    if (payload.size() > message_bits)
        throw std::invalid_argument("payload longer than FEC message");
    BitVector out(payload.begin(), payload.end());
    out.resize(message_bits, 0);
    return out;
}

BitVector from_message_bits(BitSpan message)
{
    if (message.size() < kPayloadBits)
        throw CommandError(CommandErrorKind::bad_length, "FEC message shorter than payload");
    for (std::size_t i = kPayloadBits; i < message.size(); ++i)
        if (message[i])
            throw CommandError(CommandErrorKind::malformed, "nonzero padding bit after payload");
    return BitVector(message.begin(), message.begin() + kPayloadBits);
}

}  // namespace nemesys::mission
