#include "link/report.hpp"

#include "mission/command_spec.hpp"
#include "mission/payload_codec.hpp"

#include <fmt/format.h>

namespace nemesys::link {

namespace {

std::string bit_string(BitSpan bits)
{
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits)
        s += b ? '1' : '0';
    return s;
}

}  // namespace

nlohmann::ordered_json command_json(const mission::MissionCommand& cmd, const mission::QuantTable& table)
{
    nlohmann::ordered_json j;
    j["pattern"] = mission::pattern_name(cmd.pattern);
    j["id"] = static_cast<unsigned>(cmd.pattern);
    j["spec"] = mission::format_spec(cmd, table);
    auto params = nlohmann::ordered_json::object();
    const auto& layout = mission::pattern_layout(cmd.pattern);
    for (std::size_t i = 0; i < mission::kParamSlots; ++i)
        if (layout[i]) {
            const auto role = *layout[i];
            params[std::string(mission::role_option(role))] = table.dequantize(role, cmd.raw[i]);
        }
    j["params"] = params;
    j["raw"] = cmd.raw;
    return j;
}

nlohmann::ordered_json encode_report(const MissionLink& link, const mission::MissionCommand& cmd)
{
    const auto& table = link.table();
    const auto payload = mission::encode_command(cmd, table);
    const auto message = mission::to_message_bits(payload, link.code().k());
    const auto codeword = link.code().encode(message);
    const auto packet = frame(codeword);

    nlohmann::ordered_json j;
    j["packet_hex"] = packet_to_hex(packet);
    j["command"] = command_json(cmd, table);
    j["packet_bits"] = packet.size();
    j["airtime_ms"] = 1000.0 * static_cast<double>(packet.size()) / kLinkBitRate;

    auto fields = nlohmann::ordered_json::array();
    std::size_t at = 0;
    const auto add = [&](std::string name, std::size_t width, nlohmann::ordered_json extra = {}) {
        nlohmann::ordered_json f;
        f["field"] = std::move(name);
        f["offset"] = at;
        f["bits"] = bit_string(BitSpan(packet).subspan(at, width));
        if (!extra.is_null())
            f.update(extra);
        fields.push_back(std::move(f));
        at += width;
    };
    add("preamble", kPreamble.size());
    add("delimiter", kDelimiter.size());
    add("pattern_id", 4, {{"value", static_cast<unsigned>(cmd.pattern)}, {"name", mission::pattern_name(cmd.pattern)}});
    const auto& layout = mission::pattern_layout(cmd.pattern);
    for (std::size_t i = 0; i < mission::kParamSlots; ++i) {
        nlohmann::ordered_json extra{{"slot", i + 1}, {"raw", cmd.raw[i]}};
        if (layout[i]) {
            const auto role = *layout[i];
            extra["name"] = mission::role_option(role);
            extra["value"] = table.dequantize(role, cmd.raw[i]);
            extra["unit"] = table.at(role).unit;
        } else {
            extra["name"] = "n/a";
        }
        add(fmt::format("param{}", i + 1), 8, extra);
    }
    add("padding", link.code().k() - payload.size());
    add("parity", link.code().parity_bits());
    add("guard", kGuard.size());
    j["fields"] = fields;
    return j;
}

nlohmann::ordered_json decode_report(const MissionLink& link, const Reception& rx)
{
    nlohmann::ordered_json j;
    j["disposition"] = disposition_code(rx.disposition);
    j["command"] = rx.command ? command_json(*rx.command, link.table()) : nlohmann::ordered_json();
    j["offset"] = rx.offset ? nlohmann::ordered_json(*rx.offset) : nlohmann::ordered_json();
    j["corrected_positions"] = rx.corrected_positions;
    j["candidates"] = rx.candidates;
    j["reason"] = rx.reason;
    return j;
}

nlohmann::ordered_json quant_table_json(const mission::QuantTable& table)
{
    nlohmann::ordered_json j;
    j["version"] = table.version();
    auto roles = nlohmann::ordered_json::object();
    for (std::size_t r = 0; r < mission::kRoleCount; ++r) {
        const auto role = static_cast<mission::ParamRole>(r);
        const auto& q = table.at(role);
        roles[std::string(mission::role_option(role))] = {
            {"key", mission::role_key(role)}, {"scale", q.scale},   {"offset", q.offset},
            {"unit", q.unit},                 {"min", q.min},       {"max", q.max},
            {"max_exclusive", q.max_exclusive}, {"wrap", q.wrap},   {"raw_max", q.raw_max()},
        };
    }
    j["roles"] = roles;
    auto patterns = nlohmann::ordered_json::object();
    for (auto p : mission::kAllPatterns) {
        auto slots = nlohmann::ordered_json::array();
        for (const auto& role : mission::pattern_layout(p))
            slots.push_back(role ? nlohmann::ordered_json(mission::role_option(*role)) : nlohmann::ordered_json());
        patterns[std::string(mission::pattern_name(p))] = {{"id", static_cast<unsigned>(p)}, {"slots", slots}};
    }
    j["patterns"] = patterns;
    return j;
}

}  // namespace nemesys::link
