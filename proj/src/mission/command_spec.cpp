#include "mission/command_spec.hpp"

#include "mission/payload_codec.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <sstream>

namespace nemesys::mission {

double parse_value(ParamRole role, std::string_view text)
{
    if (role == ParamRole::direction) {
        if (text == "cw")
            return kClockwise;
        if (text == "ccw")
            return kCounterClockwise;
    }
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw CommandError(CommandErrorKind::syntax,
                           fmt::format("invalid value '{}' for {}", text, role_option(role)));
    return v;
}

std::string format_value(ParamRole role, double value)
{
    if (role == ParamRole::direction) {
        if (value == kClockwise)
            return "cw";
        if (value == kCounterClockwise)
            return "ccw";
    }
    return fmt::format("{:.10g}", value);
}

std::string format_spec(const MissionCommand& cmd, const QuantTable& table)
{
    std::string out(pattern_name(cmd.pattern));
    const auto& layout = pattern_layout(cmd.pattern);
    for (std::size_t i = 0; i < kParamSlots; ++i) {
        if (!layout[i])
            continue;
        out += fmt::format(" {}={}", role_option(*layout[i]),
                           format_value(*layout[i], table.dequantize(*layout[i], cmd.raw[i])));
    }
    return out;
}

MissionCommand parse_spec(const std::vector<std::string>& tokens, const QuantTable& table)
{
    if (tokens.empty())
        throw CommandError(CommandErrorKind::syntax, "empty command spec");
    const auto pattern = pattern_from_name(tokens.front());
    if (!pattern)
        throw CommandError(CommandErrorKind::unknown_pattern,
                           fmt::format("unknown pattern '{}'", tokens.front()));
    std::map<ParamRole, double> values;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string_view tok = tokens[i];
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos)
            throw CommandError(CommandErrorKind::syntax,
                               fmt::format("expected key=value, got '{}'", tok));
        const auto key = tok.substr(0, eq);
        const auto role = role_from_option(key);
        if (!role)
            throw CommandError(CommandErrorKind::unknown_parameter,
                               fmt::format("unknown parameter '{}'", key));
        if (values.contains(*role))
            throw CommandError(CommandErrorKind::syntax,
                               fmt::format("parameter '{}' given twice", key));
        values[*role] = parse_value(*role, tok.substr(eq + 1));
    }
    return make_command(*pattern, values, table);
}

MissionCommand parse_spec(std::string_view text, const QuantTable& table)
{
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;)
        tokens.push_back(tok);
    return parse_spec(tokens, table);
}

}  // namespace nemesys::mission
