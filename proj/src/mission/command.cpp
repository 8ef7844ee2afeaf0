#include "mission/command.hpp"

#include <algorithm>

namespace nemesys::mission {

namespace {

using R = ParamRole;

constexpr std::array<SlotLayout, 8> kLayouts = {{
    // straight
    {R::cruise_speed, R::target_depth, R::duration, R::heading, std::nullopt, std::nullopt},
    // square
    {R::cruise_speed, R::target_depth, R::side_span, R::direction, std::nullopt, std::nullopt},
    // lawnmower
    {R::cruise_speed, R::target_depth, R::grid_width, R::grid_height, R::laps, std::nullopt},
    // circle
    {R::cruise_speed, R::target_depth, R::radius, R::direction, std::nullopt, std::nullopt},
    // spiral
    {R::cruise_speed, R::target_depth, R::initial_radius, R::final_radius, R::loops, R::direction},
    // helix
    {R::cruise_speed, R::start_depth, R::end_depth, R::radius, R::turns, R::direction},
    // hover
    {R::duration, R::target_depth, R::heading, std::nullopt, std::nullopt, std::nullopt},
    // box_orbit
    {R::cruise_speed, R::target_depth, R::radius, R::direction, R::laps, std::nullopt},
}};

constexpr std::array<std::string_view, 8> kPatternNames = {
    "straight", "square", "lawnmower", "circle", "spiral", "helix", "hover", "box_orbit",
};

struct RoleNames {
    std::string_view key;
    std::string_view option;
};

constexpr std::array<RoleNames, kRoleCount> kRoleNames = {{
    {"cruise_speed", "speed"},
    {"target_depth", "depth"},
    {"start_depth", "start_depth"},
    {"end_depth", "end_depth"},
    {"duration", "duration"},
    {"heading", "heading"},
    {"side_span", "side"},
    {"grid_width", "width"},
    {"grid_height", "height"},
    {"radius", "radius"},
    {"initial_radius", "initial_radius"},
    {"final_radius", "final_radius"},
    {"direction", "dir"},
    {"laps", "laps"},
    {"loops", "loops"},
    {"turns", "turns"},
}};

std::string normalized(std::string_view s)
{
    std::string out(s);
    std::replace(out.begin(), out.end(), '-', '_');
    return out;
}

}  // namespace

const SlotLayout& pattern_layout(PatternType p)
{
    return kLayouts[static_cast<std::size_t>(p)];
}

std::string_view pattern_name(PatternType p)
{
    return kPatternNames[static_cast<std::size_t>(p)];
}

std::optional<PatternType> pattern_from_name(std::string_view name)
{
    const auto n = normalized(name);
    for (std::size_t i = 0; i < kPatternNames.size(); ++i)
        if (kPatternNames[i] == n)
            return static_cast<PatternType>(i);
    return std::nullopt;
}

std::optional<PatternType> pattern_from_id(unsigned id)
{
    if (id < kPatternNames.size())
        return static_cast<PatternType>(id);
    return std::nullopt;
}

std::string_view role_key(ParamRole r)
{
    return kRoleNames[static_cast<std::size_t>(r)].key;
}

std::optional<ParamRole> role_from_key(std::string_view key)
{
    for (std::size_t i = 0; i < kRoleNames.size(); ++i)
        if (kRoleNames[i].key == key)
            return static_cast<ParamRole>(i);
    return std::nullopt;
}

std::string_view role_option(ParamRole r)
{
    return kRoleNames[static_cast<std::size_t>(r)].option;
}

std::optional<ParamRole> role_from_option(std::string_view name)
{
    const auto n = normalized(name);
    for (std::size_t i = 0; i < kRoleNames.size(); ++i)
        if (kRoleNames[i].option == n)
            return static_cast<ParamRole>(i);
    return std::nullopt;
}

std::optional<std::size_t> MissionCommand::slot_of(ParamRole role) const
{
    const auto& layout = pattern_layout(pattern);
    for (std::size_t i = 0; i < layout.size(); ++i)
        if (layout[i] == role)
            return i;
    return std::nullopt;
}

const char* to_string(CommandErrorKind k)
{
    switch (k) {
    case CommandErrorKind::unknown_pattern: return "unknown_pattern";
    case CommandErrorKind::malformed: return "malformed";
    case CommandErrorKind::out_of_range: return "out_of_range";
    case CommandErrorKind::missing_parameter: return "missing_parameter";
    case CommandErrorKind::unknown_parameter: return "unknown_parameter";
    case CommandErrorKind::bad_length: return "bad_length";
    case CommandErrorKind::table_version: return "table_version";
    case CommandErrorKind::syntax: return "syntax";
    }
    return "unknown";
}

}  // namespace nemesys::mission
