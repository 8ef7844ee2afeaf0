#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nemesys::mission {

/// Pattern identifiers of the command dictionary. Ids 8..15 are reserved.
enum class PatternType : std::uint8_t {
    straight = 0b0000,
    square = 0b0001,
    lawnmower = 0b0010,
    circle = 0b0011,
    spiral = 0b0100,
    helix = 0b0101,
    hover = 0b0110,
    box_orbit = 0b0111,
};

inline constexpr std::array<PatternType, 8> kAllPatterns = {
    PatternType::straight, PatternType::square, PatternType::lawnmower, PatternType::circle,
    PatternType::spiral,   PatternType::helix,  PatternType::hover,     PatternType::box_orbit,
};

/// Physical meaning of an 8-bit parameter slot.
enum class ParamRole : std::uint8_t {
    cruise_speed,
    target_depth,
    start_depth,
    end_depth,
    duration,
    heading,
    side_span,
    grid_width,
    grid_height,
    radius,
    initial_radius,
    final_radius,
    direction,
    laps,
    loops,
    turns,
};

inline constexpr std::size_t kRoleCount = 16;
inline constexpr std::size_t kParamSlots = 6;

/// Slot roles for a pattern; std::nullopt marks an unused ("N/A") slot.
using SlotLayout = std::array<std::optional<ParamRole>, kParamSlots>;

const SlotLayout& pattern_layout(PatternType p);

std::string_view pattern_name(PatternType p);
/// Accepts the canonical name ("box_orbit") and a hyphenated variant.
std::optional<PatternType> pattern_from_name(std::string_view name);
/// std::nullopt for reserved ids.
std::optional<PatternType> pattern_from_id(unsigned id);

/// Key used in config files ("cruise_speed").
std::string_view role_key(ParamRole r);
std::optional<ParamRole> role_from_key(std::string_view key);
/// Short option name used by command specs ("speed", "depth", "dir").
std::string_view role_option(ParamRole r);
std::optional<ParamRole> role_from_option(std::string_view name);

/// Direction slot values.
inline constexpr std::uint8_t kClockwise = 0;
inline constexpr std::uint8_t kCounterClockwise = 1;

/// A pattern plus six raw 8-bit parameter slots.
struct MissionCommand {
    PatternType pattern = PatternType::straight;
    std::array<std::uint8_t, kParamSlots> raw{};

    /// Slot index holding `role`, or std::nullopt if the pattern does not use it.
    std::optional<std::size_t> slot_of(ParamRole role) const;

    friend bool operator==(const MissionCommand&, const MissionCommand&) = default;
};

enum class CommandErrorKind {
    unknown_pattern,
    malformed,
    out_of_range,
    missing_parameter,
    unknown_parameter,
    bad_length,
    table_version,
    syntax,
};

const char* to_string(CommandErrorKind k);

class CommandError : public std::runtime_error {
public:
    CommandError(CommandErrorKind kind, std::string what, int slot = -1)
        : std::runtime_error(std::move(what)), m_kind(kind), m_slot(slot)
    {
    }
    CommandErrorKind kind() const { return m_kind; }
    /// Offending 1-based slot, or -1.
    int slot() const { return m_slot; }

private:
    CommandErrorKind m_kind;
    int m_slot;
};

}  // namespace nemesys::mission
