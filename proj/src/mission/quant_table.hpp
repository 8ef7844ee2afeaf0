#pragma once

#include "mission/command.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace nemesys::mission {

/// Affine mapping between an 8-bit slot and a physical quantity.
struct Quantization {
    double scale = 1.0;
    double offset = 0.0;
    std::string unit;
    double min = 0.0;
    double max = 255.0;
    /// Range is [min, max) instead of [min, max].
    bool max_exclusive = false;
    /// Raw values that round past 255 wrap modulo 256 (circular quantities).
    bool wrap = false;

    /// Largest raw value whose physical value is in range.
    std::uint8_t raw_max() const;
    bool in_range(double physical) const;
};

/// Versioned role -> quantization table loaded from an INI file.
class QuantTable {
public:
    /// Table version this build encodes and decodes with.
    static constexpr int kVersion = 1;
    static constexpr std::string_view kFileName = "quantization.ini";

    /// Parse INI text. Every role must be present. Throws std::runtime_error
    /// on syntax errors or missing roles.
    static QuantTable parse(std::string_view ini_text);
    static QuantTable load(const std::filesystem::path& path);
    /// The table compiled into the library.
    static const QuantTable& shipped();

    int version() const { return m_version; }
    const Quantization& at(ParamRole role) const { return m_roles[static_cast<std::size_t>(role)]; }

    /// Throws CommandError(table_version) if version() != expected.
    void require_version(int expected = kVersion) const;

    /// raw = round((physical - offset) / scale). Out-of-range values are an
    /// error, never clamped.
    std::uint8_t quantize(ParamRole role, double physical) const;
    double dequantize(ParamRole role, std::uint8_t raw) const;

private:
    int m_version = 0;
    std::array<Quantization, kRoleCount> m_roles{};
};

}  // namespace nemesys::mission
