#include "mission/quant_table.hpp"

#include "common/config.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace nemesys::mission {

std::uint8_t Quantization::raw_max() const
{
    if (wrap)
        return 255;
    const double r = std::floor((max - offset) / scale + 1e-6);
    if (max_exclusive && std::abs(r * scale + offset - max) < 1e-9 * std::max(1.0, std::abs(max)))
        return static_cast<std::uint8_t>(std::clamp(r - 1.0, 0.0, 255.0));
    return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

bool Quantization::in_range(double physical) const
{
    if (!std::isfinite(physical) || physical < min)
        return false;
    return max_exclusive ? physical < max : physical <= max;
}

QuantTable QuantTable::parse(std::string_view ini_text)
{
    const auto tree = config::parse_ini(ini_text);
    QuantTable t;
    t.m_version = tree.get<int>("table.version", 0);
    if (t.m_version <= 0)
        throw std::runtime_error("quantization table: missing or invalid [table] version");
    for (std::size_t i = 0; i < kRoleCount; ++i) {
        const auto role = static_cast<ParamRole>(i);
        const std::string key(role_key(role));
        const auto section = tree.get_child_optional(key);
        if (!section)
            throw std::runtime_error("quantization table: missing section [" + key + "]");
        Quantization q;
        try {
            q.scale = section->get<double>("scale");
            q.offset = section->get<double>("offset", 0.0);
            q.unit = section->get<std::string>("unit", "");
            q.min = section->get<double>("min", q.offset);
            q.max = section->get<double>("max", q.offset + 255.0 * q.scale);
            q.max_exclusive = section->get<bool>("max_exclusive", false);
            q.wrap = section->get<bool>("wrap", false);
        } catch (const boost::property_tree::ptree_error& e) {
            throw std::runtime_error("quantization table [" + key + "]: " + e.what());
        }
        if (!(q.scale > 0.0))
            throw std::runtime_error("quantization table [" + key + "]: scale must be positive");
        const double top = q.offset + (q.max_exclusive ? 256.0 : 255.0) * q.scale;
        if (q.min < q.offset - 0.5 * q.scale || q.max > top + 0.5 * q.scale || q.min > q.max)
            throw std::runtime_error("quantization table [" + key +
                                     "]: range does not fit in 8 bits");
        t.m_roles[i] = std::move(q);
    }
    return t;
}

QuantTable QuantTable::load(const std::filesystem::path& path)
{
    return parse(config::read_file(path));
}

const QuantTable& QuantTable::shipped()
{
    static const QuantTable table = parse(config::shipped_text(kFileName));
    return table;
}

void QuantTable::require_version(int expected) const
{
    if (m_version != expected)
        throw CommandError(CommandErrorKind::table_version,
                           fmt::format("quantization table version {} does not match expected {}",
                                       m_version, expected));
}

std::uint8_t QuantTable::quantize(ParamRole role, double physical) const
{
    const auto& q = at(role);
    if (!q.in_range(physical))
        throw CommandError(CommandErrorKind::out_of_range,
                           fmt::format("{} = {} {} is outside [{}, {}{}", role_key(role), physical,
                                       q.unit, q.min, q.max, q.max_exclusive ? ")" : "]"));
    auto raw = std::llround((physical - q.offset) / q.scale);
    if (q.wrap)
        raw = ((raw % 256) + 256) % 256;
    if (raw < 0 || raw > q.raw_max())
        throw CommandError(CommandErrorKind::out_of_range,
                           fmt::format("{} = {} {} does not quantize into 8 bits", role_key(role),
                                       physical, q.unit));
    return static_cast<std::uint8_t>(raw);
}

double QuantTable::dequantize(ParamRole role, std::uint8_t raw) const
{
    const auto& q = at(role);
    return raw * q.scale + q.offset;
}

}  // namespace nemesys::mission
