#pragma once

#include <boost/property_tree/ptree.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace nemesys::config {

/// Environment variable naming a directory of config files that override
/// the shipped copies compiled into the library.
inline constexpr const char* kConfigDirEnv = "NEMESYS_CONFIG_DIR";

/// Text of a config file compiled into the library, e.g. "quantization.ini".
/// Throws std::out_of_range for unknown names.
std::string_view shipped_text(std::string_view name);

/// Config directory from the environment, if set.
std::optional<std::filesystem::path> directory_from_env();

/// Text of `name` from `dir` if given and the file exists, otherwise from
/// $NEMESYS_CONFIG_DIR, otherwise the shipped copy.
std::string load_text(std::string_view name, const std::optional<std::filesystem::path>& dir = {});

/// Read a whole file. Throws std::runtime_error if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Parse INI text. Throws std::runtime_error with the parser message.
boost::property_tree::ptree parse_ini(std::string_view text);

}  // namespace nemesys::config
