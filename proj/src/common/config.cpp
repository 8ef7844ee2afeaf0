#include "common/config.hpp"

#include "shipped_configs.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nemesys::config {

std::string_view shipped_text(std::string_view name)
{
    for (const auto& f : shipped::kConfigFiles)
        if (f.name == name)
            return f.text;
    throw std::out_of_range("no shipped config named '" + std::string(name) + "'");
}

std::optional<std::filesystem::path> directory_from_env()
{
    if (const char* dir = std::getenv(kConfigDirEnv); dir != nullptr && *dir != '\0')
        return std::filesystem::path(dir);
    return std::nullopt;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string load_text(std::string_view name, const std::optional<std::filesystem::path>& dir)
{
    for (const auto& d : {dir, directory_from_env()}) {
        if (!d)
            continue;
        const auto candidate = *d / std::string(name);
        if (std::filesystem::exists(candidate))
            return read_file(candidate);
    }
    return std::string(shipped_text(name));
}

boost::property_tree::ptree parse_ini(std::string_view text)
{
    boost::property_tree::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw std::runtime_error("config parse error: " + std::string(e.what()));
    }
    return tree;
}

}  // namespace nemesys::config
