#include "critline/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "critline/error.hpp"

namespace critline {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::Format, "config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

KeyValueConfig KeyValueConfig::parse(const std::string& text, const std::string& origin) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos, ErrorKind::Format,
                origin + ":" + std::to_string(lineno) + ": expected `key = value`");
        const auto key = trim(line.substr(0, eq));
        require(!key.empty(), ErrorKind::Format, origin + ":" + std::to_string(lineno) + ": empty key");
        cfg.values_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(*v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(used == v->size() && std::isfinite(x), ErrorKind::Format, "config: `" + key + "` is not a number");
    return x;
}

}  // namespace critline
