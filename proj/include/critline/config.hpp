#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace critline {

/// Line-oriented `key = value` file; `#` starts a comment.
class KeyValueConfig {
public:
    static KeyValueConfig load(const std::filesystem::path& path);
    static KeyValueConfig parse(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return values_.contains(key); }
    std::optional<std::string> get(const std::string& key) const;
    /// Format error if present but not a finite number.
    double get_double(const std::string& key, double fallback) const;
    const std::map<std::string, std::string>& entries() const noexcept { return values_; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace critline
