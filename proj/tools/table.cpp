#include "table.hpp"

#include <cmath>
#include <cstdlib>

#include "critline/error.hpp"
#include "json.hpp"

#ifndef CRITLINE_VERSION
#define CRITLINE_VERSION "unknown"
#endif

namespace critline::cli {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ResultTable::ResultTable(std::string command, std::vector<Column> columns)
    : command_(std::move(command)), columns_(std::move(columns)) {}

void ResultTable::param(const std::string& key, const std::string& value) { params_.emplace_back(key, value); }

void ResultTable::params_first(const std::vector<std::pair<std::string, std::string>>& kv) {
    params_.insert(params_.begin(), kv.begin(), kv.end());
}

void ResultTable::add_row(std::vector<double> row) {
    require(row.size() == columns_.size(), ErrorKind::Consistency,
            command_ + ": row has " + std::to_string(row.size()) + " values for " + std::to_string(columns_.size()) +
                " columns");
    for (std::size_t i = 0; i < row.size(); ++i)
        require(!std::isnan(row[i]), ErrorKind::Numeric, command_ + ": NaN in column " + columns_[i].name);
    rows_.push_back(std::move(row));
}

void ResultTable::warn(const std::string& text) { warnings_.push_back(text); }

void ResultTable::verdict(bool pass, const std::string& detail) {
    has_verdict_ = true;
    pass_ = pass;
    detail_ = detail;
}

void ResultTable::write(std::FILE* out, Format fmt) const {
    if (fmt == Format::Json) {
        nlohmann::ordered_json j;
        j["tool"] = "critline";
        j["version"] = CRITLINE_VERSION;
        j["command"] = command_;
        auto& p = j["params"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : params_) p[k] = v;
        auto& cols = j["columns"] = nlohmann::ordered_json::array();
        for (const auto& c : columns_) cols.push_back({{"name", c.name}, {"note", c.note}});
        auto& rows = j["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows_) {
            auto row = nlohmann::ordered_json::array();
            // Round through the 12-digit text form so both formats agree.
            for (double v : r) {
                if (std::isinf(v))
                    row.push_back(v > 0 ? "inf" : "-inf");
                else
                    row.push_back(std::strtod(format_number(v).c_str(), nullptr));
            }
            rows.push_back(std::move(row));
        }
        j["warnings"] = warnings_;
        if (has_verdict_) j["status"] = {{"pass", pass_}, {"detail", detail_}};
        std::fprintf(out, "%s\n", j.dump(2).c_str());
        return;
    }
    std::fprintf(out, "# critline %s %s\n", CRITLINE_VERSION, command_.c_str());
    for (const auto& [k, v] : params_) std::fprintf(out, "# param %s = %s\n", k.c_str(), v.c_str());
    for (const auto& c : columns_) std::fprintf(out, "# column %s: %s\n", c.name.c_str(), c.note.c_str());
    for (const auto& w : warnings_) std::fprintf(out, "# warning: %s\n", w.c_str());
    for (std::size_t i = 0; i < columns_.size(); ++i)
        std::fprintf(out, "%s%s", i ? "\t" : "", columns_[i].name.c_str());
    std::fprintf(out, "\n");
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) std::fprintf(out, "%s%s", i ? "\t" : "", format_number(r[i]).c_str());
        std::fprintf(out, "\n");
    }
    if (has_verdict_) std::fprintf(out, "# status %s %s\n", pass_ ? "PASS" : "FAIL", detail_.c_str());
}

}  // namespace critline::cli
