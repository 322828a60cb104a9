#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace critline::cli {

enum class Format { Tsv, Json };

struct Column {
    std::string name;
    std::string note;
};

/// Numeric result table with a manifest of effective parameters.
class ResultTable {
public:
    ResultTable(std::string command, std::vector<Column> columns);

    void param(const std::string& key, const std::string& value);
    /// Parameters listed ahead of those added so far.
    void params_first(const std::vector<std::pair<std::string, std::string>>& kv);
    void add_row(std::vector<double> row);
    void warn(const std::string& text);
    /// PASS / FAIL verdict for commands that check something.
    void verdict(bool pass, const std::string& detail);

    bool has_verdict() const noexcept { return has_verdict_; }
    bool passed() const noexcept { return pass_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Numbers are printed with 12 significant digits.
    void write(std::FILE* out, Format fmt) const;

private:
    std::string command_;
    std::vector<Column> columns_;
    std::vector<std::pair<std::string, std::string>> params_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::string> warnings_;
    bool has_verdict_ = false;
    bool pass_ = true;
    std::string detail_;
};

std::string format_number(double v);

}  // namespace critline::cli
