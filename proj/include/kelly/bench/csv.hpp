#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

namespace kelly::bench {

/// 17 significant digits, '.' separator, locale independent.
std::string format_number(double value);

/// Builds a CSV document in memory with '\n' line endings.
class CsvTable {
public:
    explicit CsvTable(std::initializer_list<std::string_view> header);

    CsvTable& row(std::initializer_list<double> values);
    /// Row of pre-formatted cells (text columns).
    CsvTable& raw_row(std::initializer_list<std::string> cells);

    [[nodiscard]] const std::string& text() const { return text_; }
    void write(const std::filesystem::path& file) const;

private:
    std::string text_;
};

}  // namespace kelly::bench
