#include "kelly/bench/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace kelly::bench {

std::string format_number(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return {buf.data(), end};
}

CsvTable::CsvTable(std::initializer_list<std::string_view> header) {
    bool first = true;
    for (auto h : header) {
        if (!first) text_ += ',';
        text_ += h;
        first = false;
    }
    text_ += '\n';
}

CsvTable& CsvTable::row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) text_ += ',';
        text_ += format_number(v);
        first = false;
    }
    text_ += '\n';
    return *this;
}

CsvTable& CsvTable::raw_row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) text_ += ',';
        text_ += c;
        first = false;
    }
    text_ += '\n';
    return *this;
}

void CsvTable::write(const std::filesystem::path& file) const {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
    out << text_;
    if (!out) throw std::runtime_error("write failed for " + file.string());
}

}  // namespace kelly::bench
