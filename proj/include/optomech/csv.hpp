#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "optomech/errors.hpp"

namespace optomech {

/// Fixed 12-significant-digit cell formatting. snprintf with the "C" locale
/// keeps the byte stream independent of the host environment, which makes
/// identical runs produce identical files.
[[nodiscard]] inline std::string csv_cell(double v) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.12g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n > 0 ? n : 0));
}

/// One tabular output: named columns of equal length plus a free-form
/// preamble (typically the resolved run configuration) that is emitted as
/// '#'-prefixed comment lines before the header row.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  ///< data[k] belongs to columns[k]
    std::string preamble;                   ///< newline-separated comment text
};

/// Render the table to its on-disk byte representation.
[[nodiscard]] inline std::string csv_render(const CsvTable& table) {
    if (table.columns.size() != table.data.size())
        throw std::invalid_argument("csv: one data vector required per column");
    const std::size_t rows = table.data.empty() ? 0 : table.data.front().size();
    for (const auto& col : table.data)
        if (col.size() != rows) throw std::invalid_argument("csv: ragged columns");

    std::string out;
    std::string_view rest = table.preamble;
    while (!rest.empty()) {
        const std::size_t eol = rest.find('\n');
        const std::string_view line = rest.substr(0, eol);
        out += "# ";
        out += line;
        out += "\n";
        if (eol == std::string_view::npos) break;
        rest.remove_prefix(eol + 1);
    }
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        if (k > 0) out += ",";
        out += table.columns[k];
    }
    out += "\n";
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < table.data.size(); ++k) {
            if (k > 0) out += ",";
            out += csv_cell(table.data[k][i]);
        }
        out += "\n";
    }
    return out;
}

/// Write the rendered table to `path`, failing loudly on I/O errors.
inline void csv_write(const std::string& path, const CsvTable& table) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError(ConfigErrc::io, 0, "cannot open '" + path + "' for writing");
    f << csv_render(table);
    f.flush();
    if (!f) throw ConfigError(ConfigErrc::io, 0, "failed while writing '" + path + "'");
}

}  // namespace optomech
