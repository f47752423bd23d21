#pragma once

#include <string>
#include <vector>

namespace regperc {

// 17 significant digits, locale-independent.
std::string format_double(double v);

// Write via temp file + rename so readers never observe partial output.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(const std::string& name) const; // throws MissingColumn
    double number(std::size_t row, std::size_t col) const;
};

CsvTable parse_csv(const std::string& text);

struct PlotSpec {
    std::string input_csv;
    std::string x_column;
    std::string y_column;
    std::string group_column; // optional: one polyline per distinct value
    std::string x_label;
    std::string y_label;
    std::string output_path;
};

// Standalone SVG: linear axes, tick labels, one polyline per group, legend.
// Deterministic byte output for fixed input.
std::string render_svg(const PlotSpec& spec, const CsvTable& table);

void plot_svg(const PlotSpec& spec);

} // namespace regperc
