#include "regperc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "regperc/errors.hpp"

namespace regperc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::BadInput, "cannot open for writing: " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw Error(ErrorCode::BadInput, "write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error(ErrorCode::BadInput, "rename failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::BadInput, "cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t CsvTable::column_index(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw Error(ErrorCode::MissingColumn, "no column named '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    return std::strtod(rows[row][col].c_str(), nullptr);
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        if (header) {
            table.columns = fields;
            header = false;
        } else {
            fields.resize(table.columns.size());
            table.rows.push_back(std::move(fields));
        }
    }
    return table;
}

namespace {

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

const char* kPalette[] = {"#1b6ca8", "#c0392b", "#27ae60", "#8e44ad",
                          "#d35400", "#16a085", "#7f8c8d", "#2c3e50"};

} // namespace

std::string render_svg(const PlotSpec& spec, const CsvTable& table) {
    if (table.rows.empty())
        throw Error(ErrorCode::EmptyData, "no data rows in " + spec.input_csv);
    const std::size_t xi = table.column_index(spec.x_column);
    const std::size_t yi = table.column_index(spec.y_column);
    const bool grouped = !spec.group_column.empty();
    const std::size_t gi = grouped ? table.column_index(spec.group_column) : 0;

    // group -> list of (x, y), preserving row order inside each group
    std::map<std::string, std::vector<std::pair<double, double>>> groups;
    std::vector<std::string> group_order;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        std::string key = grouped ? table.rows[r][gi] : std::string("series");
        if (!groups.count(key)) group_order.push_back(key);
        groups[key].emplace_back(table.number(r, xi), table.number(r, yi));
    }
    std::sort(group_order.begin(), group_order.end());

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& [key, pts] : groups)
        for (auto [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;

    const double width = 720, height = 480;
    const double ml = 70, mr = 140, mt = 20, mb = 50;
    auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto sy = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"" << fmt_coord(ml) << "\" y1=\"" << fmt_coord(height - mb)
        << "\" x2=\"" << fmt_coord(width - mr) << "\" y2=\"" << fmt_coord(height - mb)
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt_coord(ml) << "\" y1=\"" << fmt_coord(mt) << "\" x2=\""
        << fmt_coord(ml) << "\" y2=\"" << fmt_coord(height - mb)
        << "\" stroke=\"black\"/>\n";
    // ticks
    const int n_ticks = 6;
    for (int t = 0; t < n_ticks; ++t) {
        double fx = xmin + (xmax - xmin) * t / (n_ticks - 1);
        double fy = ymin + (ymax - ymin) * t / (n_ticks - 1);
        svg << "<line x1=\"" << fmt_coord(sx(fx)) << "\" y1=\"" << fmt_coord(height - mb)
            << "\" x2=\"" << fmt_coord(sx(fx)) << "\" y2=\"" << fmt_coord(height - mb + 5)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt_coord(sx(fx)) << "\" y=\"" << fmt_coord(height - mb + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(fx) << "</text>\n";
        svg << "<line x1=\"" << fmt_coord(ml - 5) << "\" y1=\"" << fmt_coord(sy(fy))
            << "\" x2=\"" << fmt_coord(ml) << "\" y2=\"" << fmt_coord(sy(fy))
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt_coord(ml - 8) << "\" y=\"" << fmt_coord(sy(fy) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_tick(fy) << "</text>\n";
    }
    // axis labels
    svg << "<text x=\"" << fmt_coord((ml + width - mr) / 2) << "\" y=\""
        << fmt_coord(height - 12) << "\" font-size=\"13\" text-anchor=\"middle\">"
        << (spec.x_label.empty() ? spec.x_column : spec.x_label) << "</text>\n";
    svg << "<text x=\"16\" y=\"" << fmt_coord((mt + height - mb) / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fmt_coord((mt + height - mb) / 2) << ")\">"
        << (spec.y_label.empty() ? spec.y_column : spec.y_label) << "</text>\n";

    // polylines + legend
    std::size_t color = 0;
    for (const std::string& key : group_order) {
        const auto& pts = groups[key];
        const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(*kPalette))];
        svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt_coord(sx(pts[i].first)) << ',' << fmt_coord(sy(pts[i].second));
        }
        svg << "\"/>\n";
        double ly = mt + 16 + 18 * static_cast<double>(color);
        svg << "<line x1=\"" << fmt_coord(width - mr + 10) << "\" y1=\"" << fmt_coord(ly)
            << "\" x2=\"" << fmt_coord(width - mr + 34) << "\" y2=\"" << fmt_coord(ly)
            << "\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << fmt_coord(width - mr + 40) << "\" y=\"" << fmt_coord(ly + 4)
            << "\" font-size=\"11\">" << key << "</text>\n";
        ++color;
    }
    svg << "</svg>\n";
    return svg.str();
}

void plot_svg(const PlotSpec& spec) {
    CsvTable table = parse_csv(read_file(spec.input_csv));
    atomic_write(spec.output_path, render_svg(spec, table));
}

} // namespace regperc
