#include "fdd2d/results.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fdd2d {
namespace {

std::string fmt9(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<std::string> split_commas(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double to_double(const std::string& s)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw std::runtime_error("results CSV: bad number '" + s + "'");
    }
    return v;
}

}  // namespace

std::vector<ResultRow> ResultTable::metric_rows(std::string_view metric) const
{
    std::vector<ResultRow> out;
    for (const ResultRow& r : rows) {
        if (r.metric == metric) {
            out.push_back(r);
        }
    }
    return out;
}

std::string format_csv(const ResultTable& table)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const ResultRow& r : table.rows) {
        out += r.sweep_var + ',' + fmt9(r.sweep_value) + ',' + r.metric + ',' + fmt9(r.value) + ',' +
               fmt9(r.std_error) + ',' + std::to_string(r.drops) + '\n';
    }
    return out;
}

ResultTable parse_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("results CSV: missing or unexpected header");
    }
    ResultTable table;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto cells = split_commas(line);
        if (cells.size() != 6) {
            throw std::runtime_error("results CSV: expected 6 columns in '" + line + "'");
        }
        ResultRow r;
        r.sweep_var = cells[0];
        r.sweep_value = to_double(cells[1]);
        r.metric = cells[2];
        r.value = to_double(cells[3]);
        r.std_error = to_double(cells[4]);
        r.drops = static_cast<std::size_t>(std::stoull(cells[5]));
        table.rows.push_back(std::move(r));
    }
    return table;
}

void write_results(const ResultTable& table, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << format_csv(table);
    if (!out.flush()) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

ResultTable read_results(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_csv(buf.str());
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_plot_svg(const ResultTable& table, std::string_view metric, const std::filesystem::path& path)
{
    const auto rows = table.metric_rows(metric);
    constexpr double width = 640, height = 400, margin = 60;

    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    bool first = true;
    for (const ResultRow& r : rows) {
        if (!std::isfinite(r.value)) {
            continue;
        }
        const double lo = r.value - r.std_error, hi = r.value + r.std_error;
        if (first) {
            x_lo = x_hi = r.sweep_value;
            y_lo = lo;
            y_hi = hi;
            first = false;
        }
        x_lo = std::min(x_lo, r.sweep_value);
        x_hi = std::max(x_hi, r.sweep_value);
        y_lo = std::min(y_lo, lo);
        y_hi = std::max(y_hi, hi);
    }
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) y_hi = y_lo + 1;
    auto sx = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
    auto sy = [&](double y) { return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin); };

    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    const std::string var = rows.empty() ? std::string() : rows.front().sweep_var;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">" << var << "</text>\n"
        << "<text x=\"" << width / 2 << "\" y=\"30\" text-anchor=\"middle\">" << metric << "</text>\n"
        << "<text x=\"5\" y=\"" << margin << "\">" << fmt9(y_hi) << "</text>\n"
        << "<text x=\"5\" y=\"" << height - margin << "\">" << fmt9(y_lo) << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const ResultRow& r : rows) {
        if (std::isfinite(r.value)) {
            out << sx(r.sweep_value) << ',' << sy(r.value) << ' ';
        }
    }
    out << "\"/>\n";
    for (const ResultRow& r : rows) {
        if (!std::isfinite(r.value)) {
            continue;
        }
        out << "<line x1=\"" << sx(r.sweep_value) << "\" y1=\"" << sy(r.value - r.std_error) << "\" x2=\""
            << sx(r.sweep_value) << "\" y2=\"" << sy(r.value + r.std_error) << "\" stroke=\"steelblue\"/>\n"
            << "<circle cx=\"" << sx(r.sweep_value) << "\" cy=\"" << sy(r.value) << "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace fdd2d
