#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fdd2d {

struct ResultRow {
    std::string sweep_var;
    double sweep_value = 0.0;
    std::string metric;
    double value = 0.0;
    double std_error = 0.0;
    std::size_t drops = 0;

    bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
    std::string label;  // series name, e.g. "tau2"; empty for single-series scenarios
    std::vector<ResultRow> rows;

    /// Rows of one metric in sweep order.
    std::vector<ResultRow> metric_rows(std::string_view metric) const;
};

inline constexpr std::string_view kCsvHeader = "sweep_var,sweep_value,metric,value,stderr,drops";

/// CSV text: header line, then one row per entry with 9 significant digits.
std::string format_csv(const ResultTable& table);
ResultTable parse_csv(std::string_view text);

/// Writes the CSV to `path`; I/O failures raise std::runtime_error naming the path.
void write_results(const ResultTable& table, const std::filesystem::path& path);
ResultTable read_results(const std::filesystem::path& path);

/// Minimal SVG line chart of one metric against the sweep variable, with
/// +-1 standard-error whiskers.
void write_plot_svg(const ResultTable& table, std::string_view metric, const std::filesystem::path& path);

}  // namespace fdd2d
