#include "leosim/results_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "leosim/error.hpp"
#include "leosim/svg_chart.hpp"

namespace leosim {

namespace fs = std::filesystem;

const char* const result_csv_header =
    "value,aoi_avg_s,aoi_stderr_s,paoi_avg_s,paoi_stderr_s,coverage_probability,delivered,lost_comm,lost_detect";

namespace {

double finite_or_throw(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string("non-finite value in column ") + what);
    return v;
}

double mean_or_nan(const Estimate& e) {
    return e.samples > 0 ? e.mean : std::numeric_limits<double>::quiet_NaN();
}

double stderr_or_nan(const Estimate& e) {
    return e.samples > 0 ? e.std_error : std::numeric_limits<double>::quiet_NaN();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

template <typename T>
T parse_cell(const std::string& cell, int line) {
    T v{};
    const auto* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("results CSV line " + std::to_string(line) + ": bad number '" + cell + "'");
    return v;
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(path.string() + ": cannot open for writing");
    out << body;
    out.flush();
    if (!out) throw ConfigError(path.string() + ": write failed");
}

}  // namespace

std::string format_number(double v, int digits) {
    char buf[64];
    const auto res = digits > 0 ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits)
                                : std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

ResultTable make_table(SweepParameter parameter, std::span<const SweepPoint> points) {
    ResultTable table;
    table.parameter = to_string(parameter);
    for (const auto& p : points) {
        const auto& r = p.result;
        table.rows.push_back({static_cast<double>(p.value), mean_or_nan(r.aoi), stderr_or_nan(r.aoi),
                              mean_or_nan(r.paoi), stderr_or_nan(r.paoi), mean_or_nan(r.coverage), r.delivered,
                              r.lost_communication, r.lost_detection});
    }
    return table;
}

std::string to_csv(const ResultTable& table) {
    std::string out = result_csv_header;
    out += '\n';
    for (const auto& r : table.rows) {
        const double cols[] = {r.value,         r.aoi_avg_s,    r.aoi_stderr_s,
                               r.paoi_avg_s,    r.paoi_stderr_s, r.coverage_probability};
        const char* names[] = {"value", "aoi_avg_s", "aoi_stderr_s", "paoi_avg_s", "paoi_stderr_s",
                               "coverage_probability"};
        for (int i = 0; i < 6; ++i) {
            out += format_number(finite_or_throw(cols[i], names[i]), 6);
            out += ',';
        }
        out += std::to_string(r.delivered) + ',' + std::to_string(r.lost_comm) + ',' + std::to_string(r.lost_detect);
        out += '\n';
    }
    return out;
}

ResultTable read_csv(const std::string& text, const std::string& parameter) {
    ResultTable table;
    table.parameter = parameter;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != result_csv_header) throw ConfigError("results CSV: unexpected header");
    int n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 9) throw ConfigError("results CSV line " + std::to_string(n) + ": expected 9 columns");
        ResultRow r;
        r.value = parse_cell<double>(cells[0], n);
        r.aoi_avg_s = parse_cell<double>(cells[1], n);
        r.aoi_stderr_s = parse_cell<double>(cells[2], n);
        r.paoi_avg_s = parse_cell<double>(cells[3], n);
        r.paoi_stderr_s = parse_cell<double>(cells[4], n);
        r.coverage_probability = parse_cell<double>(cells[5], n);
        r.delivered = parse_cell<std::size_t>(cells[6], n);
        r.lost_comm = parse_cell<std::size_t>(cells[7], n);
        r.lost_detect = parse_cell<std::size_t>(cells[8], n);
        table.rows.push_back(r);
    }
    return table;
}

std::string to_json(const ResultTable& table) {
    nlohmann::ordered_json doc;
    doc["parameter"] = table.parameter;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        doc["rows"].push_back({
            {"value", finite_or_throw(r.value, "value")},
            {"aoi_avg_s", finite_or_throw(r.aoi_avg_s, "aoi_avg_s")},
            {"aoi_stderr_s", finite_or_throw(r.aoi_stderr_s, "aoi_stderr_s")},
            {"paoi_avg_s", finite_or_throw(r.paoi_avg_s, "paoi_avg_s")},
            {"paoi_stderr_s", finite_or_throw(r.paoi_stderr_s, "paoi_stderr_s")},
            {"coverage_probability", finite_or_throw(r.coverage_probability, "coverage_probability")},
            {"delivered", r.delivered},
            {"lost_comm", r.lost_comm},
            {"lost_detect", r.lost_detect},
        });
    }
    return doc.dump(2) + "\n";
}

std::string ledger_csv(std::span<const FrameRecord> records) {
    std::string out = "i,t_i,t_prime_i,T_i,Y_i,delivered\n";
    for (const auto& r : records) {
        out += std::to_string(r.index) + ',' + format_number(r.capture_s) + ',' + format_number(r.arrival_s) + ',' +
               format_number(r.network_s) + ',' + format_number(r.interframe_s) + ',' +
               (r.delivered() ? "1" : "0") + '\n';
    }
    return out;
}

std::string coverage_csv(std::span<const CoverageRow> rows) {
    std::string out = "latitude_deg,planes,coverage_probability\n";
    for (const auto& r : rows)
        out += format_number(finite_or_throw(r.latitude_deg, "latitude_deg"), 6) + ',' + std::to_string(r.planes) +
               ',' + format_number(finite_or_throw(r.coverage_probability, "coverage_probability"), 6) + '\n';
    return out;
}

std::string coverage_svg(std::span<const CoverageRow> rows) {
    LineChart chart;
    chart.title = "Service availability vs latitude";
    chart.x_label = "latitude (deg)";
    chart.left_label = "coverage probability";
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    for (const auto& r : rows) {
        const std::string label = "M = " + std::to_string(r.planes);
        auto it = std::find_if(chart.series.begin(), chart.series.end(),
                               [&](const Series& s) { return s.label == label; });
        if (it == chart.series.end()) {
            chart.series.push_back({label, {}, false, palette[chart.series.size() % 6]});
            it = std::prev(chart.series.end());
        }
        it->points.emplace_back(finite_or_throw(r.latitude_deg, "latitude_deg"),
                                finite_or_throw(r.coverage_probability, "coverage_probability"));
    }
    return chart.render();
}

std::vector<fs::path> emit_results(const ResultTable& table, const std::vector<std::string>& formats,
                                   const fs::path& dir) {
    if (table.rows.empty()) throw ValidationError("emit_results: empty table");

    // Render everything first so a non-finite value aborts before any file exists.
    FileSet files;
    for (const auto& f : formats) {
        if (f == "csv") {
            files.emplace_back(dir / "results.csv", to_csv(table));
        } else if (f == "json") {
            files.emplace_back(dir / "results.json", to_json(table));
        } else if (f == "svg") {
            to_csv(table);
            LineChart chart;
            chart.title = "AoI, PAoI and coverage vs " + table.parameter;
            chart.x_label = table.parameter;
            chart.left_label = "age (s)";
            chart.right_label = "coverage probability";
            Series aoi{"AoI_avg", {}, false, "#1f77b4"};
            Series paoi{"PAoI_avg", {}, false, "#d62728"};
            Series pm{"P_m", {}, true, "#2ca02c"};
            for (const auto& r : table.rows) {
                aoi.points.emplace_back(r.value, r.aoi_avg_s);
                paoi.points.emplace_back(r.value, r.paoi_avg_s);
                pm.points.emplace_back(r.value, r.coverage_probability);
            }
            chart.series = {aoi, paoi, pm};
            files.emplace_back(dir / "results.svg", chart.render());
        } else {
            throw ConfigError("unknown output format '" + f + "'");
        }
    }

    return write_all(files);
}

std::vector<fs::path> write_all(const FileSet& files) {
    std::error_code ec;
    for (const auto& [path, body] : files) {
        if (!path.has_parent_path()) continue;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw ConfigError(path.parent_path().string() + ": cannot create output directory: " + ec.message());
    }
    std::vector<fs::path> written;
    try {
        for (const auto& [path, body] : files) {
            written.push_back(path);
            write_file(path, body);
        }
    } catch (...) {
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }
    return written;
}

}  // namespace leosim
