#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leosim/aoi.hpp"
#include "leosim/engine.hpp"

namespace leosim {

struct ResultRow {
    double value = 0.0;
    double aoi_avg_s = 0.0;
    double aoi_stderr_s = 0.0;
    double paoi_avg_s = 0.0;
    double paoi_stderr_s = 0.0;
    double coverage_probability = 0.0;
    std::size_t delivered = 0;
    std::size_t lost_comm = 0;
    std::size_t lost_detect = 0;

    bool operator==(const ResultRow&) const = default;
};

/// One row per swept value. Undefined estimates are NaN and refused by the writers.
struct ResultTable {
    std::string parameter;
    std::vector<ResultRow> rows;
};

ResultTable make_table(SweepParameter parameter, std::span<const SweepPoint> points);

extern const char* const result_csv_header;

// Six significant digits. Throws DomainError on NaN or infinite fields.
std::string to_csv(const ResultTable& table);
ResultTable read_csv(const std::string& text, const std::string& parameter = "value");
std::string to_json(const ResultTable& table);

// Per-frame ledger with exact (shortest round-trip) numbers.
std::string ledger_csv(std::span<const FrameRecord> records);

struct CoverageRow {
    double latitude_deg = 0.0;
    int planes = 0;
    double coverage_probability = 0.0;
};

std::string coverage_csv(std::span<const CoverageRow> rows);

using FileSet = std::vector<std::pair<std::filesystem::path, std::string>>;

// Creates parent directories and writes every file, or none of them.
std::vector<std::filesystem::path> write_all(const FileSet& files);

std::string coverage_svg(std::span<const CoverageRow> rows);

/// Writes results.{csv,json,svg} for the requested formats into `dir`.
/// All-or-nothing: files written before a failure are removed again.
std::vector<std::filesystem::path> emit_results(const ResultTable& table, const std::vector<std::string>& formats,
                                                const std::filesystem::path& dir);

// Shortest decimal that round-trips, or `digits` significant digits when given.
std::string format_number(double v, int digits = 0);

}  // namespace leosim
