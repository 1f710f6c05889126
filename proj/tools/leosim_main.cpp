#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leosim/coverage.hpp"
#include "leosim/error.hpp"
#include "leosim/results_io.hpp"
#include "leosim/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace leosim;

namespace {

fs::path output_dir(const ScenarioFile& file) {
    if (const char* env = std::getenv("LEOSIM_OUTPUT_DIR"); env && *env) return env;
    return file.output.directory;
}

std::string fmt(const std::optional<double>& v) {
    return v ? format_number(*v, 6) : "undefined";
}

void print_summary(const ScenarioResult& r) {
    const auto& s = r.summary;
    std::cout << "config        " << r.config_hash << "\n"
              << "seed          " << r.seed << "\n"
              << "target        " << format_number(r.target.latitude_deg, 6) << ", "
              << format_number(r.target.longitude_deg, 6) << "\n"
              << "horizon_s     " << format_number(s.horizon_s, 6) << "\n"
              << "aoi_avg_s     " << fmt(s.aoi_avg) << "\n"
              << "paoi_avg_s    " << fmt(s.paoi_avg) << "\n"
              << "coverage      " << format_number(s.coverage_probability, 6) << "\n"
              << "frames        " << r.ledger.size() << " (delivered " << s.delivered << ", lost_comm "
              << s.lost_communication << ", lost_detect " << s.lost_detection << ")\n"
              << "timing_s      distribute " << format_number(r.timing.distribute_s, 6) << ", process "
              << format_number(r.timing.process_s, 6) << ", route " << format_number(r.timing.route_s, 6)
              << ", downlink " << format_number(r.timing.downlink_s, 6) << "\n";
}

// "a:b:step" inclusive of b when it lands on the grid.
std::vector<double> parse_latitudes(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("--latitudes: bad number '" + item + "'");
        }
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[0] > parts[1])
        throw ConfigError("--latitudes expects a:b:step with a <= b and step > 0");
    if (parts[0] < -90.0 || parts[1] > 90.0) throw ConfigError("--latitudes must lie within [-90, 90]");
    std::vector<double> out;
    const double n = std::floor((parts[1] - parts[0]) / parts[2] + 1e-9);
    for (int k = 0; k <= static_cast<int>(n); ++k) out.push_back(parts[0] + k * parts[2]);
    return out;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed) {
    const auto file = parse_scenario(path);
    const std::uint64_t s = seed.value_or(file.config.seed);
    const auto result = run_scenario(file.config, s);
    print_summary(result);
    const auto written = write_all({{output_dir(file) / "ledger.csv", ledger_csv(result.ledger)}});
    std::cout << "wrote         " << written.front().string() << "\n";
    return 0;
}

int cmd_sweep(const std::string& path) {
    const auto file = parse_scenario(path);
    if (!file.sweep) throw ConfigError(path + ": no 'sweep' block");
    const auto& sw = *file.sweep;
    const auto points = sweep(file.config, sw.parameter, sw.values, sw.runs);
    const auto table = make_table(sw.parameter, points);
    std::cout << result_csv_header << "\n";
    for (const auto& p : points) {
        const auto& r = p.result;
        std::cout << p.value << "," << format_number(r.aoi.mean, 6) << "," << format_number(r.aoi.std_error, 6) << ","
                  << format_number(r.paoi.mean, 6) << "," << format_number(r.paoi.std_error, 6) << ","
                  << format_number(r.coverage.mean, 6) << "," << r.delivered << "," << r.lost_communication << ","
                  << r.lost_detection << "\n";
    }
    for (const auto& f : emit_results(table, file.output.formats, output_dir(file)))
        std::cout << "wrote " << f.string() << "\n";
    return 0;
}

int cmd_coverage(const std::string& path, const std::string& latitudes, std::vector<int> planes,
                 double longitude_deg) {
    const auto file = parse_scenario(path);
    const auto lats = parse_latitudes(latitudes);
    if (planes.empty()) planes.push_back(file.config.constellation.planes);

    std::vector<CoverageRow> rows;
    for (int m : planes) {
        const auto cfg = with_parameter(file.config, SweepParameter::planes, m);
        cfg.validate();
        const Constellation constellation(cfg.constellation);
        for (double lat : lats) {
            const double p = coverage_probability(constellation, {lat, longitude_deg}, cfg.max_off_nadir_deg,
                                                  cfg.horizon_s, cfg.step_s);
            rows.push_back({lat, m, p});
            std::cout << "lat " << format_number(lat, 6) << "  M " << m << "  P_m " << format_number(p, 6) << "\n";
        }
    }
    const fs::path dir = output_dir(file);
    FileSet files{{dir / "coverage.csv", coverage_csv(rows)}};
    if (std::find(file.output.formats.begin(), file.output.formats.end(), "svg") != file.output.formats.end())
        files.emplace_back(dir / "coverage.svg", coverage_svg(rows));
    for (const auto& f : write_all(files)) std::cout << "wrote " << f.string() << "\n";
    return 0;
}

int cmd_validate(const std::string& path) {
    const auto file = parse_scenario(path);
    std::cout << "ok " << path << " config " << config_fingerprint(file.config) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LEO constellation AoI simulator"};
    app.require_subcommand(1);

    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string latitudes;
    std::vector<int> planes;
    double longitude = 0.0;

    auto* run = app.add_subcommand("run", "single replication, prints the summary and writes ledger.csv");
    run->add_option("scenario", scenario, "scenario file")->required();
    run->add_option("--seed", seed, "override simulation.seed");

    auto* sw = app.add_subcommand("sweep", "Monte Carlo sweep from the scenario's sweep block");
    sw->add_option("scenario", scenario, "scenario file")->required();

    auto* cov = app.add_subcommand("coverage", "coverage probability against target latitude");
    cov->add_option("scenario", scenario, "scenario file")->required();
    cov->add_option("--latitudes", latitudes, "a:b:step in degrees")->required();
    cov->add_option("--planes", planes, "orbital plane counts to compare")->delimiter(',');
    cov->add_option("--longitude", longitude, "target longitude in degrees")->check(CLI::Range(-180.0, 180.0));

    auto* val = app.add_subcommand("validate", "parse and check a scenario without simulating");
    val->add_option("scenario", scenario, "scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario, seed);
        if (sw->parsed()) return cmd_sweep(scenario);
        if (cov->parsed()) return cmd_coverage(scenario, latitudes, planes, longitude);
        if (val->parsed()) return cmd_validate(scenario);
    } catch (const ConfigError& e) {
        std::cerr << "error[config]: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error[validation]: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error[domain]: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
