#include "leosim/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "leosim/error.hpp"

namespace leosim {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Range {
    double lo = -inf;
    double hi = inf;
    bool lo_open = false;
    bool hi_open = false;

    bool contains(double v) const {
        if (lo_open ? !(v > lo) : !(v >= lo)) return false;
        if (hi_open ? !(v < hi) : !(v <= hi)) return false;
        return true;
    }

    std::string describe() const {
        std::ostringstream os;
        os << (lo_open || std::isinf(lo) ? "(" : "[") << lo << ", " << hi << (hi_open || std::isinf(hi) ? ")" : "]");
        return os.str();
    }
};

constexpr Range positive{0.0, inf, true, false};
constexpr Range non_negative{0.0, inf, false, false};
constexpr Range probability{0.0, 1.0, false, false};

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"constellation", {"planes", "sats_per_plane", "altitude_km", "inclination_deg", "shell_type", "phasing_factor"}},
        {"capture", {"max_off_nadir_deg"}},
        {"ground_station", {"latitude_deg", "longitude_deg", "min_elevation_deg"}},
        {"target", {"latitude_deg", "longitude_deg", "regions"}},
        {"frame",
         {"area_km2", "gsd_m_per_px", "image_width_px", "image_height_px", "image_size_bits", "bbox_size_bits",
          "vessels_per_image", "vessel_fraction", "recall"}},
        {"compute", {"cpu_frequency_hz", "cores", "complexity_mean_cycles_per_bit", "complexity_gamma_shape"}},
        {"links",
         {"intra_plane_rate_bps", "inter_plane_rate_bps", "downlink_rate_bps", "loss_min", "loss_max", "loss_mode",
          "packet_size_bits", "distance_bounds_km"}},
        {"simulation",
         {"processing_satellites", "horizon_s", "time_step_s", "seed", "distribution", "communication_losses",
          "detection_losses"}},
        {"sweep", {"parameter", "values", "runs"}},
        {"output", {"directory", "formats"}},
    };
    return keys;
}

class Reader {
public:
    explicit Reader(const json& root) : root_(root) {
        if (!root_.is_object()) {
            errors_.push_back("document root must be an object");
            return;
        }
        for (const auto& [key, value] : root_.items()) {
            const auto it = schema().find(key);
            if (it == schema().end()) {
                errors_.push_back("unknown key '" + key + "'");
                continue;
            }
            if (!value.is_object()) {
                errors_.push_back("'" + key + "' must be an object");
                continue;
            }
            for (const auto& [sub, ignored] : value.items())
                if (!it->second.count(sub)) errors_.push_back("unknown key '" + key + "." + sub + "'");
        }
    }

    const json* find(const std::string& section, const std::string& key) const {
        if (!root_.is_object() || !root_.contains(section) || !root_[section].is_object()) return nullptr;
        const auto& s = root_[section];
        return s.contains(key) ? &s[key] : nullptr;
    }

    bool has_section(const std::string& section) const {
        return root_.is_object() && root_.contains(section) && root_[section].is_object();
    }

    double number(const std::string& section, const std::string& key, std::optional<double> fallback,
                  Range range = {}) {
        const std::string path = section + "." + key;
        const json* v = find(section, key);
        if (!v) {
            if (!fallback) errors_.push_back("missing required key '" + path + "'");
            return fallback.value_or(0.0);
        }
        if (!v->is_number()) {
            errors_.push_back("'" + path + "' must be a number");
            return fallback.value_or(0.0);
        }
        const double d = v->get<double>();
        if (!std::isfinite(d) || !range.contains(d))
            errors_.push_back("'" + path + "' = " + v->dump() + " out of range, expected " + range.describe());
        return d;
    }

    int integer(const std::string& section, const std::string& key, std::optional<int> fallback, Range range = {}) {
        const std::string path = section + "." + key;
        const json* v = find(section, key);
        if (!v) {
            if (!fallback) errors_.push_back("missing required key '" + path + "'");
            return fallback.value_or(0);
        }
        if (!v->is_number_integer()) {
            errors_.push_back("'" + path + "' must be an integer");
            return fallback.value_or(0);
        }
        const auto i = v->get<long long>();
        if (!range.contains(static_cast<double>(i)))
            errors_.push_back("'" + path + "' = " + v->dump() + " out of range, expected " + range.describe());
        return static_cast<int>(i);
    }

    std::string text(const std::string& section, const std::string& key, std::optional<std::string> fallback) {
        const std::string path = section + "." + key;
        const json* v = find(section, key);
        if (!v) {
            if (!fallback) errors_.push_back("missing required key '" + path + "'");
            return fallback.value_or("");
        }
        if (!v->is_string()) {
            errors_.push_back("'" + path + "' must be a string");
            return fallback.value_or("");
        }
        return v->get<std::string>();
    }

    bool boolean(const std::string& section, const std::string& key, bool fallback) {
        const json* v = find(section, key);
        if (!v) return fallback;
        if (!v->is_boolean()) {
            errors_.push_back("'" + section + "." + key + "' must be true or false");
            return fallback;
        }
        return v->get<bool>();
    }

    template <typename Fn>
    auto guarded(const std::string& path, Fn&& fn) -> decltype(fn()) {
        try {
            return fn();
        } catch (const std::exception& e) {
            errors_.push_back("'" + path + "': " + e.what());
            return {};
        }
    }

    void error(std::string message) { errors_.push_back(std::move(message)); }
    const std::vector<std::string>& errors() const { return errors_; }

private:
    const json& root_;
    std::vector<std::string> errors_;
};

bool blank(const std::string& text) {
    return text.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

const std::vector<std::string>& required_scenario_keys() {
    static const std::vector<std::string> keys{
        "constellation.planes",        "constellation.sats_per_plane",
        "constellation.altitude_km",   "constellation.inclination_deg",
        "constellation.shell_type",    "capture.max_off_nadir_deg",
        "ground_station.latitude_deg", "ground_station.longitude_deg",
        "frame.area_km2",              "frame.gsd_m_per_px",
        "frame.image_width_px",        "frame.image_height_px",
        "frame.image_size_bits",       "frame.bbox_size_bits",
        "frame.vessel_fraction",       "frame.recall",
        "compute.cpu_frequency_hz",    "compute.cores",
        "compute.complexity_mean_cycles_per_bit", "links.loss_min",
        "links.loss_max",
    };
    return keys;
}

ScenarioFile parse_scenario_text(const std::string& text, const std::string& origin) {
    json root;
    if (blank(text)) {
        root = json::object();
    } else {
        try {
            root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
        } catch (const json::parse_error& e) {
            throw ConfigError(origin + ": malformed document: " + e.what());
        }
    }

    Reader in(root);
    ScenarioFile file;
    auto& c = file.config;

    auto& k = c.constellation;
    k.planes = in.integer("constellation", "planes", std::nullopt, {3, 100000});
    k.sats_per_plane = in.integer("constellation", "sats_per_plane", std::nullopt, {3, 100000});
    k.altitude_km = in.number("constellation", "altitude_km", std::nullopt, positive);
    k.inclination_deg = in.number("constellation", "inclination_deg", std::nullopt, {0.0, 180.0});
    const auto shell = in.text("constellation", "shell_type", std::nullopt);
    if (in.find("constellation", "shell_type"))
        k.shell = in.guarded("constellation.shell_type", [&] { return shell_type_from_string(shell); });
    k.phasing = in.integer("constellation", "phasing_factor", 1, {0, std::max(0.0, k.planes - 1.0)});

    c.max_off_nadir_deg = in.number("capture", "max_off_nadir_deg", std::nullopt, {0.0, 180.0, true, false});

    c.ground_station.latitude_deg = in.number("ground_station", "latitude_deg", std::nullopt, {-90.0, 90.0});
    c.ground_station.longitude_deg = in.number("ground_station", "longitude_deg", std::nullopt, {-180.0, 180.0});
    c.min_elevation_deg = in.number("ground_station", "min_elevation_deg", 10.0, {0.0, 90.0, false, true});

    if (in.has_section("target")) {
        const bool has_point = in.find("target", "latitude_deg") || in.find("target", "longitude_deg");
        const json* regions = in.find("target", "regions");
        if (has_point && regions) {
            in.error("'target' takes either latitude_deg/longitude_deg or regions, not both");
        } else if (has_point) {
            c.target.fixed = GeodeticPoint{in.number("target", "latitude_deg", std::nullopt, {-90.0, 90.0}),
                                           in.number("target", "longitude_deg", std::nullopt, {-180.0, 180.0})};
            c.target.regions.clear();
        } else if (regions) {
            c.target.regions.clear();
            if (!regions->is_array() || regions->empty()) {
                in.error("'target.regions' must be a non-empty array");
            } else {
                for (std::size_t i = 0; i < regions->size(); ++i) {
                    const auto& r = (*regions)[i];
                    const std::string path = "target.regions[" + std::to_string(i) + "]";
                    static const std::set<std::string> fields{"lat_min_deg", "lat_max_deg", "lon_min_deg", "lon_max_deg"};
                    if (!r.is_object()) {
                        in.error("'" + path + "' must be an object");
                        continue;
                    }
                    bool ok = true;
                    for (const auto& [key, v] : r.items()) {
                        if (!fields.count(key)) {
                            in.error("unknown key '" + path + "." + key + "'");
                            ok = false;
                        }
                    }
                    for (const auto& f : fields) {
                        if (!r.contains(f) || !r[f].is_number()) {
                            in.error("'" + path + "." + f + "' must be a number");
                            ok = false;
                        }
                    }
                    if (!ok) continue;
                    LatLonRegion region{r["lat_min_deg"].get<double>(), r["lat_max_deg"].get<double>(),
                                        r["lon_min_deg"].get<double>(), r["lon_max_deg"].get<double>()};
                    in.guarded(path, [&] {
                        region.validate();
                        return 0;
                    });
                    c.target.regions.push_back(region);
                }
            }
        }
    }

    auto& f = c.frame;
    f.area_km2 = in.number("frame", "area_km2", std::nullopt, positive);
    f.gsd_m_per_px = in.number("frame", "gsd_m_per_px", std::nullopt, positive);
    f.image_width_px = in.integer("frame", "image_width_px", std::nullopt, {1, 1e6});
    f.image_height_px = in.integer("frame", "image_height_px", std::nullopt, {1, 1e6});
    f.image_bits = in.number("frame", "image_size_bits", std::nullopt, positive);
    f.bbox_bits = in.number("frame", "bbox_size_bits", std::nullopt, positive);
    f.vessels_per_image = in.number("frame", "vessels_per_image", 2.0, positive);
    f.vessel_fraction = in.number("frame", "vessel_fraction", std::nullopt, {0.0, 1.0, true, false});
    f.recall = in.number("frame", "recall", std::nullopt, {0.0, 1.0, true, false});

    auto& cm = c.compute;
    cm.cpu_hz = in.number("compute", "cpu_frequency_hz", std::nullopt, positive);
    cm.cores = in.integer("compute", "cores", std::nullopt, {1, 1e6});
    cm.complexity_mean = in.number("compute", "complexity_mean_cycles_per_bit", std::nullopt, positive);
    cm.gamma_shape = in.number("compute", "complexity_gamma_shape", 10.0, positive);

    auto& l = c.links;
    l.rate_intra_bps = in.number("links", "intra_plane_rate_bps", 10e9, positive);
    l.rate_inter_bps = in.number("links", "inter_plane_rate_bps", 1e9, positive);
    l.rate_downlink_bps = in.number("links", "downlink_rate_bps", 500e6, positive);
    l.loss_min = in.number("links", "loss_min", std::nullopt, probability);
    l.loss_max = in.number("links", "loss_max", std::nullopt, probability);
    if (l.loss_min > l.loss_max) in.error("'links.loss_min' must not exceed 'links.loss_max'");
    const auto mode = in.text("links", "loss_mode", "per-hop");
    l.loss_mode = in.guarded("links.loss_mode", [&] { return loss_mode_from_string(mode); });
    l.packet_bits = in.number("links", "packet_size_bits", 12000.0, positive);
    if (const json* b = in.find("links", "distance_bounds_km")) {
        if (!b->is_array() || b->size() != 2 || !(*b)[0].is_number() || !(*b)[1].is_number()) {
            in.error("'links.distance_bounds_km' must be [min, max]");
        } else {
            const DistanceBounds db{(*b)[0].get<double>(), (*b)[1].get<double>()};
            if (!(db.min_km >= 0.0 && db.min_km < db.max_km))
                in.error("'links.distance_bounds_km' must satisfy 0 <= min < max");
            c.distance_bounds = db;
        }
    }

    c.processing_satellites = in.integer("simulation", "processing_satellites", 5, {1, 1e9});
    if (c.processing_satellites > k.planes * k.sats_per_plane && k.planes > 0 && k.sats_per_plane > 0)
        in.error("'simulation.processing_satellites' exceeds the constellation size");
    c.horizon_s = in.number("simulation", "horizon_s", 86164.1, positive);
    c.step_s = in.number("simulation", "time_step_s", 1.0, positive);
    if (const json* s = in.find("simulation", "seed")) {
        if (!s->is_number_unsigned()) in.error("'simulation.seed' must be a non-negative integer");
        else c.seed = s->get<std::uint64_t>();
    }
    const auto dist = in.text("simulation", "distribution", "sequential");
    c.distribution = in.guarded("simulation.distribution", [&] { return distribution_mode_from_string(dist); });
    c.communication_losses = in.boolean("simulation", "communication_losses", true);
    c.detection_losses = in.boolean("simulation", "detection_losses", true);

    if (in.has_section("sweep")) {
        SweepDirective sw;
        const auto name = in.text("sweep", "parameter", std::nullopt);
        if (in.find("sweep", "parameter"))
            sw.parameter = in.guarded("sweep.parameter", [&] { return sweep_parameter_from_string(name); });
        sw.runs = in.integer("sweep", "runs", 1, {1, 1e7});
        const json* values = in.find("sweep", "values");
        if (!values) {
            in.error("missing required key 'sweep.values'");
        } else if (!values->is_array() || values->empty()) {
            in.error("'sweep.values' must be a non-empty array of integers");
        } else {
            for (const auto& v : *values) {
                if (!v.is_number_integer() || v.get<long long>() < 1) {
                    in.error("'sweep.values' entries must be positive integers");
                    break;
                }
                sw.values.push_back(v.get<int>());
            }
        }
        file.sweep = sw;
    }

    if (in.has_section("output")) {
        file.output.directory = in.text("output", "directory", file.output.directory);
        if (const json* fm = in.find("output", "formats")) {
            file.output.formats.clear();
            if (!fm->is_array()) {
                in.error("'output.formats' must be an array");
            } else {
                for (const auto& v : *fm) {
                    const std::string s = v.is_string() ? v.get<std::string>() : "";
                    if (s != "csv" && s != "json" && s != "svg") {
                        in.error("'output.formats' entries must be csv, json or svg");
                        break;
                    }
                    file.output.formats.push_back(s);
                }
            }
        }
    }

    if (in.errors().empty()) {
        try {
            c.validate();
        } catch (const std::exception& e) {
            in.error(e.what());
        }
        if (file.sweep) {
            for (int v : file.sweep->values) {
                try {
                    with_parameter(c, file.sweep->parameter, v).validate();
                } catch (const std::exception& e) {
                    in.error("'sweep.values' entry " + std::to_string(v) + ": " + e.what());
                    break;
                }
            }
        }
    }

    if (!in.errors().empty()) {
        std::string msg = origin + ": invalid scenario";
        for (const auto& e : in.errors()) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
    return file;
}

ScenarioFile parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open scenario file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str(), path.string());
}

std::string serialize_scenario(const ScenarioFile& file) {
    const auto& c = file.config;
    ordered_json doc;
    doc["constellation"] = {
        {"planes", c.constellation.planes},
        {"sats_per_plane", c.constellation.sats_per_plane},
        {"altitude_km", c.constellation.altitude_km},
        {"inclination_deg", c.constellation.inclination_deg},
        {"shell_type", to_string(c.constellation.shell)},
        {"phasing_factor", c.constellation.phasing},
    };
    doc["capture"] = {{"max_off_nadir_deg", c.max_off_nadir_deg}};
    doc["ground_station"] = {
        {"latitude_deg", c.ground_station.latitude_deg},
        {"longitude_deg", c.ground_station.longitude_deg},
        {"min_elevation_deg", c.min_elevation_deg},
    };
    if (c.target.fixed) {
        doc["target"] = {{"latitude_deg", c.target.fixed->latitude_deg}, {"longitude_deg", c.target.fixed->longitude_deg}};
    } else {
        ordered_json regions = ordered_json::array();
        for (const auto& r : c.target.regions)
            regions.push_back({{"lat_min_deg", r.lat_min_deg},
                               {"lat_max_deg", r.lat_max_deg},
                               {"lon_min_deg", r.lon_min_deg},
                               {"lon_max_deg", r.lon_max_deg}});
        doc["target"] = {{"regions", regions}};
    }
    doc["frame"] = {
        {"area_km2", c.frame.area_km2},
        {"gsd_m_per_px", c.frame.gsd_m_per_px},
        {"image_width_px", c.frame.image_width_px},
        {"image_height_px", c.frame.image_height_px},
        {"image_size_bits", c.frame.image_bits},
        {"bbox_size_bits", c.frame.bbox_bits},
        {"vessels_per_image", c.frame.vessels_per_image},
        {"vessel_fraction", c.frame.vessel_fraction},
        {"recall", c.frame.recall},
    };
    doc["compute"] = {
        {"cpu_frequency_hz", c.compute.cpu_hz},
        {"cores", c.compute.cores},
        {"complexity_mean_cycles_per_bit", c.compute.complexity_mean},
        {"complexity_gamma_shape", c.compute.gamma_shape},
    };
    doc["links"] = {
        {"intra_plane_rate_bps", c.links.rate_intra_bps},
        {"inter_plane_rate_bps", c.links.rate_inter_bps},
        {"downlink_rate_bps", c.links.rate_downlink_bps},
        {"loss_min", c.links.loss_min},
        {"loss_max", c.links.loss_max},
        {"loss_mode", to_string(c.links.loss_mode)},
        {"packet_size_bits", c.links.packet_bits},
    };
    if (c.distance_bounds) doc["links"]["distance_bounds_km"] = {c.distance_bounds->min_km, c.distance_bounds->max_km};
    doc["simulation"] = {
        {"processing_satellites", c.processing_satellites},
        {"horizon_s", c.horizon_s},
        {"time_step_s", c.step_s},
        {"seed", c.seed},
        {"distribution", to_string(c.distribution)},
        {"communication_losses", c.communication_losses},
        {"detection_losses", c.detection_losses},
    };
    if (file.sweep)
        doc["sweep"] = {{"parameter", to_string(file.sweep->parameter)},
                        {"values", file.sweep->values},
                        {"runs", file.sweep->runs}};
    doc["output"] = {{"directory", file.output.directory}, {"formats", file.output.formats}};
    return doc.dump(2) + "\n";
}

}  // namespace leosim
