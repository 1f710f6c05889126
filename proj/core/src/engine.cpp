#include "leosim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "leosim/constants.hpp"
#include "leosim/coverage.hpp"
#include "leosim/error.hpp"

namespace leosim {

using constants::deg_to_rad;
using constants::rad_to_deg;

void LatLonRegion::validate() const {
    if (!(lat_min_deg >= -90.0 && lat_max_deg <= 90.0 && lat_min_deg < lat_max_deg))
        throw ValidationError("region latitudes must satisfy -90 <= lat_min_deg < lat_max_deg <= 90");
    if (!(lon_min_deg >= -180.0 && lon_min_deg <= 180.0 && lon_max_deg >= -180.0 && lon_max_deg <= 180.0))
        throw ValidationError("region longitudes must be in [-180, 180]");
    if (lon_min_deg == lon_max_deg) throw ValidationError("region longitude span must be non-empty");
}

double LatLonRegion::lon_span_deg() const {
    const double span = lon_max_deg - lon_min_deg;
    return span > 0.0 ? span : span + 360.0;
}

double LatLonRegion::weight() const {
    return (std::sin(lat_max_deg * deg_to_rad) - std::sin(lat_min_deg * deg_to_rad)) * lon_span_deg();
}

std::vector<LatLonRegion> default_water_mask() {
    return {
        {-50.0, 50.0, 150.0, -120.0},  // Pacific
        {-40.0, 55.0, -60.0, -10.0},   // Atlantic
        {-40.0, 20.0, 50.0, 100.0},    // Indian
    };
}

GeodeticPoint sample_target(Rng& rng, const std::vector<LatLonRegion>& regions) {
    if (regions.empty()) throw ValidationError("target regions must be non-empty");
    double total = 0.0;
    for (const auto& r : regions) total += r.weight();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double pick = unit(rng) * total;
    const LatLonRegion* chosen = &regions.back();
    for (const auto& r : regions) {
        if (pick < r.weight()) {
            chosen = &r;
            break;
        }
        pick -= r.weight();
    }
    const double s0 = std::sin(chosen->lat_min_deg * deg_to_rad);
    const double s1 = std::sin(chosen->lat_max_deg * deg_to_rad);
    const double lat = std::asin(s0 + unit(rng) * (s1 - s0)) * rad_to_deg;
    double lon = chosen->lon_min_deg + unit(rng) * chosen->lon_span_deg();
    if (lon > 180.0) lon -= 360.0;
    return {std::clamp(lat, -90.0, 90.0), lon};
}

std::string to_string(DistributionMode mode) {
    return mode == DistributionMode::sequential ? "sequential" : "parallel";
}

DistributionMode distribution_mode_from_string(const std::string& name) {
    if (name == "sequential") return DistributionMode::sequential;
    if (name == "parallel") return DistributionMode::parallel;
    throw ValidationError("distribution must be sequential or parallel, got '" + name + "'");
}

void ScenarioConfig::validate() const {
    constellation.validate();
    if (constellation.planes < 3 || constellation.sats_per_plane < 3)
        throw ValidationError("planes and sats_per_plane must be >= 3 for the ISL grid");
    if (!(max_off_nadir_deg > 0.0 && max_off_nadir_deg <= 180.0))
        throw ValidationError("max_off_nadir_deg must be in (0, 180]");
    ground_station.validate();
    if (!(min_elevation_deg >= 0.0 && min_elevation_deg < 90.0))
        throw ValidationError("min_elevation_deg must be in [0, 90)");
    if (target.fixed) {
        target.fixed->validate();
    } else {
        if (target.regions.empty()) throw ValidationError("target regions must be non-empty");
        for (const auto& r : target.regions) r.validate();
    }
    frame.validate();
    compute.validate();
    LinkModel probe = links;
    probe.d_min_km = 0.0;
    probe.d_max_km = 1.0;
    probe.validate();
    if (distance_bounds && !(distance_bounds->min_km >= 0.0 && distance_bounds->min_km < distance_bounds->max_km))
        throw ValidationError("distance_bounds_km must satisfy 0 <= min < max");
    if (processing_satellites < 1 || processing_satellites > constellation.size())
        throw ValidationError("processing_satellites must be in [1, planes * sats_per_plane]");
    if (!(horizon_s > 0.0)) throw ValidationError("horizon_s must be > 0");
    if (!(step_s > 0.0)) throw ValidationError("time_step_s must be > 0");
}

namespace {

class Fingerprint {
public:
    Fingerprint& add(double v) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        bytes(buf, static_cast<std::size_t>(res.ptr - buf));
        return sep();
    }
    Fingerprint& add(long long v) {
        char buf[24];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        bytes(buf, static_cast<std::size_t>(res.ptr - buf));
        return sep();
    }
    Fingerprint& add(int v) { return add(static_cast<long long>(v)); }
    Fingerprint& add(bool v) { return add(static_cast<long long>(v)); }
    Fingerprint& add(const std::string& s) {
        bytes(s.data(), s.size());
        return sep();
    }

    std::string hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out(16, '0');
        for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(15 - i)] = digits[(hash_ >> (4 * i)) & 0xF];
        return out;
    }

private:
    void bytes(const char* p, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            hash_ ^= static_cast<unsigned char>(p[i]);
            hash_ *= 1099511628211ULL;
        }
    }
    Fingerprint& sep() {
        bytes(";", 1);
        return *this;
    }

    std::uint64_t hash_ = 14695981039346656037ULL;  // FNV-1a
};

}  // namespace

std::string config_fingerprint(const ScenarioConfig& c) {
    Fingerprint f;
    const auto& k = c.constellation;
    f.add(k.planes).add(k.sats_per_plane).add(k.altitude_km).add(k.inclination_deg).add(to_string(k.shell)).add(k.phasing);
    f.add(c.max_off_nadir_deg).add(c.ground_station.latitude_deg).add(c.ground_station.longitude_deg);
    f.add(c.min_elevation_deg);
    if (c.target.fixed) f.add(std::string("fixed")).add(c.target.fixed->latitude_deg).add(c.target.fixed->longitude_deg);
    for (const auto& r : c.target.regions) f.add(r.lat_min_deg).add(r.lat_max_deg).add(r.lon_min_deg).add(r.lon_max_deg);
    const auto& fr = c.frame;
    f.add(fr.area_km2).add(fr.gsd_m_per_px).add(fr.image_width_px).add(fr.image_height_px).add(fr.image_bits);
    f.add(fr.bbox_bits).add(fr.vessels_per_image).add(fr.vessel_fraction).add(fr.recall);
    f.add(c.compute.cpu_hz).add(c.compute.cores).add(c.compute.complexity_mean).add(c.compute.gamma_shape);
    const auto& l = c.links;
    f.add(l.rate_intra_bps).add(l.rate_inter_bps).add(l.rate_downlink_bps).add(l.loss_min).add(l.loss_max);
    f.add(to_string(l.loss_mode)).add(l.packet_bits);
    if (c.distance_bounds) f.add(c.distance_bounds->min_km).add(c.distance_bounds->max_km);
    f.add(c.communication_losses).add(c.detection_losses).add(c.processing_satellites);
    f.add(to_string(c.distribution)).add(c.horizon_s).add(c.step_s);
    return f.hex();
}

namespace {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return Rng(seq);
}

constexpr std::uint64_t sim_stream = 0;
constexpr std::uint64_t target_stream = 1;

double route_transfer_time(const RoutePath& path, double payload_bits, const LinkModel& links) {
    double t = 0.0;
    for (std::size_t h = 0; h < path.hop_km.size(); ++h) {
        t += payload_bits / links.rate_bps(path.hop_class[h]);
        t += path.hop_km[h] / constants::speed_of_light_km_s;
    }
    return t;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, std::uint64_t seed, const GeodeticPoint& target) {
    config.validate();
    target.validate();

    const Constellation constellation(config.constellation);
    const Torus torus(config.constellation);
    const CoverageScanner scanner(constellation, target, config.max_off_nadir_deg, config.step_s);

    ScenarioResult result;
    result.target = target;
    result.seed = seed;
    result.config_hash = config_fingerprint(config);
    result.distance_bounds = config.distance_bounds ? *config.distance_bounds : adjacent_distance_bounds(constellation);

    LinkModel links = config.links;
    links.d_min_km = result.distance_bounds.min_km;
    links.d_max_km = result.distance_bounds.max_km;
    if (config.communication_losses) links.validate();

    const double dt = config.step_s;
    const double horizon = config.horizon_s;
    const auto last_step = static_cast<long long>(std::floor(horizon / dt + 1e-9));
    const double coverage = static_cast<double>(scanner.count_covered(last_step)) / static_cast<double>(last_step + 1);

    const auto frame_bits = config.frame.frame_bits();
    const double rho = compression_factor(config.frame.image_bits, config.frame.vessels_per_image, config.frame.bbox_bits);
    const int n = config.processing_satellites;
    const auto fragments = fragment(frame_bits, n);
    const double gateway_give_up = 2.0 * horizon;

    Rng rng = make_rng(seed, sim_stream);
    std::vector<Vec3> positions;
    TimingAverages sums;
    double previous_capture = 0.0;
    long long step = 0;

    while (auto covered = scanner.first_covered(step, last_step)) {
        const long long k = *covered;
        const double t_capture = static_cast<double>(k) * dt;
        const auto capturer = constellation.id_of(scanner.probe(k).best_index);
        const auto processors = processing_set(torus, capturer, n);

        // Fragment distribution over ISLs from the capturer.
        constellation.positions_at(t_capture, positions);
        std::vector<double> fragment_arrival(static_cast<std::size_t>(n), t_capture);
        bool distribution_ok = true;
        double transmitter_free = t_capture;
        for (int j = 1; j < n; ++j) {
            const auto bits = static_cast<double>(fragments[static_cast<std::size_t>(j)]);
            const RoutePath path = min_hop_path(torus, capturer, processors[static_cast<std::size_t>(j)], positions);
            double start = t_capture;
            if (config.distribution == DistributionMode::sequential && path.hops() > 0) {
                start = transmitter_free;
                transmitter_free += bits / links.rate_bps(path.hop_class.front());
            }
            fragment_arrival[static_cast<std::size_t>(j)] = start + route_transfer_time(path, bits, links);
            if (config.communication_losses) distribution_ok = evaluate_route_loss(rng, path, bits, links) && distribution_ok;
        }

        // Processing.
        std::vector<double> done(static_cast<std::size_t>(n));
        double max_proc = 0.0;
        for (std::size_t j = 0; j < done.size(); ++j) {
            const double c = sample_complexity(rng, config.compute);
            const double t_proc = processing_time(static_cast<double>(fragments[j]), c, config.compute);
            max_proc = std::max(max_proc, t_proc);
            done[j] = fragment_arrival[j] + t_proc;
        }
        const bool detected = !config.detection_losses || detection_succeeds(rng, config.frame.recall);

        // Semantic payload routing and downlink, timed from each completion.
        bool routing_ok = true;
        std::vector<double> arrivals(done.size());
        double max_route = 0.0, max_down = 0.0;
        for (std::size_t j = 0; j < done.size(); ++j) {
            const double payload = semantic_payload(static_cast<double>(fragments[j]), config.frame.vessel_fraction, rho);
            double leg_start = done[j];
            std::optional<Gateway> gw;
            while (true) {
                constellation.positions_at(leg_start, positions);
                const Vec3 gs = ground_to_inertial(config.ground_station, leg_start).position_km;
                gw = select_gateway(torus, positions, processors[j], gs, config.min_elevation_deg);
                if (gw || leg_start > gateway_give_up) break;
                leg_start += dt;
            }
            if (!gw) {
                routing_ok = false;
                arrivals[j] = leg_start;
                max_route = std::max(max_route, leg_start - done[j]);
                continue;
            }
            const double isl = (leg_start - done[j]) + route_transfer_time(gw->path, payload, links);
            const double down = payload / links.rate_downlink_bps + gw->slant_km / constants::speed_of_light_km_s;
            arrivals[j] = done[j] + isl + down;
            max_route = std::max(max_route, isl);
            max_down = std::max(max_down, down);
            if (config.communication_losses) routing_ok = evaluate_route_loss(rng, gw->path, payload, links) && routing_ok;
        }

        FrameRecord rec;
        rec.index = static_cast<int>(result.ledger.size()) + 1;
        rec.capture_s = t_capture;
        rec.arrival_s = aggregate_arrival(arrivals);
        rec.arrivals_s = std::move(arrivals);
        rec.network_s = rec.arrival_s - rec.capture_s;
        rec.interframe_s = t_capture - previous_capture;
        if (!distribution_ok) rec.outcome = FrameOutcome::lost_communication;
        else if (!detected) rec.outcome = FrameOutcome::lost_detection;
        else if (!routing_ok) rec.outcome = FrameOutcome::lost_communication;
        result.ledger.push_back(std::move(rec));

        sums.distribute_s += *std::max_element(fragment_arrival.begin(), fragment_arrival.end()) - t_capture;
        sums.process_s += max_proc;
        sums.route_s += max_route;
        sums.downlink_s += max_down;

        previous_capture = t_capture;
        // The next frame waits for every fragment to finish processing.
        const double released = *std::max_element(done.begin(), done.end());
        step = std::max(k + 1, static_cast<long long>(std::ceil(released / dt - 1e-9)));
    }

    if (!result.ledger.empty()) {
        const double frames = static_cast<double>(result.ledger.size());
        result.timing = {sums.distribute_s / frames, sums.process_s / frames, sums.route_s / frames,
                         sums.downlink_s / frames};
    }
    result.summary = summarize(result.ledger, horizon, coverage);
    return result;
}

GeodeticPoint replication_target(const ScenarioConfig& config, std::uint64_t seed, int run) {
    if (config.target.fixed) return *config.target.fixed;
    Rng rng = make_rng(seed + static_cast<std::uint64_t>(run), target_stream);
    return sample_target(rng, config.target.regions);
}

ScenarioResult run_scenario(const ScenarioConfig& config, std::uint64_t seed) {
    return run_scenario(config, seed, replication_target(config, seed, 0));
}

Estimate estimate(const std::vector<double>& samples) {
    Estimate e;
    e.samples = static_cast<int>(samples.size());
    if (samples.empty()) return e;
    double sum = 0.0;
    for (double v : samples) sum += v;
    e.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double v : samples) ss += (v - e.mean) * (v - e.mean);
        const double var = ss / static_cast<double>(samples.size() - 1);
        e.std_error = std::sqrt(var / static_cast<double>(samples.size()));
    }
    return e;
}

MonteCarloResult monte_carlo(const ScenarioConfig& config, int n_runs, unsigned workers) {
    if (n_runs < 1) throw ValidationError("runs must be >= 1");
    config.validate();

    MonteCarloResult out;
    out.config_hash = config_fingerprint(config);
    out.runs.resize(static_cast<std::size_t>(n_runs));

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n_runs));

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (int r = next++; r < n_runs; r = next++) {
            try {
                const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(r);
                out.runs[static_cast<std::size_t>(r)] = run_scenario(config, seed, replication_target(config, config.seed, r));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> aoi, paoi, cov, dist, proc, route, down;
    for (const auto& run : out.runs) {
        const auto& s = run.summary;
        if (s.aoi_avg) aoi.push_back(*s.aoi_avg);
        if (s.paoi_avg) paoi.push_back(*s.paoi_avg);
        cov.push_back(s.coverage_probability);
        if (!run.ledger.empty()) {
            dist.push_back(run.timing.distribute_s);
            proc.push_back(run.timing.process_s);
            route.push_back(run.timing.route_s);
            down.push_back(run.timing.downlink_s);
        }
        out.delivered += s.delivered;
        out.lost_communication += s.lost_communication;
        out.lost_detection += s.lost_detection;
    }
    out.aoi = estimate(aoi);
    out.paoi = estimate(paoi);
    out.coverage = estimate(cov);
    out.distribute_s = estimate(dist);
    out.process_s = estimate(proc);
    out.route_s = estimate(route);
    out.downlink_s = estimate(down);
    return out;
}

std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::planes: return "planes";
        case SweepParameter::sats_per_plane: return "sats_per_plane";
        case SweepParameter::processing_satellites: return "processing_satellites";
    }
    return "unknown";
}

SweepParameter sweep_parameter_from_string(const std::string& name) {
    if (name == "planes") return SweepParameter::planes;
    if (name == "sats_per_plane") return SweepParameter::sats_per_plane;
    if (name == "processing_satellites") return SweepParameter::processing_satellites;
    throw ValidationError("sweep parameter must be planes, sats_per_plane or processing_satellites, got '" + name + "'");
}

ScenarioConfig with_parameter(ScenarioConfig config, SweepParameter p, int value) {
    switch (p) {
        case SweepParameter::planes:
            config.constellation.planes = value;
            if (config.constellation.phasing >= value) config.constellation.phasing = value > 1 ? 1 : 0;
            break;
        case SweepParameter::sats_per_plane: config.constellation.sats_per_plane = value; break;
        case SweepParameter::processing_satellites: config.processing_satellites = value; break;
    }
    return config;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& config, SweepParameter parameter, const std::vector<int>& values,
                              int n_runs, unsigned workers) {
    if (values.empty()) throw ValidationError("sweep values must be non-empty");
    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (int v : values) out.push_back({v, monte_carlo(with_parameter(config, parameter, v), n_runs, workers)});
    return out;
}

}  // namespace leosim
