#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leosim/aoi.hpp"
#include "leosim/link.hpp"
#include "leosim/orbit.hpp"
#include "leosim/task_model.hpp"
#include "leosim/topology.hpp"

namespace leosim {

// Latitude/longitude box in degrees. lon_min > lon_max wraps across 180.
struct LatLonRegion {
    double lat_min_deg = 0.0;
    double lat_max_deg = 0.0;
    double lon_min_deg = 0.0;
    double lon_max_deg = 0.0;

    void validate() const;
    double lon_span_deg() const;
    // Spherical surface weight, proportional to area.
    double weight() const;

    bool operator==(const LatLonRegion&) const = default;
};

// Pacific, Atlantic and Indian ocean boxes used as the default water mask.
std::vector<LatLonRegion> default_water_mask();

struct TargetSpec {
    std::optional<GeodeticPoint> fixed;
    std::vector<LatLonRegion> regions = default_water_mask();

    bool operator==(const TargetSpec&) const = default;
};

// Area-uniform draw over the union of the rectangles.
GeodeticPoint sample_target(Rng& rng, const std::vector<LatLonRegion>& regions);

enum class DistributionMode { sequential, parallel };

std::string to_string(DistributionMode mode);
DistributionMode distribution_mode_from_string(const std::string& name);

struct ScenarioConfig {
    ConstellationSpec constellation;
    double max_off_nadir_deg = 50.0;
    GeodeticPoint ground_station{34.05, -118.24};
    double min_elevation_deg = 10.0;
    TargetSpec target;
    FrameModel frame;
    ComputeModel compute;
    // d_min/d_max are overwritten per constellation unless distance_bounds is set.
    LinkModel links;
    std::optional<DistanceBounds> distance_bounds;
    bool communication_losses = true;
    bool detection_losses = true;
    int processing_satellites = 5;
    DistributionMode distribution = DistributionMode::sequential;
    double horizon_s = 86164.1;
    double step_s = 1.0;
    std::uint64_t seed = 1;

    // Throws ValidationError naming the offending field.
    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

// Stable hash of every simulation-relevant field except the seed.
std::string config_fingerprint(const ScenarioConfig& config);

struct TimingAverages {
    double distribute_s = 0.0;
    double process_s = 0.0;
    double route_s = 0.0;     // ISL legs, including waits for a visible gateway
    double downlink_s = 0.0;
};

struct ScenarioResult {
    GeodeticPoint target;
    std::uint64_t seed = 0;
    std::string config_hash;
    AoiSummary summary;
    std::vector<FrameRecord> ledger;
    TimingAverages timing;  // means over captured frames
    DistanceBounds distance_bounds;
};

/**
 * One replication over [0, tau].
 *
 * At every grid step with an idle pipeline the best-placed covering
 * satellite captures a frame. The frame is split over the processing set,
 * fragments travel from the capturer over ISLs, each processor runs its
 * share, then routes its semantic payload through the min-hop region to the
 * best visible gateway and down to the ground station. The pipeline is
 * released when the last fragment finishes processing.
 */
ScenarioResult run_scenario(const ScenarioConfig& config, std::uint64_t seed, const GeodeticPoint& target);

// Fixed target if configured, otherwise the run-0 target of monte_carlo().
ScenarioResult run_scenario(const ScenarioConfig& config, std::uint64_t seed);

// Target for replication `run` under base seed `seed`.
GeodeticPoint replication_target(const ScenarioConfig& config, std::uint64_t seed, int run);

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    int samples = 0;
};

struct MonteCarloResult {
    std::string config_hash;
    Estimate aoi;
    Estimate paoi;
    Estimate coverage;
    Estimate distribute_s;
    Estimate process_s;
    Estimate route_s;
    Estimate downlink_s;
    std::size_t delivered = 0;
    std::size_t lost_communication = 0;
    std::size_t lost_detection = 0;
    std::vector<ScenarioResult> runs;
};

Estimate estimate(const std::vector<double>& samples);

/// n_runs independent replications, run r seeded with config.seed + r and
/// its own target draw. Replications run on a worker pool; aggregation is
/// by run index, so results do not depend on scheduling.
MonteCarloResult monte_carlo(const ScenarioConfig& config, int n_runs, unsigned workers = 0);

enum class SweepParameter { planes, sats_per_plane, processing_satellites };

std::string to_string(SweepParameter p);
SweepParameter sweep_parameter_from_string(const std::string& name);

// Copy of `config` with the swept field set.
ScenarioConfig with_parameter(ScenarioConfig config, SweepParameter p, int value);

struct SweepPoint {
    int value = 0;
    MonteCarloResult result;
};

std::vector<SweepPoint> sweep(const ScenarioConfig& config, SweepParameter parameter, const std::vector<int>& values,
                              int n_runs, unsigned workers = 0);

}  // namespace leosim
