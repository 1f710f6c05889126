#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace leosim {

enum class FrameOutcome { delivered, lost_communication, lost_detection };

std::string to_string(FrameOutcome outcome);

/// Timing ledger entry for one captured frame.
struct FrameRecord {
    int index = 0;                     // 1-based capture order
    double capture_s = 0.0;            // t_i
    std::vector<double> arrivals_s;    // per processing satellite
    double arrival_s = 0.0;            // t'_i = max(arrivals_s)
    double network_s = 0.0;            // T_i = t'_i - t_i
    double interframe_s = 0.0;         // Y_i = t_i - t_{i-1}, previous capture (t_0 = 0)
    FrameOutcome outcome = FrameOutcome::delivered;

    bool delivered() const { return outcome == FrameOutcome::delivered; }
};

struct AoiSummary {
    std::optional<double> aoi_avg;     // undefined without a delivered update
    std::optional<double> paoi_avg;
    double coverage_probability = 0.0;
    std::size_t delivered = 0;
    std::size_t lost_communication = 0;
    std::size_t lost_detection = 0;
    double horizon_s = 0.0;
};

double aggregate_arrival(std::span<const double> per_satellite_arrivals);

// Q = Y*T + Y^2/2, the area between consecutive age resets.
double trapezoid_area(double network_s, double interframe_s);

/// Updates that reset the age within [0, tau]: delivered, arrived by tau,
/// and not overtaken by a fresher update that arrived no later. The result
/// is strictly increasing in both capture and arrival time.
std::vector<FrameRecord> effective_updates(std::span<const FrameRecord> records, double horizon_s);

/**
 * Time-average age over [0, tau] with age 0 at t = 0.
 *
 *   tau * AoI = Q_ini + sum_{i>=2} Q_i + Q_last
 *
 * Q_i uses the interval Y_i to the previous effective update. Q_ini treats
 * observation start as an update generated at 0 (Y_1 = t_1) and
 * Q_last = (tau - t_N)^2 / 2 closes the tail above the last reset.
 * Throws UndefinedAgeError without an effective update.
 */
double average_aoi(std::span<const FrameRecord> records, double horizon_s);

// (t'_1 + sum_{i>=2} (t'_i - t_{i-1})) / N over effective updates.
double average_paoi(std::span<const FrameRecord> records, double horizon_s);

struct AgeOracleResult {
    double aoi_avg = 0.0;
    std::optional<double> paoi_avg;
};

/// Brute-force reference: samples age(t) at cell midpoints of width ~dt and
/// reads peaks from the last sample before each reset.
AgeOracleResult discrete_age_oracle(std::span<const FrameRecord> records, double horizon_s, double dt_s);

// Recomputes the summary fields that depend only on the ledger.
AoiSummary summarize(std::span<const FrameRecord> records, double horizon_s, double coverage_probability);

}  // namespace leosim
