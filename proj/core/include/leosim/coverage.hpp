#pragma once

#include <cstddef>
#include <optional>

#include "leosim/orbit.hpp"

namespace leosim {

/**
 * Scans a time grid k * step for epochs at which some satellite can capture
 * a ground target.
 *
 * A satellite covers the target when the Earth-central angle between its
 * sub-satellite point and the target is within coverage_half_angle_deg,
 * which is equivalent to is_capturable(). The central angle changes no
 * faster than the orbital mean motion plus the Earth rotation rate, so
 * after each full evaluation the scanner jumps over every grid step whose
 * state is already decided by that bound.
 */
class CoverageScanner {
public:
    CoverageScanner(const Constellation& constellation, GeodeticPoint target, double max_off_nadir_deg,
                    double step_s);

    struct Probe {
        bool covered = false;
        std::size_t best_index = 0;  // satellite with the smallest central angle
        double min_angle_rad = 0.0;
    };

    Probe probe_time(double t_s) const;
    Probe probe(long long step) const { return probe_time(static_cast<double>(step) * step_s_); }

    // First covered step in [from, last], if any.
    std::optional<long long> first_covered(long long from, long long last) const;

    // Covered steps in [0, last].
    long long count_covered(long long last) const;

    double step_s() const { return step_s_; }
    double half_angle_rad() const { return half_angle_; }

private:
    // Steps after `step` (exclusive) known to share its covered state.
    long long settled_steps(const Probe& p) const;

    const Constellation* constellation_;
    GeodeticPoint target_;
    double step_s_;
    double half_angle_;
    double cos_half_angle_;
    double max_rate_rad_s_;
};

/// Fraction of the epochs k * dt in [0, tau] at which the target is capturable.
double coverage_probability(const Constellation& constellation, GeodeticPoint target, double max_off_nadir_deg,
                            double horizon_s, double dt_s);

}  // namespace leosim
