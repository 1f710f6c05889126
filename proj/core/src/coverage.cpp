#include "leosim/coverage.hpp"

#include <cmath>

#include "leosim/constants.hpp"
#include "leosim/error.hpp"

namespace leosim {

CoverageScanner::CoverageScanner(const Constellation& constellation, GeodeticPoint target, double max_off_nadir_deg,
                                 double step_s)
    : constellation_(&constellation), target_(target), step_s_(step_s) {
    if (!(step_s > 0.0)) throw ValidationError("time_step_s must be > 0");
    target.validate();
    half_angle_ = coverage_half_angle_deg(constellation.spec().altitude_km, max_off_nadir_deg) * constants::deg_to_rad;
    cos_half_angle_ = std::cos(half_angle_);
    // 1% slack on the rate bound keeps the skip conservative under rounding.
    max_rate_rad_s_ = 1.01 * (constellation.mean_motion_rad_s() + constants::earth_rotation_rad_s);
}

CoverageScanner::Probe CoverageScanner::probe_time(double t_s) const {
    const Vec3 target = normalized(ground_to_inertial(target_, t_s).position_km);
    const double inv_r = 1.0 / constellation_->radius_km();
    Probe p;
    double best_dot = -2.0;
    for (std::size_t i = 0; i < constellation_->size(); ++i) {
        const double d = dot(constellation_->position(i, t_s), target) * inv_r;
        if (d > best_dot) {
            best_dot = d;
            p.best_index = i;
        }
    }
    p.covered = best_dot >= cos_half_angle_;
    p.min_angle_rad = std::acos(std::min(1.0, best_dot));
    return p;
}

long long CoverageScanner::settled_steps(const Probe& p) const {
    const double margin = std::abs(p.min_angle_rad - half_angle_);
    const double steps = margin / (max_rate_rad_s_ * step_s_);
    if (!(steps < 1e15)) return 0;
    const auto n = static_cast<long long>(std::floor(steps));
    // Uncovered: offsets strictly below `steps` stay uncovered.
    return p.covered ? n : std::max<long long>(0, n - 1);
}

std::optional<long long> CoverageScanner::first_covered(long long from, long long last) const {
    long long k = from;
    while (k <= last) {
        const Probe p = probe(k);
        if (p.covered) return k;
        k += settled_steps(p) + 1;
    }
    return std::nullopt;
}

long long CoverageScanner::count_covered(long long last) const {
    long long covered = 0;
    long long k = 0;
    while (k <= last) {
        const Probe p = probe(k);
        const long long run = std::min(settled_steps(p), last - k) + 1;
        if (p.covered) covered += run;
        k += run;
    }
    return covered;
}

double coverage_probability(const Constellation& constellation, GeodeticPoint target, double max_off_nadir_deg,
                            double horizon_s, double dt_s) {
    if (!(horizon_s >= 0.0)) throw ValidationError("horizon_s must be >= 0");
    const CoverageScanner scanner(constellation, target, max_off_nadir_deg, dt_s);
    const auto last = static_cast<long long>(std::floor(horizon_s / dt_s + 1e-9));
    return static_cast<double>(scanner.count_covered(last)) / static_cast<double>(last + 1);
}

}  // namespace leosim
