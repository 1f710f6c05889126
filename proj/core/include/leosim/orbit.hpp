#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "leosim/vec3.hpp"

namespace leosim {

enum class ShellType { walker_star, walker_delta };

std::string to_string(ShellType type);
ShellType shell_type_from_string(const std::string& name);

/**
 * Geometry of a single walker shell.
 *
 * Planes are spread over 180 deg of RAAN (star) or 360 deg (delta). Slot s of
 * plane p starts at mean anomaly s*360/N + p*F*360/(M*N).
 */
struct ConstellationSpec {
    int planes = 20;
    int sats_per_plane = 20;
    double altitude_km = 550.0;
    double inclination_deg = 53.0;
    ShellType shell = ShellType::walker_delta;
    int phasing = 1;

    // Throws ValidationError naming the violated bound.
    void validate() const;

    int size() const { return planes * sats_per_plane; }
    double orbit_radius_km() const;

    bool operator==(const ConstellationSpec&) const = default;
};

struct SatelliteId {
    int plane = 0;
    int slot = 0;

    auto operator<=>(const SatelliteId&) const = default;
};

std::string to_string(SatelliteId id);

struct GeodeticPoint {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;

    void validate() const;

    bool operator==(const GeodeticPoint&) const = default;
};

enum class Frame { inertial, earth_fixed };

struct CartesianState {
    Vec3 position_km;
    Frame frame = Frame::inertial;
};

struct OrbitalElements {
    double radius_km = 0.0;
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double initial_anomaly_deg = 0.0;  // argument of latitude at t = 0

    double mean_motion_rad_s() const;
    double period_s() const;
};

struct Satellite {
    SatelliteId id;
    OrbitalElements elements;
};

// Plane-major order: index = plane * N + slot.
std::vector<Satellite> build_constellation(const ConstellationSpec& spec);

CartesianState propagate(const Satellite& sat, double t_s);

// Spherical Earth point rotated by the sidereal rate; longitude 0 lies on +x at t = 0.
CartesianState ground_to_inertial(const GeodeticPoint& point, double t_s);

// Angle at the satellite between nadir and the line of sight, degrees in [0, 180].
double off_nadir_angle_deg(const CartesianState& sat, const CartesianState& target);

// Elevation of the satellite above the ground point's local horizontal, degrees.
double elevation_angle_deg(const CartesianState& ground, const CartesianState& sat);

// Off-nadir limit and line of sight both satisfied.
bool is_capturable(const CartesianState& sat, const CartesianState& target, double max_off_nadir_deg);

double orbital_period_s(double altitude_km);

/// Earth-central angle between the sub-satellite point and the farthest
/// capturable target. Bounded by the horizon when the off-nadir limit
/// reaches past the limb.
double coverage_half_angle_deg(double altitude_km, double max_off_nadir_deg);

// Off-nadir angle at which the line of sight grazes the Earth.
double horizon_off_nadir_deg(double altitude_km);

/**
 * Precomputed circular orbits for fast bulk propagation.
 *
 * Each orbit is stored as r * (cos u * P + sin u * Q) with P the ascending
 * node direction and Q the in-plane normal to P.
 */
class Constellation {
public:
    explicit Constellation(const ConstellationSpec& spec);

    const ConstellationSpec& spec() const { return spec_; }
    const std::vector<Satellite>& satellites() const { return satellites_; }
    std::size_t size() const { return satellites_.size(); }

    std::size_t index_of(SatelliteId id) const;
    SatelliteId id_of(std::size_t index) const { return satellites_[index].id; }

    Vec3 position(std::size_t index, double t_s) const;
    // Fills `out` (resized to size()) with inertial positions at t.
    void positions_at(double t_s, std::vector<Vec3>& out) const;
    std::vector<Vec3> positions_at(double t_s) const;

    double mean_motion_rad_s() const { return mean_motion_; }
    double radius_km() const { return radius_; }

private:
    struct Basis {
        Vec3 node;
        Vec3 normal;
        double anomaly0;
    };

    ConstellationSpec spec_;
    std::vector<Satellite> satellites_;
    std::vector<Basis> basis_;
    double radius_ = 0.0;
    double mean_motion_ = 0.0;
};

}  // namespace leosim
