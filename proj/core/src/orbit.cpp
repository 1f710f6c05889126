#include "leosim/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "leosim/constants.hpp"
#include "leosim/error.hpp"

namespace leosim {

using constants::deg_to_rad;
using constants::rad_to_deg;

std::string to_string(ShellType type) {
    return type == ShellType::walker_star ? "walker-star" : "walker-delta";
}

ShellType shell_type_from_string(const std::string& name) {
    if (name == "walker-star") return ShellType::walker_star;
    if (name == "walker-delta") return ShellType::walker_delta;
    throw ValidationError("shell_type must be walker-star or walker-delta, got '" + name + "'");
}

std::string to_string(SatelliteId id) {
    return "(" + std::to_string(id.plane) + "," + std::to_string(id.slot) + ")";
}

void ConstellationSpec::validate() const {
    if (planes < 1) throw ValidationError("planes must be >= 1");
    if (sats_per_plane < 1) throw ValidationError("sats_per_plane must be >= 1");
    if (!(altitude_km > 0.0)) throw ValidationError("altitude_km must be > 0");
    if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0))
        throw ValidationError("inclination_deg must be in [0, 180]");
    if (phasing < 0 || phasing >= planes)
        throw ValidationError("phasing_factor must be in [0, planes)");
}

double ConstellationSpec::orbit_radius_km() const {
    return constants::earth_radius_km + altitude_km;
}

void GeodeticPoint::validate() const {
    if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0))
        throw ValidationError("latitude_deg must be in [-90, 90]");
    if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0))
        throw ValidationError("longitude_deg must be in [-180, 180]");
}

double OrbitalElements::mean_motion_rad_s() const {
    return std::sqrt(constants::earth_mu_km3_s2 / (radius_km * radius_km * radius_km));
}

double OrbitalElements::period_s() const {
    return 2.0 * std::numbers::pi / mean_motion_rad_s();
}

double orbital_period_s(double altitude_km) {
    return OrbitalElements{constants::earth_radius_km + altitude_km, 0, 0, 0}.period_s();
}

std::vector<Satellite> build_constellation(const ConstellationSpec& spec) {
    spec.validate();
    const double spread = spec.shell == ShellType::walker_star ? 180.0 : 360.0;
    const double raan_step = spread / spec.planes;
    const double slot_step = 360.0 / spec.sats_per_plane;
    const double phase_step = 360.0 * spec.phasing / (spec.planes * spec.sats_per_plane);

    std::vector<Satellite> sats;
    sats.reserve(static_cast<std::size_t>(spec.size()));
    for (int p = 0; p < spec.planes; ++p) {
        for (int s = 0; s < spec.sats_per_plane; ++s) {
            OrbitalElements el;
            el.radius_km = spec.orbit_radius_km();
            el.inclination_deg = spec.inclination_deg;
            el.raan_deg = p * raan_step;
            el.initial_anomaly_deg = s * slot_step + p * phase_step;
            sats.push_back({{p, s}, el});
        }
    }
    return sats;
}

namespace {

struct PlaneBasis {
    Vec3 node;
    Vec3 normal;
};

PlaneBasis plane_basis(double raan_deg, double inclination_deg) {
    const double raan = raan_deg * deg_to_rad;
    const double inc = inclination_deg * deg_to_rad;
    const double co = std::cos(raan), so = std::sin(raan);
    const double ci = std::cos(inc), si = std::sin(inc);
    return {{co, so, 0.0}, {-so * ci, co * ci, si}};
}

}  // namespace

CartesianState propagate(const Satellite& sat, double t_s) {
    const auto& el = sat.elements;
    const auto b = plane_basis(el.raan_deg, el.inclination_deg);
    const double u = el.initial_anomaly_deg * deg_to_rad + el.mean_motion_rad_s() * t_s;
    return {el.radius_km * (std::cos(u) * b.node + std::sin(u) * b.normal), Frame::inertial};
}

CartesianState ground_to_inertial(const GeodeticPoint& point, double t_s) {
    const double lat = point.latitude_deg * deg_to_rad;
    const double lon = point.longitude_deg * deg_to_rad + constants::earth_rotation_rad_s * t_s;
    const double r = constants::earth_radius_km;
    return {{r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon), r * std::sin(lat)},
            Frame::inertial};
}

double off_nadir_angle_deg(const CartesianState& sat, const CartesianState& target) {
    const Vec3 los = target.position_km - sat.position_km;
    if (norm(los) < 1e-9) throw GeometryError("off-nadir angle undefined: target coincides with satellite");
    return angle_between(-sat.position_km, los) * rad_to_deg;
}

double elevation_angle_deg(const CartesianState& ground, const CartesianState& sat) {
    const Vec3 los = sat.position_km - ground.position_km;
    const Vec3 up = normalized(ground.position_km);
    return std::atan2(dot(up, los), norm(cross(up, los))) * rad_to_deg;
}

bool is_capturable(const CartesianState& sat, const CartesianState& target, double max_off_nadir_deg) {
    const Vec3 los = sat.position_km - target.position_km;
    if (dot(target.position_km, los) < 0.0) return false;
    return off_nadir_angle_deg(sat, target) <= max_off_nadir_deg;
}

double horizon_off_nadir_deg(double altitude_km) {
    const double re = constants::earth_radius_km;
    return std::asin(re / (re + altitude_km)) * rad_to_deg;
}

double coverage_half_angle_deg(double altitude_km, double max_off_nadir_deg) {
    const double re = constants::earth_radius_km;
    const double k = (re + altitude_km) / re;
    if (max_off_nadir_deg >= horizon_off_nadir_deg(altitude_km)) return std::acos(1.0 / k) * rad_to_deg;
    if (max_off_nadir_deg <= 0.0) return 0.0;
    // Law of sines in the Earth-centre / satellite / target triangle; the
    // target-side angle is obtuse for the near intersection.
    const double gamma = std::asin(k * std::sin(max_off_nadir_deg * deg_to_rad)) * rad_to_deg;
    return gamma - max_off_nadir_deg;
}

Constellation::Constellation(const ConstellationSpec& spec)
    : spec_(spec), satellites_(build_constellation(spec)) {
    radius_ = spec_.orbit_radius_km();
    mean_motion_ = OrbitalElements{radius_, 0, 0, 0}.mean_motion_rad_s();
    basis_.reserve(satellites_.size());
    for (const auto& sat : satellites_) {
        const auto b = plane_basis(sat.elements.raan_deg, sat.elements.inclination_deg);
        basis_.push_back({b.node, b.normal, sat.elements.initial_anomaly_deg * deg_to_rad});
    }
}

std::size_t Constellation::index_of(SatelliteId id) const {
    return static_cast<std::size_t>(id.plane) * static_cast<std::size_t>(spec_.sats_per_plane) +
           static_cast<std::size_t>(id.slot);
}

Vec3 Constellation::position(std::size_t index, double t_s) const {
    const auto& b = basis_[index];
    const double u = b.anomaly0 + mean_motion_ * t_s;
    return radius_ * (std::cos(u) * b.node + std::sin(u) * b.normal);
}

void Constellation::positions_at(double t_s, std::vector<Vec3>& out) const {
    out.resize(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) out[i] = position(i, t_s);
}

std::vector<Vec3> Constellation::positions_at(double t_s) const {
    std::vector<Vec3> out;
    positions_at(t_s, out);
    return out;
}

}  // namespace leosim
