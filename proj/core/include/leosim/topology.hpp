#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "leosim/orbit.hpp"
#include "leosim/vec3.hpp"

namespace leosim {

enum class LinkClass { intra_plane, inter_plane, downlink };

/// M x N inter-satellite link grid with wraparound in both axes.
class Torus {
public:
    Torus(int planes, int sats_per_plane);
    explicit Torus(const ConstellationSpec& spec) : Torus(spec.planes, spec.sats_per_plane) {}

    int planes() const { return planes_; }
    int sats_per_plane() const { return slots_; }
    std::size_t size() const { return static_cast<std::size_t>(planes_) * static_cast<std::size_t>(slots_); }

    std::size_t index_of(SatelliteId id) const {
        return static_cast<std::size_t>(id.plane) * static_cast<std::size_t>(slots_) +
               static_cast<std::size_t>(id.slot);
    }
    SatelliteId id_of(std::size_t index) const {
        return {static_cast<int>(index / static_cast<std::size_t>(slots_)),
                static_cast<int>(index % static_cast<std::size_t>(slots_))};
    }

    // Wraps (plane + dp, slot + ds) onto the grid.
    SatelliteId offset(SatelliteId id, int dp, int ds) const;

    // Minimum ISL hop count between two satellites.
    int hop_distance(SatelliteId a, SatelliteId b) const;

    /// Order: (p, s-1), (p, s+1), (p-1, s), (p+1, s).
    /// Throws TopologyError when M < 3 or N < 3 (neighbors would repeat).
    std::array<SatelliteId, 4> neighbors(SatelliteId id) const;

    // Class of the edge between two adjacent satellites.
    LinkClass edge_class(SatelliteId a, SatelliteId b) const {
        return a.plane == b.plane ? LinkClass::intra_plane : LinkClass::inter_plane;
    }

private:
    int planes_;
    int slots_;
};

std::array<SatelliteId, 4> neighbors(SatelliteId id, const ConstellationSpec& spec);

struct RoutePath {
    std::vector<SatelliteId> nodes;   // src ... dst; a single entry for src == dst
    std::vector<double> hop_km;       // nodes.size() - 1 entries
    std::vector<LinkClass> hop_class;
    double total_km = 0.0;            // sum of ISL hops, downlink excluded
    std::optional<double> downlink_km;

    int hops() const { return static_cast<int>(hop_km.size()); }
};

/**
 * Minimum-distance path inside the minimum-hop region.
 *
 * Minimum-hop paths on a torus are the monotone lattice paths of the
 * rectangle spanned by the shorter ring direction in each axis (both
 * directions when the two are equally short). A backward DP over each
 * rectangle gives the cheapest completion per cell; a forward greedy walk
 * then picks the lexicographically smallest optimal sequence.
 *
 * `positions` is indexed by Torus::index_of.
 */
RoutePath min_hop_path(const Torus& torus, SatelliteId src, SatelliteId dst, std::span<const Vec3> positions);

struct Gateway {
    SatelliteId satellite;
    RoutePath path;       // ISL path from the querying satellite, downlink_km set
    double slant_km = 0.0;

    double total_km() const { return path.total_km + slant_km; }
};

/// Downlink satellite for traffic originating at `from`: among satellites at
/// or above `min_elevation_deg` at the ground station, the one minimising
/// min-hop ISL distance plus slant range. Ties go to the smaller id.
std::optional<Gateway> select_gateway(const Torus& torus, std::span<const Vec3> positions, SatelliteId from,
                                      const Vec3& ground_station, double min_elevation_deg);

/// Min-hop/min-distance cost from `src` to every satellite in one layered
/// BFS pass. Same path set as min_hop_path, summed in forward order.
std::vector<double> min_hop_distances_from(const Torus& torus, SatelliteId src, std::span<const Vec3> positions);

struct DistanceBounds {
    double min_km = 0.0;
    double max_km = 0.0;

    bool operator==(const DistanceBounds&) const = default;
};

// Extremes of ISL edge lengths over all edges and the given sample times.
DistanceBounds adjacent_distance_bounds(const Constellation& constellation, std::span<const double> times_s);

// One orbital period sampled every `step_s`.
DistanceBounds adjacent_distance_bounds(const Constellation& constellation, double step_s = 10.0);

/// Capturer followed by the n-1 nearest satellites by grid distance; within a
/// ring the same plane comes first, then the -1/+1 planes, and so on.
std::vector<SatelliteId> processing_set(const Torus& torus, SatelliteId capturer, int n);

}  // namespace leosim
