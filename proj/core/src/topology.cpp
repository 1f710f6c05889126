#include "leosim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <tuple>

#include "leosim/error.hpp"

namespace leosim {

namespace {

int wrap(int v, int n) {
    const int r = v % n;
    return r < 0 ? r + n : r;
}

// Directions (+1/-1) achieving the shortest ring distance from a to b.
std::vector<int> ring_directions(int a, int b, int n, int& hops) {
    const int fwd = wrap(b - a, n);
    const int bwd = wrap(a - b, n);
    hops = std::min(fwd, bwd);
    if (hops == 0) return {1};
    if (fwd < bwd) return {1};
    if (bwd < fwd) return {-1};
    return {1, -1};
}

}  // namespace

Torus::Torus(int planes, int sats_per_plane) : planes_(planes), slots_(sats_per_plane) {
    if (planes < 1 || sats_per_plane < 1) throw ValidationError("torus dimensions must be >= 1");
}

SatelliteId Torus::offset(SatelliteId id, int dp, int ds) const {
    return {wrap(id.plane + dp, planes_), wrap(id.slot + ds, slots_)};
}

int Torus::hop_distance(SatelliteId a, SatelliteId b) const {
    const int dp = wrap(b.plane - a.plane, planes_);
    const int ds = wrap(b.slot - a.slot, slots_);
    return std::min(dp, planes_ - dp) + std::min(ds, slots_ - ds);
}

std::array<SatelliteId, 4> Torus::neighbors(SatelliteId id) const {
    if (planes_ < 3 || slots_ < 3)
        throw TopologyError("four distinct ISL neighbors need planes >= 3 and sats_per_plane >= 3");
    return {offset(id, 0, -1), offset(id, 0, 1), offset(id, -1, 0), offset(id, 1, 0)};
}

std::array<SatelliteId, 4> neighbors(SatelliteId id, const ConstellationSpec& spec) {
    return Torus(spec).neighbors(id);
}

RoutePath min_hop_path(const Torus& torus, SatelliteId src, SatelliteId dst, std::span<const Vec3> positions) {
    int hp = 0, hs = 0;
    const auto dirs_p = ring_directions(src.plane, dst.plane, torus.planes(), hp);
    const auto dirs_s = ring_directions(src.slot, dst.slot, torus.sats_per_plane(), hs);

    auto pos = [&](SatelliteId id) -> const Vec3& { return positions[torus.index_of(id)]; };

    std::optional<RoutePath> best;
    for (int sp : dirs_p) {
        for (int ss : dirs_s) {
            auto node = [&](int a, int b) { return torus.offset(src, sp * a, ss * b); };
            const int w = hs + 1;
            std::vector<double> cost(static_cast<std::size_t>((hp + 1) * w), 0.0);
            auto at = [&](int a, int b) -> double& { return cost[static_cast<std::size_t>(a * w + b)]; };

            for (int a = hp; a >= 0; --a) {
                for (int b = hs; b >= 0; --b) {
                    if (a == hp && b == hs) continue;
                    double c = std::numeric_limits<double>::infinity();
                    const SatelliteId here = node(a, b);
                    if (a < hp) c = std::min(c, distance(pos(here), pos(node(a + 1, b))) + at(a + 1, b));
                    if (b < hs) c = std::min(c, distance(pos(here), pos(node(a, b + 1))) + at(a, b + 1));
                    at(a, b) = c;
                }
            }

            RoutePath path;
            path.nodes.push_back(src);
            int a = 0, b = 0;
            while (a < hp || b < hs) {
                const SatelliteId here = node(a, b);
                struct Step {
                    int a, b;
                    SatelliteId id;
                    double hop;
                    double via;
                };
                std::optional<Step> pick;
                auto consider = [&](int na, int nb) {
                    const SatelliteId next = node(na, nb);
                    const double hop = distance(pos(here), pos(next));
                    const double via = hop + at(na, nb);
                    if (!pick || via < pick->via || (via == pick->via && next < pick->id))
                        pick = Step{na, nb, next, hop, via};
                };
                if (a < hp) consider(a + 1, b);
                if (b < hs) consider(a, b + 1);
                path.hop_class.push_back(torus.edge_class(here, pick->id));
                path.hop_km.push_back(pick->hop);
                path.total_km += pick->hop;
                path.nodes.push_back(pick->id);
                a = pick->a;
                b = pick->b;
            }

            if (!best || path.total_km < best->total_km ||
                (path.total_km == best->total_km && path.nodes < best->nodes))
                best = std::move(path);
        }
    }
    return *best;
}

std::vector<double> min_hop_distances_from(const Torus& torus, SatelliteId src, std::span<const Vec3> positions) {
    const std::size_t n = torus.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<int> hops(n, -1);
    std::vector<double> cost(n, inf);
    std::deque<std::size_t> queue;

    const std::size_t s = torus.index_of(src);
    hops[s] = 0;
    cost[s] = 0.0;
    queue.push_back(s);
    const bool small = torus.planes() < 3 || torus.sats_per_plane() < 3;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        const SatelliteId uid = torus.id_of(u);
        const std::array<SatelliteId, 4> adj = small ? std::array<SatelliteId, 4>{torus.offset(uid, 0, -1),
                                                                                 torus.offset(uid, 0, 1),
                                                                                 torus.offset(uid, -1, 0),
                                                                                 torus.offset(uid, 1, 0)}
                                                     : torus.neighbors(uid);
        for (const auto& vid : adj) {
            const std::size_t v = torus.index_of(vid);
            if (v == u) continue;
            if (hops[v] == -1) {
                hops[v] = hops[u] + 1;
                queue.push_back(v);
            }
            if (hops[v] == hops[u] + 1) cost[v] = std::min(cost[v], cost[u] + distance(positions[u], positions[v]));
        }
    }
    return cost;
}

std::optional<Gateway> select_gateway(const Torus& torus, std::span<const Vec3> positions, SatelliteId from,
                                      const Vec3& ground_station, double min_elevation_deg) {
    // elevation >= e  <=>  up . los >= sin(e) |los|
    const Vec3 up = normalized(ground_station);
    const double sin_min = std::sin(min_elevation_deg * std::acos(-1.0) / 180.0);
    std::optional<std::size_t> best;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<double> isl;
    for (std::size_t i = 0; i < torus.size(); ++i) {
        const Vec3 los = positions[i] - ground_station;
        const double along = dot(up, los);
        if (along < 0.0 || along * along < sin_min * sin_min * dot(los, los)) continue;
        if (isl.empty()) isl = min_hop_distances_from(torus, from, positions);
        const double c = isl[i] + distance(positions[i], ground_station);
        if (c < best_cost) {
            best_cost = c;
            best = i;
        }
    }
    if (!best) return std::nullopt;

    Gateway gw;
    gw.satellite = torus.id_of(*best);
    gw.path = min_hop_path(torus, from, gw.satellite, positions);
    gw.slant_km = distance(positions[*best], ground_station);
    gw.path.downlink_km = gw.slant_km;
    return gw;
}

DistanceBounds adjacent_distance_bounds(const Constellation& constellation, std::span<const double> times_s) {
    if (times_s.empty()) throw ValidationError("adjacent_distance_bounds needs at least one sample time");
    const Torus torus(constellation.spec());
    DistanceBounds b{std::numeric_limits<double>::infinity(), 0.0};
    std::vector<Vec3> pos;
    for (double t : times_s) {
        constellation.positions_at(t, pos);
        for (std::size_t i = 0; i < torus.size(); ++i) {
            const SatelliteId id = torus.id_of(i);
            for (const SatelliteId other : {torus.offset(id, 0, 1), torus.offset(id, 1, 0)}) {
                const std::size_t j = torus.index_of(other);
                if (j == i) continue;
                const double d = distance(pos[i], pos[j]);
                b.min_km = std::min(b.min_km, d);
                b.max_km = std::max(b.max_km, d);
            }
        }
    }
    if (b.max_km == 0.0) throw ValidationError("constellation has no inter-satellite links");
    return b;
}

DistanceBounds adjacent_distance_bounds(const Constellation& constellation, double step_s) {
    const double period = 2.0 * std::acos(-1.0) / constellation.mean_motion_rad_s();
    std::vector<double> times;
    for (double t = 0.0; t < period; t += step_s) times.push_back(t);
    return adjacent_distance_bounds(constellation, times);
}

std::vector<SatelliteId> processing_set(const Torus& torus, SatelliteId capturer, int n) {
    if (n < 1 || static_cast<std::size_t>(n) > torus.size())
        throw ValidationError("processing_satellites must be in [1, planes * sats_per_plane]");

    // Offsets ordered by (grid distance, |dp|, dp, ds), scanning a window wide
    // enough for any torus, then deduplicated after wrapping.
    const int rp = torus.planes() / 2;
    const int rs = torus.sats_per_plane() / 2;
    std::vector<std::tuple<int, int, int, int>> offsets;
    for (int dp = -rp; dp <= rp; ++dp)
        for (int ds = -rs; ds <= rs; ++ds) offsets.emplace_back(std::abs(dp) + std::abs(ds), std::abs(dp), dp, ds);
    std::sort(offsets.begin(), offsets.end());

    std::vector<SatelliteId> out;
    std::vector<bool> taken(torus.size(), false);
    for (const auto& [dist, adp, dp, ds] : offsets) {
        const SatelliteId id = torus.offset(capturer, dp, ds);
        const std::size_t idx = torus.index_of(id);
        if (taken[idx]) continue;
        taken[idx] = true;
        out.push_back(id);
        if (static_cast<int>(out.size()) == n) break;
    }
    return out;
}

}  // namespace leosim
