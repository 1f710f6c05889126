#pragma once

#include <span>
#include <string>

#include "leosim/task_model.hpp"
#include "leosim/topology.hpp"

namespace leosim {

enum class LossMode { per_hop, per_packet };

std::string to_string(LossMode mode);
LossMode loss_mode_from_string(const std::string& name);

/**
 * Link rates per class and the distance-dependent loss law
 *
 *   P(d) = P_max + (P_min - P_max) * exp(-d / (d_max - d_min)).
 *
 * d_min/d_max are the extreme adjacent-satellite distances of the
 * constellation being simulated.
 */
struct LinkModel {
    double rate_intra_bps = 10e9;    // FSO, same plane
    double rate_inter_bps = 1e9;     // RF, adjacent plane
    double rate_downlink_bps = 500e6;
    double loss_min = 0.001;
    double loss_max = 0.1;
    double d_min_km = 0.0;
    double d_max_km = 1.0;
    LossMode loss_mode = LossMode::per_hop;
    double packet_bits = 12000.0;

    void validate() const;
    double rate_bps(LinkClass cls) const;

    bool operator==(const LinkModel&) const = default;
};

double packet_loss_prob(double distance_km, const LinkModel& model);

// sum_l D_l / R_l
double transmission_time(std::span<const double> payload_bits, std::span<const double> rates_bps);

// sum_l d_l / c
double propagation_time(std::span<const double> hop_km);

// One traversal of one link. Per-packet mode fails if any of the
// ceil(payload / packet_bits) packets fails.
bool hop_delivered(Rng& rng, double distance_km, double payload_bits, const LinkModel& model);

/// Delivery over every ISL hop of the path and, when present, its downlink.
bool evaluate_route_loss(Rng& rng, const RoutePath& path, double payload_bits, const LinkModel& model);

}  // namespace leosim
