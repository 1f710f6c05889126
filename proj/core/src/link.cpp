#include "leosim/link.hpp"

#include <cmath>

#include "leosim/constants.hpp"
#include "leosim/error.hpp"

namespace leosim {

std::string to_string(LossMode mode) { return mode == LossMode::per_hop ? "per-hop" : "per-packet"; }

LossMode loss_mode_from_string(const std::string& name) {
    if (name == "per-hop") return LossMode::per_hop;
    if (name == "per-packet") return LossMode::per_packet;
    throw ValidationError("loss_mode must be per-hop or per-packet, got '" + name + "'");
}

void LinkModel::validate() const {
    if (!(rate_intra_bps > 0.0 && rate_inter_bps > 0.0 && rate_downlink_bps > 0.0))
        throw ValidationError("link rates must be > 0");
    if (!(loss_min >= 0.0 && loss_min <= loss_max && loss_max <= 1.0))
        throw ValidationError("loss probabilities must satisfy 0 <= loss_min <= loss_max <= 1");
    if (!(d_min_km < d_max_km)) throw ConfigError("loss law needs d_min < d_max");
    if (!(packet_bits > 0.0)) throw ValidationError("packet_size_bits must be > 0");
}

double LinkModel::rate_bps(LinkClass cls) const {
    switch (cls) {
        case LinkClass::intra_plane: return rate_intra_bps;
        case LinkClass::inter_plane: return rate_inter_bps;
        case LinkClass::downlink: return rate_downlink_bps;
    }
    return rate_downlink_bps;
}

double packet_loss_prob(double distance_km, const LinkModel& model) {
    if (!(model.d_max_km > model.d_min_km)) throw ConfigError("loss law needs d_max > d_min");
    if (distance_km < 0.0) throw DomainError("link distance must be >= 0");
    const double span = model.d_max_km - model.d_min_km;
    // Weighted form keeps both endpoints exact in floating point.
    const double w = std::exp(-distance_km / span);
    return w * model.loss_min + (1.0 - w) * model.loss_max;
}

double transmission_time(std::span<const double> payload_bits, std::span<const double> rates_bps) {
    if (payload_bits.size() != rates_bps.size()) throw DomainError("payload and rate lists differ in length");
    double t = 0.0;
    for (std::size_t i = 0; i < payload_bits.size(); ++i) {
        if (payload_bits[i] < 0.0 || !(rates_bps[i] > 0.0)) throw DomainError("payloads must be >= 0, rates > 0");
        t += payload_bits[i] / rates_bps[i];
    }
    return t;
}

double propagation_time(std::span<const double> hop_km) {
    double d = 0.0;
    for (double h : hop_km) {
        if (h < 0.0) throw DomainError("hop distance must be >= 0");
        d += h;
    }
    return d / constants::speed_of_light_km_s;
}

bool hop_delivered(Rng& rng, double distance_km, double payload_bits, const LinkModel& model) {
    const double p = packet_loss_prob(distance_km, model);
    double survive = 1.0 - p;
    if (model.loss_mode == LossMode::per_packet) {
        const double packets = std::max(1.0, std::ceil(payload_bits / model.packet_bits));
        survive = std::pow(survive, packets);
    }
    if (survive >= 1.0) return true;
    if (survive <= 0.0) return false;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < survive;
}

bool evaluate_route_loss(Rng& rng, const RoutePath& path, double payload_bits, const LinkModel& model) {
    bool ok = true;
    // Every hop draws so the stream consumption does not depend on outcomes.
    for (double d : path.hop_km) ok = hop_delivered(rng, d, payload_bits, model) && ok;
    if (path.downlink_km) ok = hop_delivered(rng, *path.downlink_km, payload_bits, model) && ok;
    return ok;
}

}  // namespace leosim
