#include "leosim/aoi.hpp"

#include <algorithm>
#include <cmath>

#include "leosim/error.hpp"

namespace leosim {

std::string to_string(FrameOutcome outcome) {
    switch (outcome) {
        case FrameOutcome::delivered: return "delivered";
        case FrameOutcome::lost_communication: return "lost-communication";
        case FrameOutcome::lost_detection: return "lost-detection";
    }
    return "unknown";
}

double aggregate_arrival(std::span<const double> per_satellite_arrivals) {
    if (per_satellite_arrivals.empty()) throw DomainError("aggregate_arrival needs at least one arrival");
    return *std::max_element(per_satellite_arrivals.begin(), per_satellite_arrivals.end());
}

double trapezoid_area(double network_s, double interframe_s) {
    if (network_s < 0.0 || interframe_s < 0.0) throw DomainError("trapezoid_area needs T >= 0 and Y >= 0");
    return interframe_s * network_s + 0.5 * interframe_s * interframe_s;
}

std::vector<FrameRecord> effective_updates(std::span<const FrameRecord> records, double horizon_s) {
    std::vector<FrameRecord> in;
    for (const auto& r : records)
        if (r.delivered() && r.arrival_s <= horizon_s) in.push_back(r);
    std::stable_sort(in.begin(), in.end(),
                     [](const FrameRecord& a, const FrameRecord& b) { return a.capture_s < b.capture_s; });

    std::vector<FrameRecord> out;
    for (auto& r : in) {
        while (!out.empty() && out.back().arrival_s >= r.arrival_s) out.pop_back();
        if (!out.empty() && out.back().capture_s == r.capture_s) continue;
        out.push_back(std::move(r));
    }
    return out;
}

double average_aoi(std::span<const FrameRecord> records, double horizon_s) {
    if (!(horizon_s > 0.0)) throw DomainError("observation horizon must be > 0");
    const auto updates = effective_updates(records, horizon_s);
    if (updates.empty()) throw UndefinedAgeError("no delivered update within the horizon");

    const auto& first = updates.front();
    double area = trapezoid_area(first.arrival_s - first.capture_s, first.capture_s);
    for (std::size_t i = 1; i < updates.size(); ++i) {
        const double t = updates[i].arrival_s - updates[i].capture_s;
        const double y = updates[i].capture_s - updates[i - 1].capture_s;
        area += trapezoid_area(t, y);
    }
    const double tail = horizon_s - updates.back().capture_s;
    area += 0.5 * tail * tail;
    return area / horizon_s;
}

double average_paoi(std::span<const FrameRecord> records, double horizon_s) {
    const auto updates = effective_updates(records, horizon_s);
    if (updates.empty()) throw UndefinedAgeError("no delivered update within the horizon");
    double sum = updates.front().arrival_s;
    for (std::size_t i = 1; i < updates.size(); ++i) sum += updates[i].arrival_s - updates[i - 1].capture_s;
    return sum / static_cast<double>(updates.size());
}

AgeOracleResult discrete_age_oracle(std::span<const FrameRecord> records, double horizon_s, double dt_s) {
    if (!(dt_s > 0.0) || !(horizon_s > 0.0)) throw DomainError("oracle needs dt > 0 and tau > 0");

    struct Event {
        double arrival;
        double capture;
    };
    std::vector<Event> events;
    for (const auto& r : records)
        if (r.delivered()) events.push_back({r.arrival_s, r.capture_s});
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.arrival < b.arrival; });

    const auto cells = std::max<long long>(1, std::llround(horizon_s / dt_s));
    const double width = horizon_s / static_cast<double>(cells);

    double newest = 0.0;  // generation time of the freshest update received so far
    double last_age = 0.0;
    std::size_t next = 0;
    double age_sum = 0.0;
    double peak_sum = 0.0;
    std::size_t peaks = 0;
    for (long long k = 0; k < cells; ++k) {
        const double t = (static_cast<double>(k) + 0.5) * width;
        while (next < events.size() && events[next].arrival <= t) {
            if (events[next].capture > newest || (peaks == 0 && events[next].capture >= newest)) {
                peak_sum += (k == 0) ? events[next].arrival : last_age;
                ++peaks;
                newest = events[next].capture;
            }
            ++next;
        }
        last_age = t - newest;
        age_sum += last_age;
    }

    AgeOracleResult res;
    res.aoi_avg = age_sum / static_cast<double>(cells);
    if (peaks > 0) res.paoi_avg = peak_sum / static_cast<double>(peaks);
    return res;
}

AoiSummary summarize(std::span<const FrameRecord> records, double horizon_s, double coverage_probability) {
    AoiSummary s;
    s.horizon_s = horizon_s;
    s.coverage_probability = coverage_probability;
    for (const auto& r : records) {
        switch (r.outcome) {
            case FrameOutcome::delivered: ++s.delivered; break;
            case FrameOutcome::lost_communication: ++s.lost_communication; break;
            case FrameOutcome::lost_detection: ++s.lost_detection; break;
        }
    }
    if (!effective_updates(records, horizon_s).empty()) {
        s.aoi_avg = average_aoi(records, horizon_s);
        s.paoi_avg = average_paoi(records, horizon_s);
    }
    return s;
}

}  // namespace leosim
