// Acceptance checks. One line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "leosim/aoi.hpp"
#include "leosim/coverage.hpp"
#include "leosim/engine.hpp"
#include "leosim/link.hpp"
#include "leosim/orbit.hpp"
#include "leosim/results_io.hpp"
#include "leosim/task_model.hpp"
#include "leosim/topology.hpp"
#include "oracles.hpp"

using namespace leosim;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
        if (!ok) {
            pass = false;
            detail += " [x]";
        }
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

bool within_rel(double v, double ref, double rel) { return std::abs(v - ref) <= rel * std::abs(ref); }

constexpr double sidereal_day = 86164.1;

Verdict unit_equations() {
    Verdict v;
    const FrameModel frame;
    const double rho = compression_factor(frame.image_bits, frame.vessels_per_image, frame.bbox_bits);
    v.require(within_rel(rho, 23299.4, 0.0005), "rho " + fmt("%.3f", rho));

    LinkModel m;
    m.d_min_km = 0.0;
    m.d_max_km = 1000.0;
    const double p0 = packet_loss_prob(0.0, m), pinf = packet_loss_prob(1e9, m);
    v.require(p0 == m.loss_min && pinf == m.loss_max, "P(0) " + fmt("%g", p0) + " P(inf) " + fmt("%g", pinf));

    const ComputeModel compute;
    const double fragment_bits = static_cast<double>(frame.frame_bits()) / 5.0;
    const double t = processing_time(fragment_bits, compute.complexity_mean, compute);
    v.require(within_rel(t, 15.49, 0.001), "T_proc " + fmt("%.4f s", t));

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const double tn = u(rng), y = u(rng);
        const double ref = 0.5 * (tn + y) * (tn + y) - 0.5 * tn * tn;
        const double scale = 0.5 * (tn + y) * (tn + y);
        const double err = std::abs(trapezoid_area(tn, y) - ref) / std::max(1.0, scale);
        worst = std::max(worst, err);
    }
    // The reference cancels when Y << T, so compare on the scale of the squares.
    v.require(worst <= 4 * std::numeric_limits<double>::epsilon(), "trapezoid max rel err " + fmt("%.2e", worst));
    return v;
}

Verdict aoi_oracle() {
    Verdict v;
    std::mt19937_64 rng(77);
    int checked = 0, bad = 0;
    double worst = 0.0;
    while (checked < 120) {
        double tau = 0.0;
        const auto ledger = oracle::random_ledger(rng, tau);
        if (effective_updates(ledger, tau).empty()) continue;
        const auto ref = discrete_age_oracle(ledger, tau, 0.01);
        const double a = average_aoi(ledger, tau), p = average_paoi(ledger, tau);
        const double ea = std::abs(a - ref.aoi_avg) / ref.aoi_avg;
        const double ep = ref.paoi_avg ? std::abs(p - *ref.paoi_avg) / *ref.paoi_avg : 1.0;
        worst = std::max({worst, ea, ep});
        bad += ea > 0.005 || ep > 0.005;
        ++checked;
    }
    v.require(bad == 0, std::to_string(checked) + " ledgers, max rel dev " + fmt("%.2e", worst));
    return v;
}

Verdict routing_oracle() {
    Verdict v;
    std::mt19937_64 rng(5);
    for (int size : {5, 6}) {
        const Torus torus(size, size);
        const auto adj = oracle::grid_adjacency(size, size);
        int mismatches = 0, pairs = 0;
        for (int trial = 0; trial < 3; ++trial) {
            const auto pos = oracle::random_positions(torus.size(), rng);
            for (int s = 0; s < static_cast<int>(torus.size()); ++s) {
                const auto dist = oracle::bfs(adj, s);
                for (int d = 0; d < static_cast<int>(torus.size()); ++d) {
                    const auto path = min_hop_path(torus, torus.id_of(static_cast<std::size_t>(s)),
                                                   torus.id_of(static_cast<std::size_t>(d)), pos);
                    const auto e = oracle::enumerate_min_hop(adj, pos, s, d);
                    const bool ok = path.hops() == dist[static_cast<std::size_t>(d)] &&
                                    std::abs(path.total_km - e.best_km) <= 1e-9 * (1.0 + e.best_km);
                    mismatches += !ok;
                    ++pairs;
                }
            }
        }
        v.require(mismatches == 0, std::to_string(size) + "x" + std::to_string(size) + " " + std::to_string(pairs) +
                                       " pairs, " + std::to_string(mismatches) + " mismatches");
    }
    return v;
}

Verdict geometry() {
    Verdict v;
    const double period = orbital_period_s(550.0);
    v.require(std::abs(period - 5730.6) <= 0.5, "period " + fmt("%.2f s", period));
    const double half = coverage_half_angle_deg(550.0, 50.0);
    v.require(std::abs(half - 6.33) <= 0.05, "half-angle " + fmt("%.3f deg", half));

    const Constellation c(ConstellationSpec{20, 20, 550.0, 53.0, ShellType::walker_delta, 1});
    double worst = 0.0;
    for (double lat = 59.6; lat <= 90.0; lat += 2.0)
        for (double sign : {1.0, -1.0})
            for (double lon = -180.0; lon < 180.0; lon += 30.0)
                worst = std::max(worst, coverage_probability(c, {sign * lat, lon}, 50.0, sidereal_day, 10.0));
    v.require(worst == 0.0, "max P_m beyond 59.5 deg " + fmt("%g", worst));
    return v;
}

Verdict size_reduction() {
    Verdict v;
    const FrameModel frame;
    const double x = static_cast<double>(frame.frame_bits());
    const double rho = compression_factor(frame.image_bits, frame.vessels_per_image, frame.bbox_bits);
    v.require(within_rel(x, 2.98e9, 0.01), "x " + fmt("%.4f Gb", x / 1e9));
    const double reduced_kb = x / rho / 1e3;
    v.require(std::abs(reduced_kb - 127.9) <= 0.05, "x/rho " + fmt("%.2f kb", reduced_kb));
    const double pct = 100.0 * (1.0 - 1.0 / rho);
    v.require(std::abs(pct - 99.996) <= 0.0005, "reduction " + fmt("%.4f%%", pct));
    const double payload_kb = semantic_payload(x, frame.vessel_fraction, rho) / 1e3;
    v.detail += "; x*alpha/rho " + fmt("%.2f kb", payload_kb) + " (semantic payload; x/rho above omits alpha)";
    return v;
}

ScenarioConfig desk_config() {
    ScenarioConfig c;
    c.seed = 2024;
    return c;
}

constexpr int kRuns = 20;

double combined_se(const Estimate& a, const Estimate& b) { return std::hypot(a.std_error, b.std_error); }

std::string series(const std::vector<SweepPoint>& pts, Estimate MonteCarloResult::*field, const char* f) {
    std::string s;
    for (const auto& p : pts) s += (s.empty() ? "" : " ") + fmt(f, (p.result.*field).mean);
    return s;
}

Verdict trend_planes() {
    Verdict v;
    ScenarioConfig c = desk_config();
    c.constellation.sats_per_plane = 22;
    const auto pts = sweep(c, SweepParameter::planes, {10, 15, 20, 25, 30}, kRuns);
    bool pm_ok = true, paoi_ok = true;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        pm_ok &= pts[i].result.coverage.mean >= pts[i - 1].result.coverage.mean;
        paoi_ok &= pts[i].result.paoi.mean <= pts[i - 1].result.paoi.mean;
    }
    v.require(pm_ok, "P_m over M {10..30}: " + series(pts, &MonteCarloResult::coverage, "%.4f"));
    v.require(paoi_ok, "PAoI: " + series(pts, &MonteCarloResult::paoi, "%.2f"));

    // Reported only: the same sweep without losses.
    ScenarioConfig clean = c;
    clean.communication_losses = false;
    clean.detection_losses = false;
    const auto lf = sweep(clean, SweepParameter::planes, {10, 15, 20, 25, 30}, kRuns);
    v.detail += "; loss-free PAoI (info): " + series(lf, &MonteCarloResult::paoi, "%.2f");

    // Mid-latitude band 40-55 deg, both hemispheres.
    ConstellationSpec spec = c.constellation;
    spec.planes = 20;
    const Constellation m20(spec);
    double worst = 1.0;
    for (double lat : {40.0, 45.0, 50.0, 55.0})
        for (double sign : {1.0, -1.0})
            for (double lon : {-150.0, -30.0, 70.0})
                worst = std::min(worst, coverage_probability(m20, {sign * lat, lon}, c.max_off_nadir_deg, c.horizon_s,
                                                             c.step_s));
    v.require(worst >= 0.99, "M=20 min P_m at |lat| 40-55 " + fmt("%.4f", worst));
    return v;
}

Verdict trend_slots() {
    Verdict v;
    ScenarioConfig c = desk_config();
    const auto pts = sweep(c, SweepParameter::sats_per_plane, {16, 18, 20, 22}, kRuns);
    bool ok = true;
    for (std::size_t i = 1; i < pts.size(); ++i)
        ok &= pts[i].result.paoi.mean <= pts[i - 1].result.paoi.mean + combined_se(pts[i].result.paoi, pts[i - 1].result.paoi);
    v.require(ok, "PAoI over N {16..22}: " + series(pts, &MonteCarloResult::paoi, "%.2f"));
    return v;
}

Verdict trend_processing() {
    Verdict v;
    ScenarioConfig c = desk_config();
    c.communication_losses = false;
    c.detection_losses = false;
    const auto clean = sweep(c, SweepParameter::processing_satellites, {1, 5}, kRuns);
    v.require(clean[1].result.paoi.mean < clean[0].result.paoi.mean,
              "loss-free PAoI n=1 " + fmt("%.2f", clean[0].result.paoi.mean) + " n=5 " +
                  fmt("%.2f", clean[1].result.paoi.mean));

    c = desk_config();
    const auto lossy = sweep(c, SweepParameter::processing_satellites, {1, 5}, kRuns);
    const double p1 = lossy[0].result.paoi.mean, p5 = lossy[1].result.paoi.mean;
    v.require(p5 < 60.0, "lossy PAoI n=5 " + fmt("%.2f s", p5) + " < 60");
    v.require(!(p1 < 60.0), "lossy PAoI n=1 " + fmt("%.2f s", p1) + " >= 60");
    return v;
}

Verdict determinism() {
    Verdict v;
    ScenarioConfig c = desk_config();
    auto ledger_of = [&](const ScenarioConfig& cfg, std::uint64_t seed) {
        return ledger_csv(run_scenario(cfg, seed).ledger);
    };
    const auto a = ledger_of(c, 7), b = ledger_of(c, 7);
    v.require(a == b && !a.empty(), "reference scenario, " + std::to_string(a.size()) + " bytes");

    c.links.loss_mode = LossMode::per_packet;
    c.distribution = DistributionMode::parallel;
    c.constellation = {12, 14, 600.0, 60.0, ShellType::walker_star, 3};
    const auto pa = ledger_of(c, 99), pb = ledger_of(c, 99);
    v.require(pa == pb && !pa.empty(), "star shell, per-packet, parallel");
    return v;
}

struct Criterion {
    const char* id;
    const char* name;
    double budget_s;
    std::function<Verdict()> check;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"AC1", "equation units", 1.0, unit_equations},
        {"AC2", "AoI oracle equivalence", 10.0, aoi_oracle},
        {"AC3", "routing oracle", 30.0, routing_oracle},
        {"AC4", "geometry", 60.0, geometry},
        {"AC5", "size reduction", 1.0, size_reduction},
        {"AC6a", "plane-count trend", 900.0, trend_planes},
        {"AC6b", "slot-count trend", 900.0, trend_slots},
        {"AC6c", "processing-set trend", 900.0, trend_processing},
        {"AC7", "determinism", 60.0, determinism},
    };

    int failed = 0;
    double trend_total = 0.0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.id[2] == '6') trend_total += secs;
        const bool in_time = secs <= c.budget_s;
        const bool pass = v.pass && in_time;
        failed += !pass;
        std::printf("[%s] %-4s %-22s %8.2f s%s  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    in_time ? "" : " (over budget)", v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("trend criteria total %.1f s (budget 900 s)\n", trend_total);
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
