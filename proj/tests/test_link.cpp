#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "leosim/error.hpp"
#include "leosim/link.hpp"

using namespace leosim;

namespace {

LinkModel unit_span() {
    LinkModel m;
    m.d_min_km = 0.0;
    m.d_max_km = 1000.0;
    return m;
}

RoutePath hops_of(std::vector<double> km, std::optional<double> down = std::nullopt) {
    RoutePath p;
    p.hop_km = std::move(km);
    p.downlink_km = down;
    return p;
}

}  // namespace

TEST(LossLaw, Endpoints) {
    const auto m = unit_span();
    EXPECT_EQ(packet_loss_prob(0.0, m), 0.001);
    EXPECT_NEAR(packet_loss_prob(1e9, m), 0.1, 1e-15);
    EXPECT_NEAR(packet_loss_prob(1000.0, m), 0.1 + (0.001 - 0.1) * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(packet_loss_prob(1000.0, m), 0.06358, 1e-5);
}

TEST(LossLaw, IncreasingAndBounded) {
    const auto m = unit_span();
    double prev = packet_loss_prob(0.0, m);
    for (int i = 1; i <= 2000; ++i) {
        const double p = packet_loss_prob(i * 5.0, m);
        EXPECT_GT(p, prev);
        EXPECT_GT(p, 0.001);
        EXPECT_LE(p, 0.1);
        prev = p;
    }
}

TEST(LossLaw, DegenerateSpanIsConfigError) {
    LinkModel m;
    m.d_min_km = 10.0;
    m.d_max_km = 10.0;
    EXPECT_THROW(packet_loss_prob(5.0, m), ConfigError);
    EXPECT_THROW(m.validate(), ConfigError);
}

TEST(Timing, TransmissionSums) {
    const std::vector<double> d{5.96e8}, r{1e9};
    EXPECT_NEAR(transmission_time(d, r), 0.596, 1e-12);
    EXPECT_EQ(transmission_time({}, {}), 0.0);
    const std::vector<double> d2{3e6, 3e6}, r2{1e8, 1e8};
    EXPECT_DOUBLE_EQ(transmission_time(d2, r2), 2.0 * (3e6 / 1e8));
}

TEST(Timing, PropagationSums) {
    const std::vector<double> one{1000.0};
    EXPECT_NEAR(propagation_time(one), 1000.0 / 299792.458, 1e-15);
    EXPECT_NEAR(propagation_time(one), 3.3356e-3, 1e-7);
    EXPECT_EQ(propagation_time({}), 0.0);
    const std::vector<double> split{1000.0, 2000.0}, whole{3000.0};
    EXPECT_DOUBLE_EQ(propagation_time(split), propagation_time(whole));
}

TEST(Timing, AdditiveUnderConcatenation) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> km(0.0, 3000.0), bits(1e3, 1e9), rate(1e6, 1e10);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> a, b, ra, rb;
        for (int i = 0; i < 3; ++i) a.push_back(km(rng)), b.push_back(km(rng));
        std::vector<double> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        EXPECT_NEAR(propagation_time(ab), propagation_time(a) + propagation_time(b), 1e-12);

        std::vector<double> da, db;
        for (int i = 0; i < 3; ++i) da.push_back(bits(rng)), db.push_back(bits(rng)), ra.push_back(rate(rng)), rb.push_back(rate(rng));
        std::vector<double> dab = da, rab = ra;
        dab.insert(dab.end(), db.begin(), db.end());
        rab.insert(rab.end(), rb.begin(), rb.end());
        EXPECT_NEAR(transmission_time(dab, rab), transmission_time(da, ra) + transmission_time(db, rb), 1e-9);
    }
}

TEST(RouteLoss, ForcedProbabilities) {
    Rng rng(1);
    LinkModel never = unit_span();
    never.loss_min = never.loss_max = 0.0;
    LinkModel always = unit_span();
    always.loss_min = always.loss_max = 1.0;
    for (int i = 0; i < 200; ++i) {
        EXPECT_TRUE(evaluate_route_loss(rng, hops_of({100, 2000, 50}, 900.0), 1e6, never));
        EXPECT_FALSE(evaluate_route_loss(rng, hops_of({100}), 1e6, always));
        EXPECT_FALSE(evaluate_route_loss(rng, hops_of({}, 700.0), 1e6, always));
    }
}

TEST(RouteLoss, PerHopProductThreeHops) {
    // Solve for the distance giving P = 0.01 under the default law.
    LinkModel m = unit_span();
    const double d = -1000.0 * std::log((0.01 - 0.1) / (0.001 - 0.1));
    ASSERT_NEAR(packet_loss_prob(d, m), 0.01, 1e-12);
    Rng rng(99);
    int ok = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) ok += evaluate_route_loss(rng, hops_of({d, d, d}), 1e6, m);
    EXPECT_NEAR(static_cast<double>(ok) / n, 0.9703, 0.003);
}

TEST(RouteLoss, MonteCarloWithinBinomialBounds) {
    LinkModel m = unit_span();
    const std::vector<double> km{120.0, 800.0, 1900.0};
    const double down = 1200.0;
    double expect = 1.0;
    for (double d : km) expect *= 1.0 - packet_loss_prob(d, m);
    expect *= 1.0 - packet_loss_prob(down, m);

    Rng rng(2);
    const int n = 50000;
    int ok = 0;
    for (int i = 0; i < n; ++i) ok += evaluate_route_loss(rng, hops_of(km, down), 1e6, m);
    const double sigma = std::sqrt(expect * (1.0 - expect) / n);
    EXPECT_NEAR(static_cast<double>(ok) / n, expect, 3.0 * sigma);
}

TEST(RouteLoss, PerPacketCompoundsPackets) {
    LinkModel m = unit_span();
    m.loss_mode = LossMode::per_packet;
    m.packet_bits = 1000.0;
    const double d = 300.0;
    const double p = packet_loss_prob(d, m);
    const double expect = std::pow(1.0 - p, 5.0);  // ceil(4500 / 1000) packets
    Rng rng(3);
    const int n = 50000;
    int ok = 0;
    for (int i = 0; i < n; ++i) ok += evaluate_route_loss(rng, hops_of({d}), 4500.0, m);
    const double sigma = std::sqrt(expect * (1.0 - expect) / n);
    EXPECT_NEAR(static_cast<double>(ok) / n, expect, 3.0 * sigma);
}

TEST(Rates, ByLinkClass) {
    const LinkModel m;
    EXPECT_EQ(m.rate_bps(LinkClass::intra_plane), 10e9);
    EXPECT_EQ(m.rate_bps(LinkClass::inter_plane), 1e9);
    EXPECT_EQ(m.rate_bps(LinkClass::downlink), 500e6);
    EXPECT_EQ(loss_mode_from_string(to_string(LossMode::per_packet)), LossMode::per_packet);
    EXPECT_THROW(loss_mode_from_string("sometimes"), ValidationError);
}
