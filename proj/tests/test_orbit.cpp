#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "leosim/constants.hpp"
#include "leosim/error.hpp"
#include "leosim/orbit.hpp"

using namespace leosim;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double re = 6371.0;
constexpr double mu = 398600.4418;

double deg(double rad) { return rad * 180.0 / pi; }
double rad(double d) { return d * pi / 180.0; }

CartesianState at(Vec3 v) { return {v, Frame::inertial}; }

// Point on the sphere of radius r at central angle `lambda` from +x in the x-z plane.
Vec3 on_meridian(double r, double lambda_rad) { return {r * std::cos(lambda_rad), 0.0, r * std::sin(lambda_rad)}; }

}  // namespace

TEST(Constellation, WalkerDeltaReferenceShell) {
    ConstellationSpec spec{20, 20, 550.0, 53.0, ShellType::walker_delta, 1};
    const auto sats = build_constellation(spec);
    ASSERT_EQ(sats.size(), 400u);
    EXPECT_DOUBLE_EQ(sats[20].elements.raan_deg - sats[0].elements.raan_deg, 18.0);
    for (const auto& s : sats) {
        EXPECT_DOUBLE_EQ(s.elements.radius_km, re + 550.0);
        EXPECT_DOUBLE_EQ(s.elements.inclination_deg, 53.0);
    }
}

TEST(Constellation, SingleEquatorialSatellite) {
    const auto sats = build_constellation({1, 1, 700.0, 0.0, ShellType::walker_delta, 0});
    ASSERT_EQ(sats.size(), 1u);
    EXPECT_EQ(sats[0].elements.raan_deg, 0.0);
    EXPECT_EQ(sats[0].elements.initial_anomaly_deg, 0.0);
}

TEST(Constellation, WalkerStarSpansHalfCircle) {
    const auto sats = build_constellation({4, 4, 550.0, 86.4, ShellType::walker_star, 1});
    for (int p = 0; p < 4; ++p) EXPECT_DOUBLE_EQ(sats[p * 4].elements.raan_deg, 45.0 * p);
}

TEST(Constellation, PhasingOffsetsSlots) {
    const int m = 5, n = 6, f = 2;
    const auto sats = build_constellation({m, n, 550.0, 53.0, ShellType::walker_delta, f});
    for (int p = 0; p < m; ++p)
        for (int s = 0; s < n; ++s) {
            const double expected = s * 360.0 / n + p * f * 360.0 / (m * n);
            EXPECT_NEAR(sats[p * n + s].elements.initial_anomaly_deg, expected, 1e-12);
            EXPECT_EQ(sats[p * n + s].id, (SatelliteId{p, s}));
        }
}

TEST(Constellation, DeterministicOrder) {
    ConstellationSpec spec{7, 9, 600.0, 70.0, ShellType::walker_star, 3};
    const auto a = build_constellation(spec);
    const auto b = build_constellation(spec);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].id, b[i].id);
        EXPECT_EQ(a[i].elements.raan_deg, b[i].elements.raan_deg);
        EXPECT_EQ(a[i].elements.initial_anomaly_deg, b[i].elements.initial_anomaly_deg);
    }
}

TEST(Constellation, InvalidSpecNamesBound) {
    auto msg = [](ConstellationSpec s) {
        try {
            build_constellation(s);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(msg({0, 20, 550, 53, ShellType::walker_delta, 0}).find("planes"), std::string::npos);
    EXPECT_NE(msg({20, 0, 550, 53, ShellType::walker_delta, 0}).find("sats_per_plane"), std::string::npos);
    EXPECT_NE(msg({20, 20, -1, 53, ShellType::walker_delta, 0}).find("altitude_km"), std::string::npos);
    EXPECT_NE(msg({20, 20, 550, 181, ShellType::walker_delta, 0}).find("inclination_deg"), std::string::npos);
    EXPECT_NE(msg({20, 20, 550, 53, ShellType::walker_delta, 20}).find("phasing"), std::string::npos);
}

TEST(Propagation, PeriodAt550Km) {
    const double a = re + 550.0;
    const double oracle = 2.0 * pi * std::sqrt(a * a * a / mu);
    EXPECT_NEAR(orbital_period_s(550.0), oracle, 1e-9);
    EXPECT_NEAR(orbital_period_s(550.0), 5730.6, 0.5);
}

TEST(Propagation, EpochAndHalfPeriod) {
    const auto sats = build_constellation({3, 4, 550.0, 53.0, ShellType::walker_delta, 1});
    const double period = orbital_period_s(550.0);
    for (const auto& s : sats) {
        const Vec3 p0 = propagate(s, 0.0).position_km;
        const Vec3 ph = propagate(s, period / 2.0).position_km;
        EXPECT_NEAR(dot(normalized(p0), normalized(ph)), -1.0, 1e-9);
    }
    // Plane 0 slot 0 sits on the ascending node at t = 0.
    const Vec3 p = propagate(sats[0], 0.0).position_km;
    EXPECT_NEAR(p.x, re + 550.0, 1e-9);
    EXPECT_NEAR(p.y, 0.0, 1e-9);
    EXPECT_NEAR(p.z, 0.0, 1e-9);
}

TEST(Propagation, CircularAndPeriodic) {
    const auto sats = build_constellation({6, 8, 550.0, 53.0, ShellType::walker_delta, 1});
    const double period = orbital_period_s(550.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t(0.0, 86164.1);
    for (int k = 0; k < 200; ++k) {
        const auto& s = sats[static_cast<std::size_t>(k) % sats.size()];
        const double tk = t(rng);
        const Vec3 a = propagate(s, tk).position_km;
        const Vec3 b = propagate(s, tk + period).position_km;
        EXPECT_NEAR(norm(a), re + 550.0, 1e-6);
        EXPECT_NEAR(distance(a, b), 0.0, 1e-6);
    }
}

TEST(Propagation, ConstellationMatchesPropagate) {
    const ConstellationSpec spec{5, 7, 550.0, 53.0, ShellType::walker_delta, 2};
    const Constellation c(spec);
    const auto sats = build_constellation(spec);
    for (double t : {0.0, 123.4, 4000.0, 86000.0})
        for (std::size_t i = 0; i < sats.size(); ++i)
            EXPECT_NEAR(distance(c.position(i, t), propagate(sats[i], t).position_km), 0.0, 1e-6);
}

TEST(Propagation, InclinationBoundsLatitude) {
    const auto sats = build_constellation({4, 5, 550.0, 53.0, ShellType::walker_delta, 1});
    double max_lat = 0.0;
    for (const auto& s : sats)
        for (double t = 0.0; t < 6000.0; t += 5.0) {
            const Vec3 p = propagate(s, t).position_km;
            max_lat = std::max(max_lat, deg(std::asin(p.z / norm(p))));
        }
    EXPECT_LE(max_lat, 53.0 + 1e-9);
    EXPECT_GT(max_lat, 52.9);
}

TEST(GroundPoint, AxisAndRotation) {
    const Vec3 a = ground_to_inertial({0.0, 0.0}, 0.0).position_km;
    EXPECT_NEAR(a.x, re, 1e-9);
    EXPECT_NEAR(a.y, 0.0, 1e-9);
    EXPECT_NEAR(a.z, 0.0, 1e-9);

    for (double lon : {-120.0, 0.0, 77.0})
        for (double t : {0.0, 5000.0, 43000.0}) {
            const Vec3 pole = ground_to_inertial({90.0, lon}, t).position_km;
            EXPECT_NEAR(pole.x, 0.0, 1e-9);
            EXPECT_NEAR(pole.y, 0.0, 1e-9);
            EXPECT_NEAR(pole.z, re, 1e-9);
        }

    const Vec3 day = ground_to_inertial({0.0, 0.0}, 86164.1).position_km;
    EXPECT_NEAR(distance(day, a), 0.0, 1e-6);

    // Quarter sidereal day moves lon 0 onto +y.
    const Vec3 q = ground_to_inertial({0.0, 0.0}, 86164.1 / 4.0).position_km;
    EXPECT_NEAR(q.y, re, 1e-6);
}

TEST(OffNadir, NadirIsZeroAndDegenerateThrows) {
    const Vec3 sat{re + 550.0, 0.0, 0.0};
    EXPECT_NEAR(off_nadir_angle_deg(at(sat), at({re, 0.0, 0.0})), 0.0, 1e-9);
    EXPECT_THROW(off_nadir_angle_deg(at(sat), at(sat)), GeometryError);
}

TEST(OffNadir, CoverageHalfAngleAt50Deg) {
    // Law of sines: sin(gamma) = k sin(beta), gamma obtuse, lambda = 180 - gamma - beta.
    const double k = (re + 550.0) / re;
    const double gamma = pi - std::asin(k * std::sin(rad(50.0)));
    const double lambda = deg(pi - gamma - rad(50.0));
    EXPECT_NEAR(coverage_half_angle_deg(550.0, 50.0), lambda, 1e-9);
    EXPECT_NEAR(coverage_half_angle_deg(550.0, 50.0), 6.33, 0.05);

    // A target at exactly that central angle sees the satellite at beta off-nadir.
    const Vec3 sat = on_meridian(re + 550.0, 0.0);
    const Vec3 tgt = on_meridian(re, rad(lambda));
    EXPECT_NEAR(off_nadir_angle_deg(at(sat), at(tgt)), 50.0, 1e-9);
    EXPECT_NEAR(re * rad(lambda), 704.0, 5.0);
}

TEST(OffNadir, HorizonLimb) {
    const double limb = deg(std::asin(re / (re + 550.0)));
    EXPECT_NEAR(horizon_off_nadir_deg(550.0), limb, 1e-12);
    const double lambda = std::acos(re / (re + 550.0));
    const Vec3 sat = on_meridian(re + 550.0, 0.0);
    const Vec3 tgt = on_meridian(re, lambda);
    EXPECT_NEAR(off_nadir_angle_deg(at(sat), at(tgt)), limb, 1e-7);
    EXPECT_NEAR(elevation_angle_deg(at(tgt), at(sat)), 0.0, 1e-6);
}

TEST(OffNadir, MonotoneInCentralAngle) {
    const Vec3 sat = on_meridian(re + 550.0, 0.0);
    const double horizon = std::acos(re / (re + 550.0));
    double prev = -1.0;
    for (int i = 0; i <= 400; ++i) {
        const double a = horizon * i / 400.0 * 0.999;
        const double v = off_nadir_angle_deg(at(sat), at(on_meridian(re, a)));
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(Elevation, ZenithAndTangentFormula) {
    const Vec3 gs{re, 0.0, 0.0};
    EXPECT_NEAR(elevation_angle_deg(at(gs), at({re + 550.0, 0.0, 0.0})), 90.0, 1e-9);

    const double k = re / (re + 550.0);
    for (double lam_deg : {1.0, 6.33, 15.0}) {
        const double lam = rad(lam_deg);
        const double oracle = deg(std::atan((std::cos(lam) - k) / std::sin(lam)));
        const Vec3 sat = on_meridian(re + 550.0, lam);
        EXPECT_NEAR(elevation_angle_deg(at(gs), at(sat)), oracle, 1e-9);
    }
}

TEST(Capture, RequiresLineOfSightAndBeta) {
    const Vec3 sat = on_meridian(re + 550.0, 0.0);
    const double lam = rad(coverage_half_angle_deg(550.0, 50.0));
    EXPECT_TRUE(is_capturable(at(sat), at(on_meridian(re, lam * 0.99)), 50.0));
    EXPECT_FALSE(is_capturable(at(sat), at(on_meridian(re, lam * 1.01)), 50.0));
    // Far side of the Earth is never visible, whatever the cone.
    EXPECT_FALSE(is_capturable(at(sat), at(on_meridian(re, pi)), 180.0));
}
