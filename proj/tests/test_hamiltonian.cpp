#include <cmath>

#include <gtest/gtest.h>

#include <plate_modes/hamiltonian.hpp>

namespace pm = plate_modes;

namespace {

using pm::System;

pm::HamiltonianSpec spec(System s, double g, double p = 1.0) { return {s, g, p}; }

// quick policy for unit tests; the acceptance run uses the defaults
pm::InstabilityPolicy quick() {
    pm::InstabilityPolicy p;
    p.horizon = 300;
    p.bisection_tol = 5e-2;
    return p;
}

TEST(Hamiltonian, GradientMatchesPotential) {
    for (auto s : {spec(System::A, 1.3), spec(System::APrime, 1.3, 0.5), spec(System::ADoublePrime, 1.3, 2.0),
                   spec(System::B, 0.8), spec(System::C, 2.0), spec(System::D, 1.5), spec(System::E, 2.2)}) {
        for (auto [x, y] : {std::pair{0.3, -0.7}, std::pair{1.1, 0.4}}) {
            const double h = 1e-6;
            const auto g = pm::detail::gradient(s, x, y);
            const double gx = (pm::detail::potential(s, x + h, y) - pm::detail::potential(s, x - h, y)) / (2 * h);
            const double gy = (pm::detail::potential(s, x, y + h) - pm::detail::potential(s, x, y - h)) / (2 * h);
            EXPECT_NEAR(g.gx, gx, 1e-7) << pm::to_string(s);
            EXPECT_NEAR(g.gy, gy, 1e-7) << pm::to_string(s);
        }
    }
}

TEST(Hamiltonian, ZeroTorsionStaysZero) {
    for (auto s : {spec(System::A, 1.5), spec(System::C, 2.0), spec(System::E, 1.4)}) {
        const pm::SimState init{0.8, 0.0, 0.0, 0.0};
        const auto out = pm::integrate(s, init, 200.0, 1e-3);
        EXPECT_EQ(out.max_abs_y, 0.0) << pm::to_string(s);
        EXPECT_EQ(out.final_state.y, 0.0);
    }
}

TEST(Hamiltonian, LinearRegimeIsHarmonic) {
    const auto s = spec(System::C, 1.7);
    const double x0 = 1e-4;
    pm::SimState st{x0, 0.0, 0.0, 0.0};
    const double dt = 1e-2;
    for (int i = 1; i <= 1000; ++i) {
        st = pm::step(s, st, dt);
        EXPECT_NEAR(st.x, x0 * std::cos(i * dt), 1e-12);
    }
}

TEST(Hamiltonian, EnergyDriftIsSmall) {
    const auto s = spec(System::B, 1.0);
    const pm::SimState init{1.0, 0.5, 0.2, -0.3};
    const auto out = pm::integrate(s, init, 500.0, 1e-3);
    EXPECT_LT(out.energy_drift, 1e-8);
    EXPECT_EQ(out.steps, 500000);
}

TEST(Hamiltonian, FourthOrderConvergence) {
    const auto s = spec(System::A, 1.3);
    const pm::SimState init{0.9, 0.4, 0.0, 0.1};
    auto run = [&](double dt) { return pm::integrate(s, init, 10.0, dt).final_state.x; };
    const double ref = run(1e-4);
    const double e1 = std::abs(run(4e-2) - ref), e2 = std::abs(run(2e-2) - ref);
    EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.3);
}

TEST(Hamiltonian, InitialStateCarriesEnergy) {
    const auto pol = quick();
    for (auto s : {spec(System::A, 1.2), spec(System::E, 2.0)})
        for (double e : {1e-3, 0.5, 20.0}) {
            const auto st = pm::initial_state(s, e, pol);
            EXPECT_NEAR(pm::energy(s, st) / e, 1.0, 1e-12);
            EXPECT_DOUBLE_EQ(st.y, pol.seed_ratio * st.x);
        }
}

TEST(Hamiltonian, StableBelowResonance) {
    const auto pt = pm::critical_energy(spec(System::A, 0.5), quick());
    EXPECT_TRUE(pt.stable_up_to_cap());
    EXPECT_LE(pt.max_drift, 1e-6);
}

TEST(Hamiltonian, ThresholdBracketsInstability) {
    const auto pol = quick();
    const auto s = spec(System::A, 1.6);
    const auto pt = pm::critical_energy(s, pol);
    ASSERT_TRUE(pt.e_c.has_value());
    EXPECT_LE(pt.hi - pt.lo, pol.bisection_tol * pt.hi * (1 + 1e-12));
    EXPECT_TRUE(pm::is_unstable(s, pt.hi, pol));
    EXPECT_FALSE(pm::is_unstable(s, pt.lo, pol));
    EXPECT_LE(pt.max_drift, 1e-6);
}

TEST(Hamiltonian, SpotThresholds) {
    const pm::InstabilityPolicy pol;
    EXPECT_NEAR(*pm::critical_energy(spec(System::A, 1.2), pol).e_c, 0.272, 0.01);
    EXPECT_NEAR(*pm::critical_energy(spec(System::D, 1.05), pol).e_c, 0.0538, 0.003);
}

TEST(Hamiltonian, ScaledVariantsKeepTrend) {
    const auto pol = quick();
    const std::vector<double> g{1.2, 1.6, 2.0};
    for (auto s : {spec(System::APrime, 1.0, 0.5), spec(System::APrime, 1.0, 2.0), spec(System::ADoublePrime, 1.0, 0.5),
                   spec(System::ADoublePrime, 1.0, 2.0)}) {
        const auto res = pm::sweep(s, g, pol);
        for (const auto& p : res.points) ASSERT_TRUE(p.e_c.has_value()) << pm::to_string(s);
        EXPECT_EQ(res.trend, pm::Trend::Increasing) << pm::to_string(s);
    }
}

// instability comes in energy bands; E_c is the lower edge of the first one
TEST(Hamiltonian, StableBelowThreshold) {
    const auto pol = quick();
    const auto s = spec(System::C, 1.5);
    const auto pt = pm::critical_energy(s, pol);
    ASSERT_TRUE(pt.e_c.has_value());
    for (double f : {0.1, 0.5, 0.9}) EXPECT_FALSE(pm::is_unstable(s, f * pt.lo, pol)) << f;
    EXPECT_FALSE(pm::is_unstable(s, 3.0, pol));
    EXPECT_TRUE(pm::is_unstable(s, 6.0, pol));
}

TEST(Hamiltonian, SweepIsDeterministic) {
    const auto pol = quick();
    const auto a = pm::sweep(spec(System::D, 1.0), {1.1, 1.5}, pol);
    const auto b = pm::sweep(spec(System::D, 1.0), {1.1, 1.5}, pol);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        EXPECT_EQ(a.points[i].e_c, b.points[i].e_c);
        EXPECT_EQ(a.points[i].trials, b.points[i].trials);
    }
}

TEST(Hamiltonian, TrendAndCurvature) {
    EXPECT_EQ(pm::classify_trend({1, 2, 3}), pm::Trend::Increasing);
    EXPECT_EQ(pm::classify_trend({3, 2, 1}), pm::Trend::Decreasing);
    EXPECT_EQ(pm::classify_trend({1, 1.01, 1.0}), pm::Trend::Flat);
    EXPECT_EQ(pm::classify_trend({1, 2, 1}), pm::Trend::Mixed);
    EXPECT_EQ(pm::classify_trend({1}), pm::Trend::Insufficient);
    EXPECT_EQ(pm::classify_curvature({1, 2, 4, 8}), pm::Curvature::Convex);
    EXPECT_EQ(pm::classify_curvature({1, 3, 4, 4.5}), pm::Curvature::Concave);
    EXPECT_EQ(pm::classify_curvature({1, 2, 3, 4}), pm::Curvature::Linear);
}

TEST(Hamiltonian, GridAndParsing) {
    EXPECT_EQ(pm::gamma_grid(1.0, 3.0, 0.1).size(), 21u);
    EXPECT_TRUE(pm::gamma_grid(2.0, 2.0, 0.1).empty());
    EXPECT_THROW(pm::gamma_grid(3.0, 1.0, 0.1), pm::DomainError);
    EXPECT_THROW(pm::gamma_grid(1.0, 3.0, 0.0), pm::DomainError);
    EXPECT_EQ(pm::parse_system("aprime:0.5").param, 0.5);
    EXPECT_EQ(pm::parse_system("e").system, System::E);
    EXPECT_THROW(pm::parse_system("aprime:"), pm::DomainError);
    EXPECT_THROW(pm::parse_system("f"), pm::DomainError);
    EXPECT_THROW(spec(System::A, -1.0).validate(), pm::DomainError);
}

TEST(Hamiltonian, EnergyAboveCapRejected) {
    EXPECT_THROW(pm::run_trial(spec(System::A, 1.5), 2e3, pm::InstabilityPolicy{}), pm::DomainError);
}

}  // namespace
