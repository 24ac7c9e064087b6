#include <cmath>

#include <gtest/gtest.h>

#include <plate_modes/sensitivity.hpp>

#include "oracles.hpp"
#include "reference_values.hpp"

namespace pm = plate_modes;

namespace {

const pm::PlateConfig kCfg;

std::vector<pm::ModeId> table_modes() {
    std::vector<pm::ModeId> ids;
    for (const auto& e : reference::eigenvalues()) ids.push_back(e.mode);
    return ids;
}

TEST(SineOverlap, MatchesQuadrature) {
    for (int q = 1; q <= 20; ++q)
        for (int h = 1; h <= 21; ++h) {
            const auto o = pm::sine_overlap(q, h);
            EXPECT_NEAR(o.i_sin, oracle::sine_overlap_sin(q, h), 1e-12) << q << " " << h;
            EXPECT_NEAR(o.i_cos, oracle::sine_overlap_cos(q, h), 1e-12) << q << " " << h;
        }
    EXPECT_THROW(pm::sine_overlap(0, 1), pm::DomainError);
}

TEST(CharPartials, MatchFiniteDifferences) {
    std::vector<pm::ModeId> ids = table_modes();
    for (int q = 15; q <= 20; ++q) {
        ids.push_back(pm::ModeId::longitudinal(q, 3));
        ids.push_back(pm::ModeId::torsional(q, 4));
    }
    for (const auto& id : ids) {
        const auto rec = pm::solve_eigenvalue(id, kCfg);
        const auto p = pm::char_partials(rec.family, rec.lambda, kCfg);
        const auto o = oracle::char_partials(rec.family, rec.lambda, kCfg);
        EXPECT_NEAR(double(p.d_lambda / o.d_lambda), 1.0, 1e-5) << id;
        EXPECT_NEAR(double(p.d_ell / o.d_ell), 1.0, 1e-5) << id;
        const auto fd = pm::char_partials_fd(rec.family, rec.lambda, kCfg);
        EXPECT_NEAR(fd.d_lambda / p.d_lambda, 1.0, 1e-5) << id;
    }
}

TEST(NormSquared, MatchesQuadrature) {
    for (const auto& id : table_modes()) {
        if (id.axial > 5) continue;
        const auto rec = pm::solve_eigenvalue(id, kCfg);
        EXPECT_NEAR(pm::norm_squared(rec, kCfg) / oracle::energy_norm(rec, kCfg), 1.0, 1e-6) << id;
    }
    pm::PlateConfig wide{0.45, 1.5};
    for (auto id : {pm::ModeId::longitudinal(2, 1), pm::ModeId::longitudinal(1, 3), pm::ModeId::torsional(6, 1),
                    pm::ModeId::torsional(3, 2)}) {
        const auto rec = pm::solve_eigenvalue(id, wide);
        EXPECT_NEAR(pm::norm_squared(rec, wide) / oracle::energy_norm(rec, wide), 1.0, 1e-6) << id;
    }
}

TEST(TraceCoeffs, MatchBoundaryHessian) {
    for (const auto& id : table_modes()) {
        if (id.axial > 3) continue;
        const auto rec = pm::solve_eigenvalue(id, kCfg);
        const auto t = pm::trace_coeffs(rec, kCfg);
        const auto o = oracle::boundary_trace(rec, kCfg);
        EXPECT_NEAR(t.a_coeff / o.a_coeff, 1.0, 1e-4) << id;
        EXPECT_NEAR(t.b_coeff / o.b_coeff, 1.0, 1e-4) << id;
    }
}

TEST(Derivatives, ReferenceSpotValues) {
    auto d = [](pm::ModeId id, pm::ShapeDirection dir) { return pm::derivative(id, dir, kCfg).value; };
    EXPECT_NEAR(d(pm::ModeId::longitudinal(5, 1), pm::ShapeDirection::width()), 13.7607, 1e-3);
    EXPECT_NEAR(d(pm::ModeId::longitudinal(5, 1), pm::ShapeDirection::sine(1)), 8.5826, 1e-3);
    EXPECT_NEAR(d(pm::ModeId::longitudinal(2, 1), pm::ShapeDirection::sine(3)), -0.0571459, 1e-6);
    EXPECT_NEAR(d(pm::ModeId::torsional(1, 2), pm::ShapeDirection::width()) / -1.04495e6, 1.0, 1e-4);
    EXPECT_NEAR(d(pm::ModeId::longitudinal(1, 2), pm::ShapeDirection::width()) / -3.10578e10, 1.0, 1e-4);
}

TEST(Derivatives, WidthAgreesWithResolvedFiniteDifference) {
    for (auto id : {pm::ModeId::longitudinal(1, 1), pm::ModeId::longitudinal(7, 1), pm::ModeId::longitudinal(3, 2),
                    pm::ModeId::torsional(2, 2), pm::ModeId::torsional(5, 3)}) {
        const double cf = pm::derivative(id, pm::ShapeDirection::width(), kCfg).value;
        const double fd =
            pm::derivative(id, pm::ShapeDirection::width(), kCfg, pm::DerivMethod::FiniteDifferenceCheck).value;
        EXPECT_NEAR(fd / cf, 1.0, 1e-6) << id;
    }
}

TEST(Derivatives, SineModesAgreeWithNumericTrace) {
    for (auto id : {pm::ModeId::longitudinal(2, 1), pm::ModeId::longitudinal(9, 1), pm::ModeId::longitudinal(2, 2),
                    pm::ModeId::torsional(1, 2), pm::ModeId::torsional(3, 3)})
        for (int h : {1, 3, 5}) {
            const auto dir = pm::ShapeDirection::sine(h);
            const double cf = pm::derivative(id, dir, kCfg).value;
            const double fd = pm::derivative(id, dir, kCfg, pm::DerivMethod::FiniteDifferenceCheck).value;
            EXPECT_NEAR(fd / cf, 1.0, 1e-6) << id << " h=" << h;
        }
}

TEST(Derivatives, SignLawAndEvenModes) {
    for (const auto& id : table_modes()) {
        const auto rec = pm::solve_eigenvalue(id, kCfg);
        const double d1 = pm::d_shape(rec, kCfg, 1);
        EXPECT_EQ(std::signbit(pm::d_width(rec, kCfg)), std::signbit(d1)) << id;
        for (int h : {2, 4, 6}) EXPECT_LT(std::abs(pm::d_shape(rec, kCfg, h)), 1e-9 * std::abs(d1)) << id;
    }
}

TEST(Derivatives, FourierIsLinear) {
    const auto rec = pm::solve_eigenvalue(pm::ModeId::longitudinal(4, 1), kCfg);
    const auto dir = pm::ShapeDirection::fourier({0.5, 0.0, -2.0, 7.0});
    const double want = 0.5 * pm::d_shape(rec, kCfg, 1) - 2.0 / 3.0 * pm::d_shape(rec, kCfg, 3);
    EXPECT_NEAR(pm::d_direction(rec, kCfg, dir), want, 1e-12 * std::abs(want));
}

TEST(Derivatives, CompositeChainRule) {
    const auto mu = pm::solve_eigenvalue(pm::ModeId::longitudinal(3, 1), kCfg);
    const auto nu = pm::solve_eigenvalue(pm::ModeId::torsional(2, 2), kCfg);
    const auto dir = pm::ShapeDirection::width();
    const double got = pm::d_composite(mu, nu, 2.0, -0.5, dir, kCfg);
    EXPECT_DOUBLE_EQ(got, 2.0 * pm::d_width(mu, kCfg) - 0.5 * pm::d_width(nu, kCfg));
}

TEST(Directions, ParseAndPrint) {
    EXPECT_EQ(pm::parse_direction("width"), pm::ShapeDirection::width());
    EXPECT_EQ(pm::parse_direction("sin:3"), pm::ShapeDirection::sine(3));
    EXPECT_EQ(pm::to_string(pm::ShapeDirection::sine(5)), "sin:5");
    EXPECT_THROW(pm::parse_direction("sin:0"), pm::DomainError);
    EXPECT_THROW(pm::parse_direction("cos:1"), pm::DomainError);
    EXPECT_THROW(pm::parse_direction("sin:2x"), pm::DomainError);
}

TEST(RatioLaw, RatiosAndFits) {
    const auto nu = pm::ModeId::torsional(2, 2);
    const auto fit = pm::ratio_law_fit(nu, 1, 14, pm::ShapeDirection::width(), kCfg);
    const auto want = reference::ratios();
    ASSERT_EQ(fit.points.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(fit.points[i].gamma / want[i], 1.0, 5e-3);
    EXPECT_NEAR(fit.c1 / 95.53, 1.0, 0.1);
    EXPECT_LE(fit.max_residual, 0.05);
    EXPECT_EQ(fit.dof, 12);

    const auto s1 = pm::ratio_law_fit(nu, 1, 14, pm::ShapeDirection::sine(1), kCfg);
    EXPECT_LE(s1.max_residual, 0.05);
    EXPECT_NEAR(s1.c1 / 1.443, 1.0, 0.1);
    EXPECT_DOUBLE_EQ(s1.scale, kCfg.half_width);
    const auto s3 = pm::ratio_law_fit(nu, 1, 14, pm::ShapeDirection::sine(3), kCfg);
    EXPECT_NEAR(s3.c1 / 4.546, 1.0, 0.1);
}

TEST(RatioLaw, RatioDerivativeMatchesReference) {
    const auto pts = pm::ratio_points(pm::ModeId::torsional(2, 2), 1, 14, pm::ShapeDirection::width(), kCfg);
    EXPECT_NEAR(pts[0].gamma, 45609.784, 0.01);
    EXPECT_NEAR(pts[0].d_gamma / -4.35396e6, 1.0, 1e-4);
    const auto s1 = pm::ratio_points(pm::ModeId::torsional(2, 2), 5, 5, pm::ShapeDirection::sine(1), kCfg);
    EXPECT_NEAR(s1[0].d_gamma / -5025.99, 1.0, 1e-4);
}

TEST(RatioLaw, ExactLineIsRecovered) {
    std::vector<double> g{1, 2, 3, 4}, dg;
    for (double x : g) dg.push_back(-(0.25 + 3.0 * x));
    const auto fit = pm::fit_linear_law(g, dg);
    EXPECT_NEAR(fit.c0, 0.25, 1e-12);
    EXPECT_NEAR(fit.c1, 3.0, 1e-12);
    EXPECT_NEAR(fit.max_residual, 0.0, 1e-12);
}

TEST(RatioLaw, InsufficientData) {
    EXPECT_THROW(pm::ratio_law_fit(pm::ModeId::torsional(2, 2), 1, 2, pm::ShapeDirection::width(), kCfg),
                 pm::InsufficientData);
    EXPECT_THROW(pm::fit_linear_law({1.0}, {-1.0}), pm::InsufficientData);
    EXPECT_THROW(pm::ratio_law_fit(pm::ModeId::longitudinal(2, 2), 1, 5, pm::ShapeDirection::width(), kCfg),
                 pm::DomainError);
}

}  // namespace
