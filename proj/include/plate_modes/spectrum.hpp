#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include "characteristic.hpp"
#include "config.hpp"
#include "errors.hpp"

namespace plate_modes {

struct EigenRecord {
    ModeId mode;
    CharFamily family;
    double lambda = 0;
    double bracket_lo = 0;
    double bracket_hi = 0;
    double residual = 0;  // scaled characteristic value at lambda
    int iterations = 0;
};

// x coth x computed without cancellation for small x
inline double x_coth_x(double x) {
    if (std::abs(x) < 1e-8) return 1.0 + x * x / 3.0;
    return x / std::tanh(x);
}

inline bool nu1_exists(int n, const PlateConfig& cfg) {
    if (n < 1) throw DomainError("axial index must be >= 1");
    const double x = cfg.half_width * n * std::numbers::sqrt2;
    const double r = (2.0 - cfg.sigma) / cfg.sigma;
    return x_coth_x(x) > r * r;
}

struct ExtraEigenCheck {
    double s;          // positive root of tanh(sqrt2 s ell) = (sigma/(2-sigma))^2 sqrt2 s ell
    bool near_integer;  // |s - round(s)| < 1e-9: an extra eigenpair exists and is not solved
};

inline ExtraEigenCheck extra_eigen_check(const PlateConfig& cfg) {
    const double kappa = std::pow(cfg.sigma / (2.0 - cfg.sigma), 2);
    // tanh x - kappa x: positive near 0+, negative for x >= 1/kappa
    auto g = [&](double x) { return std::tanh(x) - kappa * x; };
    double lo = 1e-6, hi = 1.0 / kappa + 1.0;
    while (!(g(lo) > 0)) lo *= 0.5;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (g(mid) > 0 ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi) / (std::numbers::sqrt2 * cfg.half_width);
    return {s, std::abs(s - std::round(s)) < 1e-9};
}

inline std::pair<double, double> bracket(const ModeId& mode, const PlateConfig& cfg) {
    mode.validate();
    const double q2 = double(mode.axial) * mode.axial;
    const double q4 = q2 * q2;
    const double p2 = std::pow(std::numbers::pi / cfg.half_width, 2);
    auto sq = [](double v) { return v * v; };
    if (mode.is_longitudinal()) {
        if (mode.family == 1) return {(1.0 - cfg.sigma * cfg.sigma) * q4, q4};
        const double k = mode.family;
        return {sq(q2 + p2 * sq(k - 1.5)), sq(q2 + p2 * sq(k - 1.0))};
    }
    const bool has_nu1 = nu1_exists(mode.axial, cfg);
    if (mode.family == 1) {
        if (!has_nu1) throw ExistenceError(to_string(mode) + " does not exist for this plate");
        return {(1.0 - cfg.sigma * cfg.sigma) * q4, q4};
    }
    // when nu_{n,1} exists, Psi has no root on the first tan branch and the j >= 2 family shifts by one
    const double j = mode.family + (has_nu1 ? 1 : 0);
    return {sq(q2 + p2 * sq(j - 2.0)), sq(q2 + p2 * sq(j - 1.5))};
}

inline EigenRecord solve_eigenvalue(const ModeId& mode, const PlateConfig& cfg) {
    cfg.validate();
    const auto [blo, bhi] = bracket(mode, cfg);
    const CharFamily fam = family_of(mode);
    auto f = [&](double lam) { return char_eval_scaled(fam, lam, cfg); };

    const double eps = 1e-9 * (bhi - blo);
    double lo = blo + eps, hi = bhi - eps;
    const double flo = f(lo);
    const double fhi = f(hi);
    if (!(flo * fhi < 0))
        throw SolverError("no sign change for " + to_string(mode) + " in its bracket");
    const bool lo_negative = flo < 0;

    int it = 0;
    for (; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= 1e-15 * mid) break;
        const double fm = f(mid);
        if (fm == 0) {
            lo = hi = mid;
            break;
        }
        ((fm < 0) == lo_negative ? lo : hi) = mid;
    }
    EigenRecord rec;
    rec.mode = mode;
    rec.family = fam;
    rec.lambda = 0.5 * (lo + hi);
    rec.bracket_lo = blo;
    rec.bracket_hi = bhi;
    rec.residual = f(rec.lambda);
    rec.iterations = it;
    return rec;
}

// Solves when the mode exists, nullopt for a missing nu_{n,1}.
inline std::optional<EigenRecord> try_solve(const ModeId& mode, const PlateConfig& cfg) {
    if (!mode.is_longitudinal() && mode.family == 1 && !nu1_exists(mode.axial, cfg)) return std::nullopt;
    return solve_eigenvalue(mode, cfg);
}

namespace detail {

// cosh(y b) / cosh(l b), b >= 0
template <class Real>
Real cosh_ratio(Real y, Real l, Real b) {
    const Real ay = std::abs(y);
    return std::exp(b * (ay - l)) * (Real(1) + std::exp(Real(-2) * b * ay)) / (Real(1) + std::exp(Real(-2) * b * l));
}

// sinh(y b) / sinh(l b), b > 0
template <class Real>
Real sinh_ratio(Real y, Real l, Real b) {
    const Real ay = std::abs(y);
    const Real r = std::exp(b * (ay - l)) * std::expm1(Real(-2) * b * ay) / std::expm1(Real(-2) * b * l);
    return y < 0 ? -r : r;
}

// y-profile of the unnormalized eigenfunction; valid as an entire function of y
template <class Real>
Real y_profile(const EigenRecord& rec, const PlateConfig& cfg, Real y) {
    const Real l = Real(cfg.half_width);
    const Real q2 = Real(rec.mode.axial) * Real(rec.mode.axial);
    const Real s = std::sqrt(Real(rec.lambda));
    const Real c = (Real(1) - Real(cfg.sigma)) * q2;
    const Real a = std::sqrt(std::abs(q2 - s));
    const Real b = std::sqrt(q2 + s);
    switch (rec.family.tag) {
        case CharTag::PhiM: return (s - c) * cosh_ratio(y, l, b) + (s + c) * cosh_ratio(y, l, a);
        case CharTag::UpsilonM: return (s - c) * cosh_ratio(y, l, b) + (s + c) * std::cos(y * a) / std::cos(l * a);
        case CharTag::PsiN: return (s - c) * sinh_ratio(y, l, b) + (s + c) * std::sin(y * a) / std::sin(l * a);
        case CharTag::GammaN: return (s - c) * sinh_ratio(y, l, b) + (s + c) * sinh_ratio(y, l, a);
    }
    return Real(0);
}

}  // namespace detail

template <class Real = double>
Real eigenfunction_profile(const EigenRecord& rec, const PlateConfig& cfg, Real x, Real y) {
    const Real pi = std::numbers::pi_v<Real>;
    const Real l = Real(cfg.half_width);
    const Real slack = Real(1e-12);
    if (x < -slack * pi || x > pi * (1 + slack) || std::abs(y) > l * (1 + slack))
        throw DomainError("point outside the plate");
    return detail::y_profile(rec, cfg, y) * std::sin(Real(rec.mode.axial) * x);
}

}  // namespace plate_modes
