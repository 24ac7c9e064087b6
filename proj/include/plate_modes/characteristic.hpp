#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "config.hpp"
#include "errors.hpp"

namespace plate_modes {

template <class Real>
struct CharPartials {
    Real d_lambda;
    Real d_ell;
};

namespace detail {

template <class Real>
struct Elementary {
    Real value;
    Real deriv;  // d/dz
};

template <class Real>
Elementary<Real> tanh_piece(Real z) {
    const Real t = std::tanh(z);
    return {t, Real(1) - t * t};
}

template <class Real>
Elementary<Real> tan_piece(Real z) {
    const Real pi = std::numbers::pi_v<Real>;
    const Real r = z / pi - Real(0.5);
    const Real dist = std::abs(r - std::round(r)) * pi;
    if (dist < Real(1e-12) * std::max(Real(1), std::abs(z)))
        throw PoleError("tan pole at argument " + std::to_string(static_cast<double>(z)));
    const Real t = std::tan(z);
    return {t, Real(1) + t * t};
}

// One term u * W^2 * f(ell * v) with u, v in {a, b}.
template <class Real>
struct Term {
    Real u, du;    // root factor and d/ds
    Real w;        // s +- (1-sigma) q^2, dw/ds = 1
    Real v, dv;    // argument root and d/ds
    bool use_tan;
    Real sign;
};

template <class Real>
Real term_value(const Term<Real>& t, Real ell) {
    const auto f = t.use_tan ? tan_piece(ell * t.v) : tanh_piece(ell * t.v);
    return t.sign * t.u * t.w * t.w * f.value;
}

template <class Real>
CharPartials<Real> term_partials(const Term<Real>& t, Real ell) {
    const auto f = t.use_tan ? tan_piece(ell * t.v) : tanh_piece(ell * t.v);
    const Real w2 = t.w * t.w;
    const Real d_s = t.du * w2 * f.value + Real(2) * t.u * t.w * f.value + t.u * w2 * f.deriv * ell * t.dv;
    const Real d_l = t.u * w2 * f.deriv * t.v;
    return {t.sign * d_s, t.sign * d_l};
}

template <class Real>
struct CharSetup {
    Term<Real> first;
    Term<Real> second;
    Real s;
    Real scale;  // (s + (1-sigma) q^2)^2 sqrt(s + q^2)
};

template <class Real>
CharSetup<Real> setup(const CharFamily& fam, Real lambda, const PlateConfig& cfg) {
    if (fam.q < 1) throw DomainError("axial index must be >= 1");
    if (!(lambda > 0) || !std::isfinite(static_cast<double>(lambda)))
        throw DomainError("lambda must be positive and finite");
    const Real q2 = Real(fam.q) * Real(fam.q);
    const Real s = std::sqrt(lambda);
    if (fam.below_q4() && !(s < q2))
        throw DomainError(std::string(to_string(fam.tag)) + " requires lambda < q^4");
    if (!fam.below_q4() && !(s > q2))
        throw DomainError(std::string(to_string(fam.tag)) + " requires lambda > q^4");

    const Real c = (Real(1) - Real(cfg.sigma)) * q2;
    const Real a = std::sqrt(std::abs(q2 - s));
    const Real b = std::sqrt(q2 + s);
    const Real da = fam.below_q4() ? Real(-0.5) / a : Real(0.5) / a;
    const Real db = Real(0.5) / b;

    CharSetup<Real> out{};
    out.s = s;
    out.scale = (s + c) * (s + c) * b;
    // first term: a (s+c)^2 f(ell v), second: b (s-c)^2 f(ell v)
    switch (fam.tag) {
        case CharTag::PhiM:
            out.first = {a, da, s + c, a, da, false, Real(1)};
            out.second = {b, db, s - c, b, db, false, Real(-1)};
            break;
        case CharTag::UpsilonM:
            out.first = {a, da, s + c, a, da, true, Real(1)};
            out.second = {b, db, s - c, b, db, false, Real(1)};
            break;
        case CharTag::PsiN:
            out.first = {a, da, s + c, b, db, false, Real(1)};
            out.second = {b, db, s - c, a, da, true, Real(-1)};
            break;
        case CharTag::GammaN:
            out.first = {a, da, s + c, b, db, false, Real(1)};
            out.second = {b, db, s - c, a, da, false, Real(-1)};
            break;
    }
    return out;
}

}  // namespace detail

template <class Real = double>
Real char_eval(const CharFamily& fam, Real lambda, const PlateConfig& cfg) {
    const auto st = detail::setup(fam, lambda, cfg);
    const Real ell = Real(cfg.half_width);
    return detail::term_value(st.first, ell) + detail::term_value(st.second, ell);
}

// char_eval divided by (s + (1-sigma) q^2)^2 sqrt(s + q^2); same sign, O(1)-ish magnitude
template <class Real = double>
Real char_eval_scaled(const CharFamily& fam, Real lambda, const PlateConfig& cfg) {
    const auto st = detail::setup(fam, lambda, cfg);
    const Real ell = Real(cfg.half_width);
    return (detail::term_value(st.first, ell) + detail::term_value(st.second, ell)) / st.scale;
}

template <class Real = double>
CharPartials<Real> char_partials(const CharFamily& fam, Real lambda, const PlateConfig& cfg) {
    const auto st = detail::setup(fam, lambda, cfg);
    const Real ell = Real(cfg.half_width);
    const auto p1 = detail::term_partials(st.first, ell);
    const auto p2 = detail::term_partials(st.second, ell);
    // d/dlambda = d/ds / (2 s)
    return {(p1.d_lambda + p2.d_lambda) / (Real(2) * st.s), p1.d_ell + p2.d_ell};
}

// Central differences with Richardson extrapolation; used as a cross-check mode.
inline CharPartials<double> char_partials_fd(const CharFamily& fam, double lambda, const PlateConfig& cfg) {
    auto richardson = [](auto&& f, double x, double h0) {
        double t[6][6];
        double h = h0;
        for (int i = 0; i < 6; ++i, h /= 2) {
            t[i][0] = (f(x + h) - f(x - h)) / (2 * h);
            double p = 4;
            for (int k = 1; k <= i; ++k, p *= 4) t[i][k] = t[i][k - 1] + (t[i][k - 1] - t[i - 1][k - 1]) / (p - 1);
        }
        return t[5][5];
    };
    const double q2 = double(fam.q) * fam.q;
    const double ell = cfg.half_width;
    double hl = std::min(1e-3 * lambda, 0.25 * std::abs(lambda - q2 * q2));
    double he = 1e-3 * ell;
    if (fam.has_tan()) {
        const double a = std::sqrt(std::sqrt(lambda) - q2);
        const double zp = (std::round(ell * a / std::numbers::pi - 0.5) + 0.5) * std::numbers::pi;
        const double sp = q2 + (zp / ell) * (zp / ell);
        hl = std::min(hl, 0.25 * std::abs(lambda - sp * sp));
        he = std::min(he, 0.25 * std::abs(ell - zp / a));
    }
    const double dl = richardson([&](double x) { return char_eval(fam, x, cfg); }, lambda, hl);
    const double de = richardson(
        [&](double e) {
            PlateConfig c = cfg;
            c.half_width = e;
            return char_eval(fam, lambda, c);
        },
        ell, he);
    return {dl, de};
}

}  // namespace plate_modes
