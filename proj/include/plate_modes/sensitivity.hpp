#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "characteristic.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "spectrum.hpp"

namespace plate_modes {

struct ShapeDirection {
    enum class Kind { Width, SineMode, Fourier };

    Kind kind = Kind::Width;
    int h = 0;                  // SineMode: phi = h sin(hx)
    std::vector<double> coeffs;  // Fourier: coeffs[i] multiplies sin((i+1) x)

    static ShapeDirection width() { return {}; }
    static ShapeDirection sine(int h) {
        if (h < 1) throw DomainError("sine mode index must be >= 1");
        return {Kind::SineMode, h, {}};
    }
    static ShapeDirection fourier(std::vector<double> a) {
        if (a.empty()) throw DomainError("Fourier direction needs at least one coefficient");
        return {Kind::Fourier, 0, std::move(a)};
    }

    double operator()(double x) const {
        switch (kind) {
            case Kind::Width: return 1.0;
            case Kind::SineMode: return h * std::sin(h * x);
            case Kind::Fourier: {
                double v = 0;
                for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * std::sin(double(i + 1) * x);
                return v;
            }
        }
        return 0;
    }

    friend bool operator==(const ShapeDirection&, const ShapeDirection&) = default;
};

inline std::string to_string(const ShapeDirection& d) {
    switch (d.kind) {
        case ShapeDirection::Kind::Width: return "width";
        case ShapeDirection::Kind::SineMode: return "sin:" + std::to_string(d.h);
        case ShapeDirection::Kind::Fourier: return "fourier";
    }
    return "?";
}

// "width" or "sin:<h>"
inline ShapeDirection parse_direction(const std::string& text) {
    if (text == "width") return ShapeDirection::width();
    if (text.rfind("sin:", 0) == 0) {
        std::size_t used = 0;
        int h = 0;
        try {
            h = std::stoi(text.substr(4), &used);
        } catch (const std::exception&) {
            throw DomainError("bad direction '" + text + "'");
        }
        if (used != text.size() - 4 || h < 1) throw DomainError("bad direction '" + text + "'");
        return ShapeDirection::sine(h);
    }
    throw DomainError("bad direction '" + text + "' (expected width or sin:<h>)");
}

struct TraceCoeffs {
    double a_coeff;  // multiplies sin^2(q x)
    double b_coeff;  // multiplies cos^2(q x)
};

inline TraceCoeffs trace_coeffs(const EigenRecord& rec, const PlateConfig& cfg) {
    const double q2 = double(rec.mode.axial) * rec.mode.axial;
    const double q4 = q2 * q2;
    const double lam = rec.lambda;
    const double s = std::sqrt(lam);
    const double c = (1.0 - cfg.sigma) * q2;
    const double t = std::tanh(cfg.half_width * std::sqrt(q2 + s));
    const double hyp2 = rec.mode.is_longitudinal() ? t * t : 1.0 / (t * t);
    const double ratio = (s - c) / (s + c);
    const double a = 4.0 * lam * (q4 - cfg.sigma * cfg.sigma * q4 - lam);
    const double b = 8.0 * (1.0 - cfg.sigma) * q2 * lam * (s + q2) * ratio * ratio * hyp2;
    return {a, b};
}

namespace detail {

inline double inv_cosh2(double z) {
    const double e = std::exp(-2.0 * std::abs(z));
    return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

inline double inv_sinh2(double z) {
    const double e = std::exp(-2.0 * std::abs(z));
    const double d = std::expm1(-2.0 * std::abs(z));
    return 4.0 * e / (d * d);
}

}  // namespace detail

// Energy-space squared norm of the unnormalized eigenfunction; equals lambda times its L2 norm.
inline double norm_squared(const EigenRecord& rec, const PlateConfig& cfg) {
    const double q2 = double(rec.mode.axial) * rec.mode.axial;
    const double lam = rec.lambda;
    const double s = std::sqrt(lam);
    const double l = cfg.half_width;
    const double al = std::abs(q2 - s);
    const double be = q2 + s;
    const double sm = cfg.sigma * q2;
    const double rb = std::sqrt(be);
    const double ra = std::sqrt(al);
    const double half = l * std::numbers::pi * lam / 2.0;
    const double th = std::tanh(l * rb);
    const double hyp = rec.mode.is_longitudinal() ? th : 1.0 / th;
    const double bracket_term =
        q2 / (q2 * q2 - lam) + 4.0 * (1.0 - cfg.sigma) * q2 / (lam - std::pow(1.0 - cfg.sigma, 2) * q2 * q2);
    auto tail = [&](double x) { return std::numbers::pi * lam * x * x * rb * hyp * bracket_term; };
    auto sq = [](double v) { return v * v; };
    switch (rec.family.tag) {
        case CharTag::PhiM:
            return half * sq(sm - al) * detail::inv_cosh2(l * rb) + half * sq(be - sm) * detail::inv_cosh2(l * ra) +
                   tail(sm - al);
        case CharTag::UpsilonM:
            return half * sq(sm + al) * detail::inv_cosh2(l * rb) + half * sq(be - sm) / sq(std::cos(l * ra)) +
                   tail(sm + al);
        case CharTag::GammaN:
            return -half * sq(sm - al) * detail::inv_sinh2(l * rb) - half * sq(be - sm) * detail::inv_sinh2(l * ra) +
                   tail(sm - al);
        case CharTag::PsiN:
            return -half * sq(sm + al) * detail::inv_sinh2(l * rb) + half * sq(be - sm) / sq(std::sin(l * ra)) +
                   tail(sm + al);
    }
    return 0;
}

struct SineOverlap {
    double i_sin;  // int_0^pi sin^2(qx) sin(hx) dx
    double i_cos;  // int_0^pi cos^2(qx) sin(hx) dx
};

inline SineOverlap sine_overlap(int q, int h) {
    if (q < 1 || h < 1) throw DomainError("sine_overlap needs q, h >= 1");
    if (h % 2 == 0) return {0.0, 0.0};
    const double q4 = 4.0 * q * q;
    const double hh = double(h) * h;
    const double den = h * (q4 - hh);
    return {q4 / den, (q4 - 2.0 * hh) / den};
}

inline double d_width(const EigenRecord& rec, const PlateConfig& cfg) {
    const auto p = char_partials(rec.family, rec.lambda, cfg);
    return -p.d_ell / p.d_lambda;
}

inline double d_width(const ModeId& mode, const PlateConfig& cfg) { return d_width(solve_eigenvalue(mode, cfg), cfg); }

// derivative along phi = h sin(hx)
inline double d_shape(const EigenRecord& rec, const PlateConfig& cfg, int h) {
    if (h < 1) throw DomainError("sine mode index must be >= 1");
    if (h % 2 == 0) return 0.0;
    const auto tc = trace_coeffs(rec, cfg);
    const auto ov = sine_overlap(rec.mode.axial, h);
    return 2.0 * h * rec.lambda * (tc.a_coeff * ov.i_sin + tc.b_coeff * ov.i_cos) / norm_squared(rec, cfg);
}

inline double d_fourier(const EigenRecord& rec, const PlateConfig& cfg, const ShapeDirection& dir) {
    if (dir.kind != ShapeDirection::Kind::Fourier) throw DomainError("d_fourier needs a Fourier direction");
    double sum = 0;
    for (std::size_t i = 0; i < dir.coeffs.size(); ++i) {
        const int h = int(i) + 1;
        if (dir.coeffs[i] != 0.0 && h % 2 == 1) sum += dir.coeffs[i] / h * d_shape(rec, cfg, h);
    }
    return sum;
}

inline double d_direction(const EigenRecord& rec, const PlateConfig& cfg, const ShapeDirection& dir) {
    switch (dir.kind) {
        case ShapeDirection::Kind::Width: return d_width(rec, cfg);
        case ShapeDirection::Kind::SineMode: return d_shape(rec, cfg, dir.h);
        case ShapeDirection::Kind::Fourier: return d_fourier(rec, cfg, dir);
    }
    return 0;
}

inline double d_composite(const EigenRecord& mu, const EigenRecord& nu, double f_mu, double f_nu,
                          const ShapeDirection& dir, const PlateConfig& cfg) {
    double out = 0;
    if (f_mu != 0.0) out += f_mu * d_direction(mu, cfg, dir);
    if (f_nu != 0.0) out += f_nu * d_direction(nu, cfg, dir);
    return out;
}

inline double d_composite(const ModeId& mu_mode, const ModeId& nu_mode, double f_mu, double f_nu,
                          const ShapeDirection& dir, const PlateConfig& cfg) {
    return d_composite(solve_eigenvalue(mu_mode, cfg), solve_eigenvalue(nu_mode, cfg), f_mu, f_nu, dir, cfg);
}

enum class DerivMethod { ClosedForm, FiniteDifferenceCheck };

struct DerivativeRecord {
    ModeId mode;
    ShapeDirection direction;
    double value = 0;
    DerivMethod method = DerivMethod::ClosedForm;
};

namespace detail {

template <class Fn>
double richardson_central(Fn&& f, double x, double h0, int order) {
    double t[6][6];
    double h = h0;
    for (int i = 0; i < 6; ++i, h /= 2) {
        if (order == 1)
            t[i][0] = (f(x + h) - f(x - h)) / (2 * h);
        else
            t[i][0] = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
        double p = 4;
        for (int k = 1; k <= i; ++k, p *= 4) t[i][k] = t[i][k - 1] + (t[i][k - 1] - t[i - 1][k - 1]) / (p - 1);
    }
    return t[5][5];
}

// Independent route for sine modes: numeric Hessian of the profile at y = l, quadrature of the trace and norm.
inline double d_shape_numeric(const EigenRecord& rec, const PlateConfig& cfg, int h) {
    if (h % 2 == 0) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    const double l = cfg.half_width;
    const double q = rec.mode.axial;
    const double s = std::sqrt(rec.lambda);
    const double scale = 1.0 / std::sqrt(q * q + s);
    auto Y = [&](double y) { return y_profile<double>(rec, cfg, y); };
    const double y0 = Y(l);
    const double y1 = richardson_central(Y, l, 0.05 * scale, 1);
    const double y2 = richardson_central(Y, l, 0.05 * scale, 2);
    const double sg = cfg.sigma;
    auto trace = [&](double x) {
        const double sn = std::sin(q * x), cs = std::cos(q * x);
        const double vxx = -q * q * y0 * sn, vyy = y2 * sn, vxy = q * y1 * cs, v = y0 * sn;
        return (1 - sg) * (vxx * vxx + 2 * vxy * vxy + vyy * vyy) + sg * (vxx + vyy) * (vxx + vyy) -
               rec.lambda * v * v;
    };
    const double integral = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return trace(x) * std::sin(h * x); }, 0.0, std::numbers::pi, 15, 1e-13);
    const double l2 = gauss_kronrod<double, 61>::integrate([&](double y) { return Y(y) * Y(y); }, -l, l, 15, 1e-13);
    const double norm = rec.lambda * l2 * std::numbers::pi / 2.0;
    return 2.0 * h * rec.lambda * integral / norm;
}

}  // namespace detail

inline DerivativeRecord derivative(const ModeId& mode, const ShapeDirection& dir, const PlateConfig& cfg,
                                   DerivMethod method = DerivMethod::ClosedForm) {
    const auto rec = solve_eigenvalue(mode, cfg);
    DerivativeRecord out{mode, dir, 0.0, method};
    if (method == DerivMethod::ClosedForm) {
        out.value = d_direction(rec, cfg, dir);
        return out;
    }
    switch (dir.kind) {
        case ShapeDirection::Kind::Width: {
            auto lam = [&](double e) {
                PlateConfig c = cfg;
                c.half_width = e;
                return solve_eigenvalue(mode, c).lambda;
            };
            out.value = detail::richardson_central(lam, cfg.half_width, 1e-3 * cfg.half_width, 1);
            break;
        }
        case ShapeDirection::Kind::SineMode: out.value = detail::d_shape_numeric(rec, cfg, dir.h); break;
        case ShapeDirection::Kind::Fourier:
            for (std::size_t i = 0; i < dir.coeffs.size(); ++i)
                if (dir.coeffs[i] != 0.0) out.value += dir.coeffs[i] / double(i + 1) * detail::d_shape_numeric(rec, cfg, int(i) + 1);
            break;
    }
    return out;
}

struct RatioPoint {
    int m;
    double mu;
    double gamma;  // nu / mu_{m,1}
    double d_gamma;
};

struct RatioLawFit {
    double c0 = 0;
    double c1 = 0;
    double max_residual = 0;  // max |scale D gamma / (c0 + c1 gamma) + 1|
    int dof = 0;
    double scale = 1;  // 1 for width, half-width for sine modes
    std::vector<RatioPoint> points;
};

// Weighted least squares for y = -(c0 + c1 x) minimizing the relative misfit; needs >= 2 points.
inline RatioLawFit fit_linear_law(const std::vector<double>& gamma, const std::vector<double>& dgamma) {
    if (gamma.size() != dgamma.size() || gamma.size() < 2) throw InsufficientData("linear law needs at least 2 points");
    double s00 = 0, s01 = 0, s11 = 0, r0 = 0, r1 = 0;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        const double y = -dgamma[i];
        if (y == 0) throw InsufficientData("zero derivative sample in ratio law");
        const double w = 1.0 / (y * y);
        s00 += w;
        s01 += w * gamma[i];
        s11 += w * gamma[i] * gamma[i];
        r0 += w * y;
        r1 += w * gamma[i] * y;
    }
    const double det = s00 * s11 - s01 * s01;
    if (det == 0) throw InsufficientData("degenerate ratio-law samples");
    RatioLawFit fit;
    fit.c0 = (r0 * s11 - r1 * s01) / det;
    fit.c1 = (s00 * r1 - s01 * r0) / det;
    fit.dof = int(gamma.size()) - 2;
    for (std::size_t i = 0; i < gamma.size(); ++i)
        fit.max_residual = std::max(fit.max_residual, std::abs(dgamma[i] / (fit.c0 + fit.c1 * gamma[i]) + 1.0));
    return fit;
}

inline std::vector<RatioPoint> ratio_points(const ModeId& torsional, int m_first, int m_last,
                                            const ShapeDirection& dir, const PlateConfig& cfg) {
    if (torsional.is_longitudinal()) throw DomainError("ratio law needs a torsional mode");
    const auto nu = solve_eigenvalue(torsional, cfg);
    const double dnu = d_direction(nu, cfg, dir);
    std::vector<RatioPoint> pts;
    for (int m = m_first; m <= m_last; ++m) {
        const auto mu = solve_eigenvalue(ModeId::longitudinal(m, 1), cfg);
        const double g = nu.lambda / mu.lambda;
        const double dmu = d_direction(mu, cfg, dir);
        // d(nu/mu) = dnu/mu - nu dmu / mu^2
        pts.push_back({m, mu.lambda, g, dnu / mu.lambda - nu.lambda * dmu / (mu.lambda * mu.lambda)});
    }
    return pts;
}

inline double ratio_law_scale(const ShapeDirection& dir, const PlateConfig& cfg) {
    return dir.kind == ShapeDirection::Kind::Width ? 1.0 : cfg.half_width;
}

inline RatioLawFit ratio_law_fit_points(const ModeId& torsional, int m_first, int m_last, const ShapeDirection& dir,
                                        const PlateConfig& cfg) {
    if (dir.kind == ShapeDirection::Kind::Fourier) throw DomainError("ratio law supports width and sine directions");
    const auto pts = ratio_points(torsional, m_first, m_last, dir, cfg);
    const double scale = ratio_law_scale(dir, cfg);
    std::vector<double> g, dg;
    for (const auto& p : pts) {
        g.push_back(p.gamma);
        dg.push_back(scale * p.d_gamma);
    }
    auto fit = fit_linear_law(g, dg);
    fit.scale = scale;
    fit.points = pts;
    return fit;
}

// Fits scale * D gamma(m) = -(c0 + c1 gamma(m)); scale is the half-width for sine modes (per unit amplitude).
inline RatioLawFit ratio_law_fit(const ModeId& torsional, int m_first, int m_last, const ShapeDirection& dir,
                                 const PlateConfig& cfg) {
    if (m_last - m_first + 1 < 3) throw InsufficientData("ratio law fit needs at least 3 points");
    return ratio_law_fit_points(torsional, m_first, m_last, dir, cfg);
}

}  // namespace plate_modes
