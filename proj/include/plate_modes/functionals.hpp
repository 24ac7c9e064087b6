#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "config.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "sensitivity.hpp"
#include "spectrum.hpp"

namespace plate_modes {

enum class GyrationKind { MeanSquaredHalfWidth, SquaredMeanHalfWidth };

enum class FrequencyKind { GTenth, GQuarter, Rocard };

inline const char* to_string(FrequencyKind k) {
    switch (k) {
        case FrequencyKind::GTenth: return "g_tenth";
        case FrequencyKind::GQuarter: return "g_quarter";
        case FrequencyKind::Rocard: return "rocard";
    }
    return "?";
}

namespace detail {

struct Moments {
    double mean;     // (1/pi) int phi
    double mean_sq;  // (1/pi) int phi^2
    double min;      // extremes of phi on [0, pi]
    double max;
};

inline Moments direction_moments(const ShapeDirection& d) {
    switch (d.kind) {
        case ShapeDirection::Kind::Width: return {1.0, 1.0, 1.0, 1.0};
        case ShapeDirection::Kind::SineMode: {
            const double h = d.h;
            const double mean = (d.h % 2 == 1 ? 2.0 : 0.0) / std::numbers::pi;
            return {mean, h * h / 2.0, d.h == 1 ? 0.0 : -h, h};
        }
        case ShapeDirection::Kind::Fourier: {
            double mean = 0, sq = 0;
            for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
                const int h = int(i) + 1;
                if (h % 2 == 1) mean += d.coeffs[i] * 2.0 / h;
                sq += d.coeffs[i] * d.coeffs[i];
            }
            double lo = 0, hi = 0;
            for (int i = 0; i <= 4096; ++i) {
                const double v = d(std::numbers::pi * i / 4096.0);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            return {mean / std::numbers::pi, sq / 2.0, lo, hi};
        }
    }
    return {0, 0, 0, 0};
}

}  // namespace detail

// L(eps * phi); eps = 0 gives the unperturbed l^2
inline double gyration_value(GyrationKind kind, const ShapeDirection& phi, double eps, const PlateConfig& cfg) {
    const double l = cfg.half_width;
    const auto mo = detail::direction_moments(phi);
    const double lowest = eps >= 0 ? eps * mo.min : eps * mo.max;
    if (l + lowest <= 0) throw DegeneratePlate("half-width l + phi(x) must stay positive");
    if (kind == GyrationKind::MeanSquaredHalfWidth) return l * l + 2.0 * l * eps * mo.mean + eps * eps * mo.mean_sq;
    const double m = l + eps * mo.mean;
    return m * m;
}

// generic phi through adaptive quadrature
inline double gyration_value(GyrationKind kind, const std::function<double(double)>& phi, const PlateConfig& cfg) {
    using boost::math::quadrature::gauss_kronrod;
    const double l = cfg.half_width;
    for (int i = 0; i <= 4096; ++i)
        if (l + phi(std::numbers::pi * i / 4096.0) <= 0) throw DegeneratePlate("half-width l + phi(x) must stay positive");
    if (kind == GyrationKind::MeanSquaredHalfWidth) {
        const double v = gauss_kronrod<double, 61>::integrate(
            [&](double x) { return (l + phi(x)) * (l + phi(x)); }, 0.0, std::numbers::pi, 15, 1e-13);
        return v / std::numbers::pi;
    }
    const double m =
        gauss_kronrod<double, 61>::integrate([&](double x) { return l + phi(x); }, 0.0, std::numbers::pi, 15, 1e-13) /
        std::numbers::pi;
    return m * m;
}

// (2l/pi) int_0^pi phi, the same for both kinds
inline double gyration_derivative(GyrationKind, const ShapeDirection& phi, const PlateConfig& cfg) {
    return 2.0 * cfg.half_width * detail::direction_moments(phi).mean;
}

struct FrequencyPartials {
    double f_mu;
    double f_nu;
};

inline double frequency_value(FrequencyKind k, double mu, double nu) {
    if (k == FrequencyKind::Rocard) return std::max(nu - mu, 0.0);
    const double s = nu / mu;
    if (s < 1.0) throw DomainError("g(nu/mu) is defined for nu >= mu only");
    const double t = s - 1.0;
    if (k == FrequencyKind::GTenth) return std::pow(t, 0.1) + t / 10.0;
    return std::pow(t, 0.25);
}

inline FrequencyPartials frequency_partials(FrequencyKind k, double mu, double nu) {
    if (k == FrequencyKind::Rocard) {
        if (nu > mu) return {-1.0, 1.0};
        if (nu < mu) return {0.0, 0.0};
        throw SingularDerivative("max{nu - mu, 0} is not differentiable at nu = mu");
    }
    const double s = nu / mu;
    if (!(s > 1.0)) throw SingularDerivative("g'(s) is singular at s = 1");
    const double t = s - 1.0;
    const double gp = k == FrequencyKind::GTenth ? 0.1 * std::pow(t, -0.9) + 0.1 : 0.25 * std::pow(t, -0.75);
    return {-gp * nu / (mu * mu), gp / mu};
}

inline double ec_value(FrequencyKind freq, GyrationKind gyr, const EigenRecord& mu, const EigenRecord& nu,
                       const ShapeDirection& phi, double eps, const PlateConfig& cfg) {
    return gyration_value(gyr, phi, eps, cfg) * frequency_value(freq, mu.lambda, nu.lambda);
}

struct EcDerivativeParts {
    double gyration_term;  // L'(phi) f
    double mu_term;        // L(0) f_mu D mu
    double nu_term;        // L(0) f_nu D nu
    double value() const { return gyration_term + mu_term + nu_term; }
    double scale() const { return std::max({std::abs(gyration_term), std::abs(mu_term), std::abs(nu_term)}); }
};

inline EcDerivativeParts ec_derivative_parts(FrequencyKind freq, GyrationKind gyr, const EigenRecord& mu,
                                             const EigenRecord& nu, const ShapeDirection& dir, const PlateConfig& cfg) {
    const auto fp = frequency_partials(freq, mu.lambda, nu.lambda);
    const double l2 = cfg.half_width * cfg.half_width;
    EcDerivativeParts p{};
    p.gyration_term = gyration_derivative(gyr, dir, cfg) * frequency_value(freq, mu.lambda, nu.lambda);
    p.mu_term = fp.f_mu != 0.0 ? l2 * fp.f_mu * d_direction(mu, cfg, dir) : 0.0;
    p.nu_term = fp.f_nu != 0.0 ? l2 * fp.f_nu * d_direction(nu, cfg, dir) : 0.0;
    return p;
}

inline double ec_derivative(FrequencyKind freq, GyrationKind gyr, const EigenRecord& mu, const EigenRecord& nu,
                            const ShapeDirection& dir, const PlateConfig& cfg) {
    return ec_derivative_parts(freq, gyr, mu, nu, dir, cfg).value();
}

enum class CoupleFamily { MuM1Nu12, MuM1NuN2, MuM1NuN3, MuM2NuN3 };

inline const char* to_string(CoupleFamily f) {
    switch (f) {
        case CoupleFamily::MuM1Nu12: return "mu_m1-nu_12";
        case CoupleFamily::MuM1NuN2: return "mu_m1-nu_n2";
        case CoupleFamily::MuM1NuN3: return "mu_m1-nu_n3";
        case CoupleFamily::MuM2NuN3: return "mu_m2-nu_n3";
    }
    return "?";
}

struct Couple {
    ModeId mu;
    ModeId nu;
    CoupleFamily family;
};

// the 206 couples, family by family, n outer and m inner
inline std::vector<Couple> standard_couples() {
    std::vector<Couple> out;
    for (int m = 1; m <= 10; ++m)
        out.push_back({ModeId::longitudinal(m, 1), ModeId::torsional(1, 2), CoupleFamily::MuM1Nu12});
    for (int n = 2; n <= 5; ++n)
        for (int m = 1; m <= 14; ++m)
            out.push_back({ModeId::longitudinal(m, 1), ModeId::torsional(n, 2), CoupleFamily::MuM1NuN2});
    for (int k = 1; k <= 2; ++k)
        for (int n = 1; n <= 5; ++n)
            for (int m = 1; m <= 14; ++m)
                out.push_back({ModeId::longitudinal(m, k), ModeId::torsional(n, 3),
                               k == 1 ? CoupleFamily::MuM1NuN3 : CoupleFamily::MuM2NuN3});
    return out;
}

enum class Sign { Positive, Negative, Zero, Ambiguous, Singular };

inline const char* to_string(Sign s) {
    switch (s) {
        case Sign::Positive: return "+";
        case Sign::Negative: return "-";
        case Sign::Zero: return "0";
        case Sign::Ambiguous: return "ambiguous";
        case Sign::Singular: return "singular";
    }
    return "?";
}

inline Sign classify_sign(double value, double scale) {
    if (value == 0.0 && scale == 0.0) return Sign::Zero;
    if (std::abs(value) < 1e-9 * scale) return Sign::Ambiguous;
    return value > 0 ? Sign::Positive : Sign::Negative;
}

enum class Expectation { None, Positive, Negative };

inline const char* to_string(Expectation e) {
    switch (e) {
        case Expectation::None: return "";
        case Expectation::Positive: return "+";
        case Expectation::Negative: return "-";
    }
    return "?";
}

// Cell-level sign statements for the width, sin x and 3 sin 3x directions.
inline Expectation expected_sign(FrequencyKind freq, const ShapeDirection& dir, const Couple& c) {
    using K = ShapeDirection::Kind;
    const bool width = dir.kind == K::Width;
    const bool sin1 = dir.kind == K::SineMode && dir.h == 1;
    const bool sin3 = dir.kind == K::SineMode && dir.h == 3;
    const int m = c.mu.axial, n = c.nu.axial;
    switch (freq) {
        case FrequencyKind::GTenth:
            if (width) return c.family == CoupleFamily::MuM1NuN3 ? Expectation::Negative : Expectation::Positive;
            if (sin1) {
                if (c.family == CoupleFamily::MuM1Nu12 || c.family == CoupleFamily::MuM1NuN3) return Expectation::Negative;
                if (c.family == CoupleFamily::MuM2NuN3) return Expectation::Positive;
            }
            return Expectation::None;
        case FrequencyKind::GQuarter:
            if (width) {
                const bool exception = c.family == CoupleFamily::MuM1Nu12 ? m == 10
                                       : c.family == CoupleFamily::MuM1NuN2 ? (m == 14 && n == 2)
                                                                            : false;
                return exception ? Expectation::Negative : Expectation::Positive;
            }
            if (sin1) {
                if (c.family == CoupleFamily::MuM1NuN3) return Expectation::Negative;
                if (c.family == CoupleFamily::MuM2NuN3) return Expectation::Positive;
            }
            return Expectation::None;
        case FrequencyKind::Rocard:
            if (width)
                return c.family == CoupleFamily::MuM1NuN2 && m <= n - 1 ? Expectation::Positive : Expectation::Negative;
            if (sin1) return Expectation::Negative;
            if (sin3 && n != 1) return Expectation::Negative;
            return Expectation::None;
    }
    return Expectation::None;
}

// Families for which a sign change across the family is stated instead of a cell-level sign.
inline std::vector<std::vector<CoupleFamily>> expected_mixed_groups(FrequencyKind freq, const ShapeDirection& dir) {
    if (!(dir.kind == ShapeDirection::Kind::SineMode && dir.h == 1)) return {};
    if (freq == FrequencyKind::GTenth) return {{CoupleFamily::MuM1NuN2}};
    if (freq == FrequencyKind::GQuarter) return {{CoupleFamily::MuM1Nu12, CoupleFamily::MuM1NuN2}};
    return {};
}

struct SignCell {
    Couple couple;
    ShapeDirection direction;
    double value = 0;
    double scale = 0;
    Sign sign = Sign::Zero;
    Expectation expected = Expectation::None;
    bool agrees = true;
};

struct GroupCheck {
    ShapeDirection direction;
    std::vector<CoupleFamily> families;
    int positive = 0;
    int negative = 0;
    bool satisfied = false;  // both signs present
};

struct SignSummary {
    ShapeDirection direction;
    CoupleFamily family;
    int positive = 0, negative = 0, zero = 0, ambiguous = 0, singular = 0, mismatches = 0;
};

struct SignReport {
    FrequencyKind freq;
    std::vector<SignCell> cells;
    std::vector<SignSummary> summaries;
    std::vector<GroupCheck> groups;

    int mismatches() const {
        int k = 0;
        for (const auto& c : cells) k += c.agrees ? 0 : 1;
        for (const auto& g : groups) k += g.satisfied ? 0 : 1;
        return k;
    }
};

inline SignReport sign_report(FrequencyKind freq, const std::vector<ShapeDirection>& directions, const PlateConfig& cfg,
                              GyrationKind gyr = GyrationKind::MeanSquaredHalfWidth) {
    const auto couples = standard_couples();
    // solve every distinct mode once
    std::vector<ModeId> modes;
    for (const auto& c : couples)
        for (const auto& id : {c.mu, c.nu})
            if (std::find(modes.begin(), modes.end(), id) == modes.end()) modes.push_back(id);
    const auto recs = parallel_map<EigenRecord>(modes.size(), [&](std::size_t i) { return solve_eigenvalue(modes[i], cfg); });
    auto rec_of = [&](const ModeId& id) -> const EigenRecord& {
        return recs[std::size_t(std::find(modes.begin(), modes.end(), id) - modes.begin())];
    };

    SignReport rep{freq, {}, {}, {}};
    for (const auto& dir : directions) {
        auto cells = parallel_map<SignCell>(couples.size(), [&](std::size_t i) {
            const auto& c = couples[i];
            SignCell cell{c, dir};
            try {
                const auto parts = ec_derivative_parts(freq, gyr, rec_of(c.mu), rec_of(c.nu), dir, cfg);
                cell.value = parts.value();
                cell.scale = parts.scale();
                cell.sign = classify_sign(cell.value, cell.scale);
            } catch (const SingularDerivative&) {
                cell.sign = Sign::Singular;
            }
            cell.expected = expected_sign(freq, dir, c);
            if (cell.expected == Expectation::Positive) cell.agrees = cell.sign == Sign::Positive;
            if (cell.expected == Expectation::Negative) cell.agrees = cell.sign == Sign::Negative;
            return cell;
        });
        for (auto fam : {CoupleFamily::MuM1Nu12, CoupleFamily::MuM1NuN2, CoupleFamily::MuM1NuN3, CoupleFamily::MuM2NuN3}) {
            SignSummary s{dir, fam};
            for (const auto& cell : cells) {
                if (cell.couple.family != fam) continue;
                switch (cell.sign) {
                    case Sign::Positive: ++s.positive; break;
                    case Sign::Negative: ++s.negative; break;
                    case Sign::Zero: ++s.zero; break;
                    case Sign::Ambiguous: ++s.ambiguous; break;
                    case Sign::Singular: ++s.singular; break;
                }
                s.mismatches += cell.agrees ? 0 : 1;
            }
            rep.summaries.push_back(s);
        }
        for (const auto& group : expected_mixed_groups(freq, dir)) {
            GroupCheck g{dir, group};
            for (const auto& cell : cells) {
                if (std::find(group.begin(), group.end(), cell.couple.family) == group.end()) continue;
                g.positive += cell.sign == Sign::Positive;
                g.negative += cell.sign == Sign::Negative;
            }
            g.satisfied = g.positive > 0 && g.negative > 0;
            rep.groups.push_back(g);
        }
        rep.cells.insert(rep.cells.end(), cells.begin(), cells.end());
    }
    return rep;
}

}  // namespace plate_modes
