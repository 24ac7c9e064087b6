#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace plate_modes {

enum class System { A, APrime, ADoublePrime, B, C, D, E };

struct HamiltonianSpec {
    System system = System::A;
    double gamma = 1.0;
    double param = 1.0;  // alpha for APrime, beta for ADoublePrime

    void validate() const {
        if (!(gamma > 0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive");
        if ((system == System::APrime || system == System::ADoublePrime) && !(param > 0))
            throw DomainError("alpha / beta must be positive");
    }

    // ydot = mass_y * py
    double mass_y() const {
        return system == System::D || system == System::E ? 1.0 : gamma;
    }
};

inline std::string to_string(const HamiltonianSpec& s) {
    switch (s.system) {
        case System::A: return "a";
        case System::APrime: return "aprime:" + std::to_string(s.param);
        case System::ADoublePrime: return "adprime:" + std::to_string(s.param);
        case System::B: return "b";
        case System::C: return "c";
        case System::D: return "d";
        case System::E: return "e";
    }
    return "?";
}

// a | aprime:<alpha> | adprime:<beta> | b | c | d | e
inline HamiltonianSpec parse_system(const std::string& text) {
    HamiltonianSpec s;
    auto param = [&](std::size_t prefix) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(text.substr(prefix), &used);
        } catch (const std::exception&) {
            throw DomainError("bad system '" + text + "'");
        }
        if (used != text.size() - prefix || !(v > 0)) throw DomainError("bad system '" + text + "'");
        return v;
    };
    if (text == "a") s.system = System::A;
    else if (text == "b") s.system = System::B;
    else if (text == "c") s.system = System::C;
    else if (text == "d") s.system = System::D;
    else if (text == "e") s.system = System::E;
    else if (text.rfind("aprime:", 0) == 0) s = {System::APrime, 1.0, param(7)};
    else if (text.rfind("adprime:", 0) == 0) s = {System::ADoublePrime, 1.0, param(8)};
    else throw DomainError("bad system '" + text + "'");
    return s;
}

struct SimState {
    double x = 0, y = 0, px = 0, py = 0;

    static SimState from_velocities(const HamiltonianSpec& spec, double x, double y, double vx, double vy) {
        return {x, y, vx, vy / spec.mass_y()};
    }
    double vy(const HamiltonianSpec& spec) const { return spec.mass_y() * py; }
};

namespace detail {

struct Grad {
    double gx, gy;
};

inline double potential(const HamiltonianSpec& s, double x, double y) {
    const double x2 = x * x, y2 = y * y, r = x2 + y2;
    switch (s.system) {
        case System::A: return r / 2 + r * r / 4;
        case System::APrime: return s.param * r / 2 + r * r / 4;
        case System::ADoublePrime: return r / 2 + s.param * r * r / 4;
        case System::B: return r / 2 + x2 * x2 * x2 / 6 + y2 * y2 * y2 / 6 + x2 * y2 / 2;
        case System::C: return r / 2 + x2 * y2 / 2;
        case System::D: return x2 / 2 + s.gamma * y2 / 2 + r * r / 4;
        case System::E: {
            const double x4 = x2 * x2;
            return x2 / 2 + s.gamma * y2 / 2 + r * r / 4 + x4 * x4 / 4;
        }
    }
    return 0;
}

inline Grad gradient(const HamiltonianSpec& s, double x, double y) {
    const double x2 = x * x, y2 = y * y, r = x2 + y2;
    switch (s.system) {
        case System::A: return {(1 + r) * x, (1 + r) * y};
        case System::APrime: return {(s.param + r) * x, (s.param + r) * y};
        case System::ADoublePrime: return {(1 + s.param * r) * x, (1 + s.param * r) * y};
        case System::B: return {(1 + x2 * x2 + y2) * x, (1 + y2 * y2 + x2) * y};
        case System::C: return {(1 + y2) * x, (1 + x2) * y};
        case System::D: return {(1 + r) * x, (s.gamma + r) * y};
        case System::E: return {(1 + r + 2 * x2 * x2 * x2) * x, (s.gamma + r) * y};
    }
    return {0, 0};
}

}  // namespace detail

inline double energy(const HamiltonianSpec& spec, const SimState& st) {
    return st.px * st.px / 2 + spec.mass_y() * st.py * st.py / 2 + detail::potential(spec, st.x, st.y);
}

namespace detail {

// fourth-order triple-jump composition of velocity Verlet
struct Yoshida4 {
    double drift[4];
    double kick[3];
    Yoshida4() {
        const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
        const double w0 = -std::cbrt(2.0) * w1;
        drift[0] = drift[3] = w1 / 2;
        drift[1] = drift[2] = (w0 + w1) / 2;
        kick[0] = kick[2] = w1;
        kick[1] = w0;
    }
};

inline const Yoshida4& yoshida() {
    static const Yoshida4 y;
    return y;
}

inline void advance(const HamiltonianSpec& spec, SimState& s, double dt, double my) {
    const auto& c = yoshida();
    for (int k = 0; k < 3; ++k) {
        s.x += c.drift[k] * dt * s.px;
        s.y += c.drift[k] * dt * my * s.py;
        const auto g = gradient(spec, s.x, s.y);
        s.px -= c.kick[k] * dt * g.gx;
        s.py -= c.kick[k] * dt * g.gy;
    }
    s.x += c.drift[3] * dt * s.px;
    s.y += c.drift[3] * dt * my * s.py;
}

}  // namespace detail

inline SimState step(const HamiltonianSpec& spec, SimState state, double dt) {
    if (!(dt > 0)) throw DomainError("dt must be positive");
    detail::advance(spec, state, dt, spec.mass_y());
    return state;
}

struct TrajectorySummary {
    double max_abs_y = 0;
    double energy_drift = 0;  // max relative drift over the sampled steps
    long steps = 0;
    double dt = 0;
    bool stopped_early = false;
    SimState final_state;
};

// stop_abs_y ends the run once |y| reaches it; drift above 1e-4 discards the run
inline TrajectorySummary integrate(const HamiltonianSpec& spec, const SimState& init, double horizon, double dt,
                                   double stop_abs_y = std::numeric_limits<double>::infinity()) {
    spec.validate();
    if (!(dt > 0) || !(horizon > 0)) throw DomainError("dt and horizon must be positive");
    const double e0 = energy(spec, init);
    if (!std::isfinite(e0)) throw DomainError("initial energy is not finite");
    const double escale = std::abs(e0) > 0 ? std::abs(e0) : 1.0;
    const double my = spec.mass_y();
    const long n = static_cast<long>(std::ceil(horizon / dt - 1e-9));

    TrajectorySummary out;
    out.dt = dt;
    out.max_abs_y = std::abs(init.y);
    SimState s = init;
    long i = 0;
    for (; i < n; ++i) {
        detail::advance(spec, s, dt, my);
        const double ay = std::abs(s.y);
        if (ay > out.max_abs_y) out.max_abs_y = ay;
        if ((i & 63) == 63) out.energy_drift = std::max(out.energy_drift, std::abs(energy(spec, s) - e0) / escale);
        if (out.max_abs_y >= stop_abs_y) {
            out.stopped_early = true;
            ++i;
            break;
        }
    }
    out.steps = i;
    out.energy_drift = std::max(out.energy_drift, std::abs(energy(spec, s) - e0) / escale);
    out.final_state = s;
    if (!(out.energy_drift <= 1e-4))
        throw IntegrationFailure("relative energy drift " + std::to_string(out.energy_drift) + " exceeds 1e-4");
    return out;
}

struct InstabilityPolicy {
    double seed_ratio = 1e-4;
    double growth_factor = 100.0;
    double horizon = 1000.0;
    double energy_cap = 1e3;
    double bisection_tol = 1e-2;
    double dt = 1e-3;
    double scan_start = 1e-3;
    double scan_factor = 1.5;
    double drift_tol = 1e-6;
    int max_refinements = 6;

    void validate() const {
        if (!(seed_ratio > 0 && seed_ratio < 1 && growth_factor > 1 && horizon > 0 && energy_cap > 0 &&
              bisection_tol > 0 && dt > 0 && scan_start > 0 && scan_factor > 1 && drift_tol > 0 && max_refinements >= 0))
            throw DomainError("invalid instability policy");
    }
};

namespace detail {

// positive x with f(x) = target for f increasing from f(0) = 0
template <class Fn>
double invert_increasing(Fn&& f, double target) {
    double lo = 0, hi = 1;
    while (f(hi) < target) {
        lo = hi;
        hi *= 2;
        if (hi > 1e150) throw DomainError("energy level out of reach");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Gershgorin bound on the largest frequency inside the box reached at this energy
inline double max_frequency(const HamiltonianSpec& spec, double rx, double ry) {
    const double h = 1e-6 * std::max({1.0, rx, ry});
    const auto gxp = gradient(spec, rx + h, ry), gxm = gradient(spec, rx - h, ry);
    const auto gyp = gradient(spec, rx, ry + h), gym = gradient(spec, rx, ry - h);
    const double hxx = (gxp.gx - gxm.gx) / (2 * h), hxy = (gxp.gy - gxm.gy) / (2 * h);
    const double hyy = (gyp.gy - gym.gy) / (2 * h), hyx = (gyp.gx - gym.gx) / (2 * h);
    const double my = spec.mass_y();
    const double row_x = std::abs(hxx) + std::abs(hxy);
    const double row_y = my * (std::abs(hyy) + std::abs(hyx));
    return std::sqrt(std::max({row_x, row_y, 1.0, my}));
}

}  // namespace detail

// x(0) on the ray y = seed * x carrying the requested (purely potential) energy
inline SimState initial_state(const HamiltonianSpec& spec, double energy_level, const InstabilityPolicy& policy) {
    if (!(energy_level > 0)) throw DomainError("energy level must be positive");
    const double x0 = detail::invert_increasing(
        [&](double x) { return detail::potential(spec, x, policy.seed_ratio * x); }, energy_level);
    return {x0, policy.seed_ratio * x0, 0.0, 0.0};
}

inline double stable_dt(const HamiltonianSpec& spec, double energy_level, const InstabilityPolicy& policy) {
    const auto init = initial_state(spec, energy_level, policy);
    const double ry = detail::invert_increasing([&](double y) { return detail::potential(spec, 0.0, y); }, energy_level);
    const double omega = detail::max_frequency(spec, init.x, ry);
    return std::min(policy.dt, 0.08 / omega);
}

struct TrialResult {
    bool unstable = false;
    SimState init;
    TrajectorySummary summary;
};

inline TrialResult run_trial(const HamiltonianSpec& spec, double energy_level, const InstabilityPolicy& policy) {
    spec.validate();
    policy.validate();
    if (energy_level > policy.energy_cap) throw DomainError("energy level above the policy cap");
    TrialResult res;
    res.init = initial_state(spec, energy_level, policy);
    const double threshold = policy.growth_factor * std::abs(res.init.y);
    double dt = stable_dt(spec, energy_level, policy);
    std::string last_error = "drift above tolerance";
    for (int r = 0; r <= policy.max_refinements; ++r, dt /= 2) {
        try {
            res.summary = integrate(spec, res.init, policy.horizon, dt, threshold);
        } catch (const IntegrationFailure& e) {
            last_error = e.what();
            continue;
        }
        if (res.summary.energy_drift <= policy.drift_tol) {
            res.unstable = res.summary.max_abs_y >= threshold;
            return res;
        }
    }
    throw IntegrationFailure("no accepted trajectory at energy " + std::to_string(energy_level) + ": " + last_error);
}

inline bool is_unstable(const HamiltonianSpec& spec, double energy_level, const InstabilityPolicy& policy) {
    return run_trial(spec, energy_level, policy).unstable;
}

struct ThresholdPoint {
    double gamma = 0;
    std::optional<double> e_c;  // empty: stable up to the cap
    double lo = 0;              // largest energy found stable
    double hi = 0;              // smallest energy found unstable (or the cap)
    int trials = 0;
    double max_drift = 0;

    bool stable_up_to_cap() const { return !e_c.has_value(); }
};

inline ThresholdPoint critical_energy(const HamiltonianSpec& spec, const InstabilityPolicy& policy) {
    spec.validate();
    policy.validate();
    ThresholdPoint pt;
    pt.gamma = spec.gamma;
    auto trial = [&](double e) {
        const auto r = run_trial(spec, e, policy);
        ++pt.trials;
        pt.max_drift = std::max(pt.max_drift, r.summary.energy_drift);
        return r.unstable;
    };
    double stable = 0;
    double e = std::min(policy.scan_start, policy.energy_cap);
    bool found = false;
    while (true) {
        if (trial(e)) {
            found = true;
            break;
        }
        stable = e;
        if (e >= policy.energy_cap) break;
        e = std::min(e * policy.scan_factor, policy.energy_cap);
    }
    if (!found) {
        pt.lo = stable;
        pt.hi = policy.energy_cap;
        return pt;
    }
    double lo = stable, hi = e;
    while (hi - lo > policy.bisection_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        (trial(mid) ? hi : lo) = mid;
    }
    pt.lo = lo;
    pt.hi = hi;
    pt.e_c = hi;
    return pt;
}

enum class Trend { Increasing, Decreasing, Flat, Mixed, Insufficient };
enum class Curvature { Convex, Concave, Linear, Mixed, Insufficient };

inline const char* to_string(Trend t) {
    switch (t) {
        case Trend::Increasing: return "increasing";
        case Trend::Decreasing: return "decreasing";
        case Trend::Flat: return "flat";
        case Trend::Mixed: return "mixed";
        case Trend::Insufficient: return "insufficient";
    }
    return "?";
}

inline const char* to_string(Curvature c) {
    switch (c) {
        case Curvature::Convex: return "convex";
        case Curvature::Concave: return "concave";
        case Curvature::Linear: return "linear";
        case Curvature::Mixed: return "mixed";
        case Curvature::Insufficient: return "insufficient";
    }
    return "?";
}

namespace detail {

inline int banded_sign(double d, double local, double band) {
    if (std::abs(d) <= band * std::abs(local)) return 0;
    return d > 0 ? 1 : -1;
}

}  // namespace detail

// first differences with a dead band of `band` times the larger neighbour
inline Trend classify_trend(const std::vector<double>& e, double band = 0.05) {
    if (e.size() < 2) return Trend::Insufficient;
    bool up = false, down = false;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        const int s = detail::banded_sign(e[i + 1] - e[i], std::max(std::abs(e[i]), std::abs(e[i + 1])), band);
        up |= s > 0;
        down |= s < 0;
    }
    if (up && down) return Trend::Mixed;
    if (up) return Trend::Increasing;
    if (down) return Trend::Decreasing;
    return Trend::Flat;
}

inline Curvature classify_curvature(const std::vector<double>& e, double band = 0.05) {
    if (e.size() < 3) return Curvature::Insufficient;
    bool pos = false, neg = false;
    for (std::size_t i = 1; i + 1 < e.size(); ++i) {
        const int s = detail::banded_sign(e[i + 1] - 2 * e[i] + e[i - 1], e[i], band);
        pos |= s > 0;
        neg |= s < 0;
    }
    if (pos && neg) return Curvature::Mixed;
    if (pos) return Curvature::Convex;
    if (neg) return Curvature::Concave;
    return Curvature::Linear;
}

struct SweepResult {
    std::vector<ThresholdPoint> points;
    Trend trend = Trend::Insufficient;
    Curvature curvature = Curvature::Insufficient;
};

inline std::vector<double> gamma_grid(double from, double to, double step) {
    if (!(step > 0)) throw DomainError("gamma step must be positive");
    if (to < from) throw DomainError("gamma range is reversed");
    std::vector<double> g;
    if (to == from) return g;
    const long n = static_cast<long>(std::floor((to - from) / step + 1e-9));
    for (long i = 0; i <= n; ++i) g.push_back(from + double(i) * step);
    return g;
}

inline SweepResult summarize(std::vector<ThresholdPoint> pts) {
    SweepResult out;
    out.points = std::move(pts);
    std::vector<double> finite;
    for (const auto& p : out.points)
        if (p.e_c) finite.push_back(*p.e_c);
    out.trend = classify_trend(finite);
    out.curvature = classify_curvature(finite);
    return out;
}

inline SweepResult sweep(const HamiltonianSpec& tmpl, const std::vector<double>& gammas, const InstabilityPolicy& policy) {
    auto pts = parallel_map<ThresholdPoint>(gammas.size(), [&](std::size_t i) {
        HamiltonianSpec s = tmpl;
        s.gamma = gammas[i];
        return critical_energy(s, policy);
    });
    return summarize(std::move(pts));
}

inline SweepResult sweep(const HamiltonianSpec& tmpl, double gamma_from, double gamma_to, double step,
                         const InstabilityPolicy& policy) {
    return sweep(tmpl, gamma_grid(gamma_from, gamma_to, step), policy);
}

}  // namespace plate_modes
