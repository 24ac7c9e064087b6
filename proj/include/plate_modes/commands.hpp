#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "errors.hpp"
#include "functionals.hpp"
#include "hamiltonian.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "sensitivity.hpp"
#include "spectrum.hpp"

namespace plate_modes {

struct IndexRange {
    int first = 1;
    int last = 0;  // last < first is an empty range
};

struct RunConfig {
    PlateConfig plate;
    IndexRange m{1, 14}, n{1, 5}, k{1, 2}, j{2, 3};
    std::optional<std::vector<ShapeDirection>> directions;  // unset: command default
    ModeId torsional = ModeId::torsional(2, 2);             // ratio-law reference
    std::vector<FrequencyKind> functionals{FrequencyKind::GTenth, FrequencyKind::GQuarter, FrequencyKind::Rocard};
    std::vector<HamiltonianSpec> systems{HamiltonianSpec{}};
    double gamma_from = 1.0, gamma_to = 3.0, gamma_step = 0.1;
    InstabilityPolicy policy;
    Format format = Format::Csv;
    std::string out;
    bool paper_digits = false;

    void validate() const {
        plate.validate();
        for (const auto* r : {&m, &n, &k, &j})
            if (r->first < 1 || r->last < 0) throw DomainError("index ranges start at 1");
        torsional.validate();
        if (torsional.is_longitudinal()) throw DomainError("ratio-law reference must be torsional");
        if (!(gamma_step > 0)) throw DomainError("gamma step must be positive");
        if (gamma_to < gamma_from) throw DomainError("gamma range is reversed");
        if (gamma_to > gamma_from && !(gamma_from > 0)) throw DomainError("gamma must be positive");
        for (auto s : systems) {
            s.gamma = 1.0;
            s.validate();
        }
        policy.validate();
    }
};

inline FrequencyKind parse_functional(const std::string& s) {
    if (s == "g_tenth") return FrequencyKind::GTenth;
    if (s == "g_quarter") return FrequencyKind::GQuarter;
    if (s == "rocard") return FrequencyKind::Rocard;
    throw DomainError("bad functional '" + s + "' (expected g_tenth, g_quarter or rocard)");
}

// "<n>,<j>"
inline ModeId parse_torsional(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw DomainError("torsional mode must read <n>,<j>");
    try {
        std::size_t u1 = 0, u2 = 0;
        const int n = std::stoi(s.substr(0, comma), &u1);
        const int j = std::stoi(s.substr(comma + 1), &u2);
        if (u1 != comma || u2 != s.size() - comma - 1) throw DomainError("torsional mode must read <n>,<j>");
        return ModeId::torsional(n, j);
    } catch (const std::logic_error&) {
        throw DomainError("torsional mode must read <n>,<j>");
    }
}

inline Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw DomainError("format must be csv or json");
}

// Overlays a JSON config document; unknown keys are rejected.
inline void apply_json(RunConfig& cfg, const nlohmann::json& doc) {
    if (!doc.is_object()) throw DomainError("config must be a JSON object");
    auto num = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number()) throw DomainError("config key '" + key + "' must be a number");
        return v.get<double>();
    };
    auto integer = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number_integer()) throw DomainError("config key '" + key + "' must be an integer");
        return v.get<int>();
    };
    auto strings = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_array()) throw DomainError("config key '" + key + "' must be an array of strings");
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string()) throw DomainError("config key '" + key + "' must be an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    };
    for (const auto& [key, v] : doc.items()) {
        if (key == "sigma") cfg.plate.sigma = num(v, key);
        else if (key == "half_width") cfg.plate.half_width = num(v, key);
        else if (key == "m_min") cfg.m.first = integer(v, key);
        else if (key == "m_max") cfg.m.last = integer(v, key);
        else if (key == "n_min") cfg.n.first = integer(v, key);
        else if (key == "n_max") cfg.n.last = integer(v, key);
        else if (key == "k_min") cfg.k.first = integer(v, key);
        else if (key == "k_max") cfg.k.last = integer(v, key);
        else if (key == "j_min") cfg.j.first = integer(v, key);
        else if (key == "j_max") cfg.j.last = integer(v, key);
        else if (key == "directions") {
            std::vector<ShapeDirection> d;
            for (const auto& s : strings(v, key)) d.push_back(parse_direction(s));
            cfg.directions = d;
        } else if (key == "torsional") {
            if (!v.is_string()) throw DomainError("config key 'torsional' must read \"<n>,<j>\"");
            cfg.torsional = parse_torsional(v.get<std::string>());
        } else if (key == "functionals") {
            cfg.functionals.clear();
            for (const auto& s : strings(v, key)) cfg.functionals.push_back(parse_functional(s));
        } else if (key == "systems") {
            cfg.systems.clear();
            for (const auto& s : strings(v, key)) cfg.systems.push_back(parse_system(s));
        } else if (key == "gamma_from") cfg.gamma_from = num(v, key);
        else if (key == "gamma_to") cfg.gamma_to = num(v, key);
        else if (key == "gamma_step") cfg.gamma_step = num(v, key);
        else if (key == "policy") {
            if (!v.is_object()) throw DomainError("config key 'policy' must be an object");
            for (const auto& [pk, pv] : v.items()) {
                if (pk == "seed_ratio") cfg.policy.seed_ratio = num(pv, pk);
                else if (pk == "growth_factor") cfg.policy.growth_factor = num(pv, pk);
                else if (pk == "horizon") cfg.policy.horizon = num(pv, pk);
                else if (pk == "energy_cap") cfg.policy.energy_cap = num(pv, pk);
                else if (pk == "bisection_tol") cfg.policy.bisection_tol = num(pv, pk);
                else if (pk == "dt") cfg.policy.dt = num(pv, pk);
                else if (pk == "scan_start") cfg.policy.scan_start = num(pv, pk);
                else if (pk == "scan_factor") cfg.policy.scan_factor = num(pv, pk);
                else throw DomainError("unknown policy key '" + pk + "'");
            }
        } else if (key == "format") {
            if (!v.is_string()) throw DomainError("config key 'format' must be a string");
            cfg.format = parse_format(v.get<std::string>());
        } else if (key == "out") {
            if (!v.is_string()) throw DomainError("config key 'out' must be a string");
            cfg.out = v.get<std::string>();
        } else if (key == "paper_digits") {
            if (!v.is_boolean()) throw DomainError("config key 'paper_digits' must be a boolean");
            cfg.paper_digits = v.get<bool>();
        } else
            throw DomainError("unknown config key '" + key + "'");
    }
}

namespace detail {

inline std::vector<ModeId> requested_modes(const RunConfig& cfg) {
    std::vector<ModeId> out;
    for (int k = cfg.k.first; k <= cfg.k.last; ++k)
        for (int m = cfg.m.first; m <= cfg.m.last; ++m) out.push_back(ModeId::longitudinal(m, k));
    for (int j = cfg.j.first; j <= cfg.j.last; ++j)
        for (int n = cfg.n.first; n <= cfg.n.last; ++n) out.push_back(ModeId::torsional(n, j));
    return out;
}

inline std::vector<ShapeDirection> directions_or(const RunConfig& cfg, std::vector<ShapeDirection> fallback) {
    return cfg.directions ? *cfg.directions : fallback;
}

inline std::string column_tag(const ShapeDirection& d) {
    return d.kind == ShapeDirection::Kind::SineMode ? "sin" + std::to_string(d.h) : to_string(d);
}

inline void check_width_or_sine(const std::vector<ShapeDirection>& dirs) {
    for (const auto& d : dirs)
        if (d.kind == ShapeDirection::Kind::Fourier) throw DomainError("only width and sin:<h> directions are supported here");
}

inline void extra_eigen_warning(const RunConfig& cfg, Report& rep) {
    const auto chk = extra_eigen_check(cfg.plate);
    if (chk.near_integer)
        rep.warnings.push_back("existence equation root s = " + format_number(chk.s, false) +
                               " is an integer: an extra eigenpair exists and is not reported");
}

}  // namespace detail

inline Report cmd_eigs(const RunConfig& cfg) {
    cfg.validate();
    Report rep{"eigs", {}, {}};
    Table t{"eigenvalues",
            {"branch", "axial", "family_index", "function", "status", "bracket_lo", "bracket_hi", "lambda", "residual"},
            {}};
    const auto modes = detail::requested_modes(cfg);
    const auto recs = parallel_map<std::optional<EigenRecord>>(modes.size(),
                                                               [&](std::size_t i) { return try_solve(modes[i], cfg.plate); });
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const auto& id = modes[i];
        const std::string branch = id.is_longitudinal() ? "longitudinal" : "torsional";
        const std::string fn = to_string(family_of(id).tag);
        if (!recs[i]) {
            t.add({branch, (long long)id.axial, (long long)id.family, fn, std::string("nonexistent"), {}, {}, {}, {}});
            continue;
        }
        const auto& r = *recs[i];
        t.add({branch, (long long)id.axial, (long long)id.family, fn, std::string("ok"), r.bracket_lo, r.bracket_hi, r.lambda,
               r.residual});
    }
    rep.tables.push_back(std::move(t));
    detail::extra_eigen_warning(cfg, rep);
    return rep;
}

inline Report cmd_derivs(const RunConfig& cfg) {
    cfg.validate();
    const auto dirs = detail::directions_or(
        cfg, {ShapeDirection::width(), ShapeDirection::sine(1), ShapeDirection::sine(3), ShapeDirection::sine(5)});
    detail::check_width_or_sine(dirs);
    Report rep{"derivs", {}, {}};
    Table t{"derivatives", {"branch", "axial", "family_index", "status", "lambda"}, {}};
    for (const auto& d : dirs) t.columns.push_back("d_" + detail::column_tag(d));
    const auto modes = detail::requested_modes(cfg);
    t.rows = parallel_map<std::vector<Cell>>(modes.size(), [&](std::size_t i) {
        const auto& id = modes[i];
        std::vector<Cell> row{std::string(id.is_longitudinal() ? "longitudinal" : "torsional"), (long long)id.axial,
                              (long long)id.family};
        const auto rec = try_solve(id, cfg.plate);
        if (!rec) {
            row.push_back(std::string("nonexistent"));
            row.resize(t.columns.size());
            return row;
        }
        row.push_back(std::string("ok"));
        row.push_back(rec->lambda);
        for (const auto& d : dirs) row.push_back(d_direction(*rec, cfg.plate, d));
        return row;
    });
    rep.tables.push_back(std::move(t));
    return rep;
}

inline Report cmd_ratio_law(const RunConfig& cfg) {
    cfg.validate();
    const auto dirs =
        detail::directions_or(cfg, {ShapeDirection::width(), ShapeDirection::sine(1), ShapeDirection::sine(3)});
    detail::check_width_or_sine(dirs);
    Report rep{"ratio-law", {}, {}};
    Table ratios{"ratios", {"m", "mu", "nu", "gamma"}, {}};
    Table fits{"fits", {"direction", "c0", "c1", "max_residual", "dof", "scale", "points"}, {}};
    for (const auto& d : dirs) ratios.columns.push_back("d_gamma_" + detail::column_tag(d));

    const int first = cfg.m.first, last = cfg.m.last;
    const int count = std::max(0, last - first + 1);
    if (count == 0) {
        rep.tables.push_back(std::move(ratios));
        rep.tables.push_back(std::move(fits));
        return rep;
    }
    const auto nu = solve_eigenvalue(cfg.torsional, cfg.plate);
    auto per_dir = parallel_map<std::vector<RatioPoint>>(
        dirs.size(), [&](std::size_t i) { return ratio_points(cfg.torsional, first, last, dirs[i], cfg.plate); });
    for (int i = 0; i < count; ++i) {
        const double mu = solve_eigenvalue(ModeId::longitudinal(first + i, 1), cfg.plate).lambda;
        std::vector<Cell> row{(long long)(first + i), mu, nu.lambda, nu.lambda / mu};
        for (const auto& pts : per_dir) row.push_back(pts[std::size_t(i)].d_gamma);
        ratios.add(std::move(row));
    }
    if (count < 2) {
        rep.warnings.push_back("ratio-law fit skipped: needs at least 2 values of m");
    } else {
        if (count == 2) rep.warnings.push_back("ratio-law fit uses 2 points: zero degrees of freedom");
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            const auto fit = count >= 3 ? ratio_law_fit(cfg.torsional, first, last, dirs[i], cfg.plate)
                                        : ratio_law_fit_points(cfg.torsional, first, last, dirs[i], cfg.plate);
            fits.add({to_string(dirs[i]), fit.c0, fit.c1, fit.max_residual, (long long)fit.dof, fit.scale, (long long)count});
        }
    }
    rep.tables.push_back(std::move(ratios));
    rep.tables.push_back(std::move(fits));
    return rep;
}

inline Report cmd_functional_signs(const RunConfig& cfg) {
    cfg.validate();
    const auto dirs =
        detail::directions_or(cfg, {ShapeDirection::width(), ShapeDirection::sine(1), ShapeDirection::sine(3)});
    detail::check_width_or_sine(dirs);
    Report rep{"functional-signs", {}, {}};
    Table cells{"cells",
                {"functional", "direction", "family", "m", "k", "n", "j", "value", "scale", "sign", "expected", "agrees"},
                {}};
    Table summary{"summary",
                  {"functional", "direction", "family", "positive", "negative", "zero", "ambiguous", "singular",
                   "mismatches"},
                  {}};
    Table groups{"mixed_groups", {"functional", "direction", "families", "positive", "negative", "satisfied"}, {}};
    for (auto f : cfg.functionals) {
        const auto r = sign_report(f, dirs, cfg.plate);
        for (const auto& c : r.cells) {
            Cell value = c.sign == Sign::Singular ? Cell{} : Cell{c.value};
            Cell scale = c.sign == Sign::Singular ? Cell{} : Cell{c.scale};
            cells.add({std::string(to_string(f)), to_string(c.direction), std::string(to_string(c.couple.family)),
                       (long long)c.couple.mu.axial, (long long)c.couple.mu.family, (long long)c.couple.nu.axial,
                       (long long)c.couple.nu.family, value, scale, std::string(to_string(c.sign)),
                       std::string(to_string(c.expected)), c.agrees});
        }
        for (const auto& s : r.summaries)
            summary.add({std::string(to_string(f)), to_string(s.direction), std::string(to_string(s.family)),
                         (long long)s.positive, (long long)s.negative, (long long)s.zero, (long long)s.ambiguous,
                         (long long)s.singular, (long long)s.mismatches});
        for (const auto& g : r.groups) {
            std::string fams;
            for (auto fam : g.families) fams += (fams.empty() ? "" : "+") + std::string(to_string(fam));
            groups.add({std::string(to_string(f)), to_string(g.direction), fams, (long long)g.positive,
                        (long long)g.negative, g.satisfied});
        }
    }
    rep.tables.push_back(std::move(cells));
    rep.tables.push_back(std::move(summary));
    rep.tables.push_back(std::move(groups));
    return rep;
}

inline Report cmd_hamiltonian(const RunConfig& cfg) {
    cfg.validate();
    Report rep{"hamiltonian", {}, {}};
    Table curve{"curve", {"system", "gamma", "e_c", "status", "stable_below", "unstable_above", "trials", "max_drift"}, {}};
    Table cls{"classification", {"system", "finite_points", "trend", "curvature"}, {}};
    const auto gammas = gamma_grid(cfg.gamma_from, cfg.gamma_to, cfg.gamma_step);
    for (const auto& sys : cfg.systems) {
        const auto res = sweep(sys, gammas, cfg.policy);
        long long finite = 0;
        for (const auto& p : res.points) {
            finite += p.e_c.has_value();
            curve.add({to_string(sys), p.gamma, p.e_c ? Cell{*p.e_c} : Cell{},
                       std::string(p.e_c ? "finite" : "stable_up_to_cap"), p.lo, p.e_c ? Cell{p.hi} : Cell{},
                       (long long)p.trials, p.max_drift});
        }
        if (!gammas.empty())
            cls.add({to_string(sys), finite, std::string(to_string(res.trend)), std::string(to_string(res.curvature))});
    }
    rep.tables.push_back(std::move(curve));
    rep.tables.push_back(std::move(cls));
    return rep;
}

}  // namespace plate_modes
