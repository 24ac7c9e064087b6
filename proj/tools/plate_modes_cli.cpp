#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <plate_modes/commands.hpp>

namespace pm = plate_modes;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Flags {
    double sigma = 0, half_width = 0;
    int m_min = 0, m_max = 0, n_min = 0, n_max = 0, k_min = 0, k_max = 0, j_min = 0, j_max = 0;
    std::vector<std::string> directions, systems, functionals;
    std::string torsional;
    double gamma_from = 0, gamma_to = 0, gamma_step = 0;
    double seed_ratio = 0, growth_factor = 0, horizon = 0, energy_cap = 0, bisection_tol = 0, dt = 0;
    std::string format, out, config;
    bool paper_digits = false;
};

void add_options(CLI::App& app, Flags& f) {
    app.add_option("--sigma", f.sigma, "Poisson ratio (default 0.2)");
    app.add_option("--half-width", f.half_width, "plate half-width l (default pi/150)");
    app.add_option("--m-min", f.m_min, "first longitudinal index m");
    app.add_option("--m-max", f.m_max, "last longitudinal index m (default 14)");
    app.add_option("--n-min", f.n_min, "first torsional index n");
    app.add_option("--n-max", f.n_max, "last torsional index n (default 5)");
    app.add_option("--k-min", f.k_min, "first longitudinal family index k");
    app.add_option("--k-max", f.k_max, "last longitudinal family index k (default 2)");
    app.add_option("--j-min", f.j_min, "first torsional family index j (default 2)");
    app.add_option("--j-max", f.j_max, "last torsional family index j (default 3)");
    app.add_option("--direction", f.directions, "width | sin:<h> (repeatable)");
    app.add_option("--torsional", f.torsional, "ratio-law torsional mode <n>,<j> (default 2,2)");
    app.add_option("--functional", f.functionals, "g_tenth | g_quarter | rocard (repeatable)");
    app.add_option("--system", f.systems, "a | aprime:<alpha> | adprime:<beta> | b | c | d | e (repeatable)");
    app.add_option("--gamma-from", f.gamma_from, "first gamma (default 1)");
    app.add_option("--gamma-to", f.gamma_to, "last gamma (default 3)");
    app.add_option("--gamma-step", f.gamma_step, "gamma step (default 0.1)");
    app.add_option("--seed-ratio", f.seed_ratio, "initial y(0)/x(0)");
    app.add_option("--growth-factor", f.growth_factor, "instability when max|y| reaches this multiple of y(0)");
    app.add_option("--horizon", f.horizon, "integration time per trial");
    app.add_option("--energy-cap", f.energy_cap, "search ceiling for E_c");
    app.add_option("--bisection-tol", f.bisection_tol, "relative width of the E_c bracket");
    app.add_option("--dt", f.dt, "largest time step");
    app.add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", f.out, "output file (default stdout)");
    app.add_flag("--paper-digits", f.paper_digits, "print 4 significant digits");
    app.add_option("--config", f.config, "JSON run configuration; flags override it");
}

pm::RunConfig build_config(const CLI::App& app, const Flags& f) {
    pm::RunConfig cfg;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw pm::DomainError("cannot open config file '" + f.config + "'");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw pm::DomainError(std::string("config file is not valid JSON: ") + e.what());
        }
        pm::apply_json(cfg, doc);
    }
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--sigma")) cfg.plate.sigma = f.sigma;
    if (given("--half-width")) cfg.plate.half_width = f.half_width;
    if (given("--m-min")) cfg.m.first = f.m_min;
    if (given("--m-max")) cfg.m.last = f.m_max;
    if (given("--n-min")) cfg.n.first = f.n_min;
    if (given("--n-max")) cfg.n.last = f.n_max;
    if (given("--k-min")) cfg.k.first = f.k_min;
    if (given("--k-max")) cfg.k.last = f.k_max;
    if (given("--j-min")) cfg.j.first = f.j_min;
    if (given("--j-max")) cfg.j.last = f.j_max;
    if (given("--direction")) {
        std::vector<pm::ShapeDirection> d;
        for (const auto& s : f.directions) d.push_back(pm::parse_direction(s));
        cfg.directions = d;
    }
    if (given("--torsional")) cfg.torsional = pm::parse_torsional(f.torsional);
    if (given("--functional")) {
        cfg.functionals.clear();
        for (const auto& s : f.functionals) cfg.functionals.push_back(pm::parse_functional(s));
    }
    if (given("--system")) {
        cfg.systems.clear();
        for (const auto& s : f.systems) cfg.systems.push_back(pm::parse_system(s));
    }
    if (given("--gamma-from")) cfg.gamma_from = f.gamma_from;
    if (given("--gamma-to")) cfg.gamma_to = f.gamma_to;
    if (given("--gamma-step")) cfg.gamma_step = f.gamma_step;
    if (given("--seed-ratio")) cfg.policy.seed_ratio = f.seed_ratio;
    if (given("--growth-factor")) cfg.policy.growth_factor = f.growth_factor;
    if (given("--horizon")) cfg.policy.horizon = f.horizon;
    if (given("--energy-cap")) cfg.policy.energy_cap = f.energy_cap;
    if (given("--bisection-tol")) cfg.policy.bisection_tol = f.bisection_tol;
    if (given("--dt")) cfg.policy.dt = f.dt;
    if (given("--format")) cfg.format = pm::parse_format(f.format);
    if (given("--out")) cfg.out = f.out;
    if (f.paper_digits) cfg.paper_digits = true;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partially hinged plate eigenvalues, shape sensitivities and stability thresholds"};
    app.fallthrough();
    Flags flags;
    add_options(app, flags);
    auto* eigs = app.add_subcommand("eigs", "eigenvalue table");
    auto* derivs = app.add_subcommand("derivs", "width and sine-mode derivatives");
    auto* ratio = app.add_subcommand("ratio-law", "frequency ratios, their derivatives and the linear law fits");
    auto* signs = app.add_subcommand("functional-signs", "sign matrices of the stability functionals");
    auto* ham = app.add_subcommand("hamiltonian", "energy threshold curves E_c(gamma)");
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    pm::RunConfig cfg;
    try {
        cfg = build_config(app, flags);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    pm::Report rep;
    try {
        if (eigs->parsed()) rep = pm::cmd_eigs(cfg);
        else if (derivs->parsed()) rep = pm::cmd_derivs(cfg);
        else if (ratio->parsed()) rep = pm::cmd_ratio_law(cfg);
        else if (signs->parsed()) rep = pm::cmd_functional_signs(cfg);
        else if (ham->parsed()) rep = pm::cmd_hamiltonian(cfg);
    } catch (const pm::InsufficientData& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pm::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }

    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    if (cfg.out.empty()) {
        pm::write_report(std::cout, rep, cfg.format, cfg.paper_digits);
        return std::cout ? 0 : kExitNumerical;
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot write '" << cfg.out << "'\n";
        return kExitUsage;
    }
    pm::write_report(os, rep, cfg.format, cfg.paper_digits);
    return os ? 0 : kExitNumerical;
}
