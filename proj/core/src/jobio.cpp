#include "gapforge/jobio.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "gapforge/errors.hpp"
#include "gapforge/hierarchy.hpp"
#include "gapforge/numverify.hpp"
#include "gapforge/polyfactory.hpp"
#include "gapforge/riccati.hpp"

namespace gapforge {

using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

Rational parse_rational_field(const std::string& text, const char* what) {
    auto r = Rational::parse(text);
    if (!r)
        throw ConfigError(std::string(what) + ": expected a rational 'p/q', got '" +
                          text + "'");
    return *r;
}

HierarchySpec make_spec(const JobConfig& c) {
    if (c.gaps.empty()) throw ConfigError("at least one gap is required");
    HierarchySpec s;
    for (const auto& g : c.gaps) s.gaps.push_back(parse_rational_field(g, "gap"));
    s.period = static_cast<int>(s.gaps.size());
    s.ground_energy = parse_rational_field(c.ground_energy, "e0");
    s.center = parse_rational_field(c.center, "u0");
    s.validate();
    return s;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open output file: " + path.string());
    return f;
}

void write_json(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        auto f = open_out(out_path);
        f << j.dump(2) << '\n';
    }
}

std::string join_coeffs(const PolyQ& p) {
    std::string out;
    const int d = p.degree();
    for (int k = 0; k <= std::max(d, 0); ++k) {
        if (k) out += ' ';
        out += p.coeff(static_cast<unsigned>(k)).str();
    }
    return out;
}

double normalization_value(const QuasiState& s, const HierarchySpec& spec) {
    const double n0 = s.form == StateForm::laguerre_v
                          ? std::pow(spec.gap_sum().to_double() / 4.0, 0.25)
                          : std::pow(spec.gaps[0].to_double() / 2.0, 0.25);
    return n0 * std::sqrt(s.amp2.to_double() / gamma_to_double(s.gamma_base));
}

// --- engineer ----------------------------------------------------------------

int engineer_impl(const JobConfig& config) {
    if (config.out_path.empty())
        throw ConfigError("engineer requires --out DIR");
    if (config.levels < 1 || config.levels > 128)
        throw ConfigError("levels must be in 1..128");
    const HierarchySpec spec = make_spec(config);
    std::filesystem::create_directories(config.out_path);
    const std::filesystem::path dir = config.out_path;

    if (spec.period >= 3) {
        std::cout << "period " << spec.period
                  << " has no closed form; routing to the numerical riccati solver\n";
        JobConfig routed = config;
        routed.command = "riccati";
        routed.out_path = (dir / "riccati.json").string();
        return cmd_riccati(routed);
    }

    const Hierarchy h = build_hierarchy(spec);
    const double u0 = spec.center.to_double();
    const double c = h.superpotentials[0].linear_coeff.to_double();
    const double radius = 6.0 / std::sqrt(c);
    const int points = 2001;
    const int mid = (points - 1) / 2;
    const double step = radius / mid;
    auto sample_u = [&](int j) { return u0 + (j - mid) * step; };

    {
        auto f = open_out(dir / "potentials.csv");
        f << "#schema=1\nu";
        for (int lam = 1; lam <= spec.period; ++lam) f << ",V_" << lam;
        f << '\n';
        for (int j = 0; j < points; ++j) {
            const double u = sample_u(j);
            f << format_double(u);
            for (const auto& v : h.potentials) {
                double val;
                try {
                    val = v.eval(u);
                } catch (const SingularPoint&) {
                    val = v.invsq_coeff.sgn() > 0 ? HUGE_VAL : -HUGE_VAL;
                }
                f << ',' << format_double(val);
            }
            f << '\n';
        }
    }

    std::vector<std::vector<QuasiState>> states(
        static_cast<std::size_t>(spec.period));
    for (int lam = 1; lam <= spec.period; ++lam)
        for (int n = 0; n < config.levels; ++n)
            states[static_cast<std::size_t>(lam - 1)].push_back(
                build_eigenstate(spec, lam, static_cast<unsigned>(n)));

    {
        auto f = open_out(dir / "states.csv");
        f << "#schema=1\nu";
        for (int lam = 1; lam <= spec.period; ++lam)
            for (int n = 0; n < config.levels; ++n) f << ",psi_" << lam << '_' << n;
        f << '\n';
        for (int j = 0; j < points; ++j) {
            const double u = sample_u(j);
            f << format_double(u);
            for (const auto& column : states)
                for (const auto& s : column) {
                    double val;
                    try {
                        val = wavefunction_eval(s, spec, u);
                    } catch (const SingularPoint&) {
                        val = HUGE_VAL;   // magnitude diverges at the center
                    }
                    f << ',' << format_double(val);
                }
            f << '\n';
        }
    }

    {
        json j;
        j["schema"] = 1;
        j["period"] = spec.period;
        json gaps = json::array();
        for (const auto& g : spec.gaps) gaps.push_back(g.str());
        j["gaps"] = gaps;
        j["ground_energy"] = spec.ground_energy.str();
        j["center"] = spec.center.str();
        json hams = json::array();
        for (int lam = 1; lam <= spec.period; ++lam) {
            const SpectrumTable t = make_spectrum_table(
                spec, lam, static_cast<unsigned>(config.levels - 1));
            json energies = json::array();
            for (const auto& [n, e] : t.entries) energies.push_back(e.str());
            hams.push_back({{"level", lam}, {"energies", energies}});
        }
        j["hamiltonians"] = hams;
        auto f = open_out(dir / "spectrum.json");
        f << j.dump(2) << '\n';
    }

    {
        json j;
        j["schema"] = 1;
        j["period"] = spec.period;
        j["alpha"] = spec.alpha().str();
        json ws = json::array();
        for (int lam = 1; lam <= spec.period; ++lam) {
            const auto& w = h.superpotentials[static_cast<std::size_t>(lam - 1)];
            ws.push_back({{"level", lam},
                          {"linear", w.linear_coeff.str()},
                          {"pole", w.pole_coeff.str()},
                          {"center", w.center.str()}});
        }
        j["superpotentials"] = ws;
        json norms = json::array();
        for (int lam = 1; lam <= spec.period; ++lam)
            for (int n = 0; n < config.levels; ++n) {
                const auto& s = states[static_cast<std::size_t>(lam - 1)]
                                      [static_cast<std::size_t>(n)];
                norms.push_back({{"level", lam},
                                 {"n", n},
                                 {"amp2", s.amp2.str()},
                                 {"gamma_base", s.gamma_base.str()},
                                 {"value", normalization_value(s, spec)}});
            }
        j["normalizations"] = norms;
        json notices = json::array();
        if (spec.period == 2 && spec.alpha() == Rational(0))
            notices.push_back(
                "alpha = 0: equal gaps, the hierarchy degenerates to the harmonic "
                "(period 1) case");
        j["notices"] = notices;
        auto f = open_out(dir / "summary.json");
        f << j.dump(2) << '\n';
    }

    return exit_ok;
}

// --- polys ---------------------------------------------------------------- --

int polys_impl(const JobConfig& config) {
    if (config.pmax < 0 || config.pmax > 64)
        throw ConfigError("pmax must be in 0..64");
    const Rational gamma = parse_rational_field(config.gamma, "gamma");

    std::ostringstream table;
    table << "#schema=1\nfamily,parameter,degree,route,coefficients,verdict\n";
    for (int p = 0; p <= config.pmax; ++p) {
        const unsigned up = static_cast<unsigned>(p);
        const PolyQ series = laguerre_series(gamma, up);
        const PolyQ rod_plus = laguerre_generalized_rodrigues(gamma, up, D2Sign::plus);
        const PolyQ rod_minus = laguerre_generalized_rodrigues(gamma, up, D2Sign::minus);
        const char* verdict =
            (series == rod_plus && series == rod_minus) ? "exact-equal" : "mismatch";
        const std::string g = gamma.str();
        table << "laguerre," << g << ',' << p << ",series," << join_coeffs(series)
              << ',' << verdict << '\n';
        table << "laguerre," << g << ',' << p << ",rodrigues_plus,"
              << join_coeffs(rod_plus) << ',' << verdict << '\n';
        table << "laguerre," << g << ',' << p << ",rodrigues_minus,"
              << join_coeffs(rod_minus) << ',' << verdict << '\n';
    }
    for (int n = 0; n <= config.pmax; ++n) {
        const unsigned un = static_cast<unsigned>(n);
        const PolyQ ladder = hermite(un, HermiteRoute::ladder);
        const PolyQ three = hermite(un, HermiteRoute::three_term);
        const PolyQ from_lag = hermite_from_laguerre(un);
        const char* verdict =
            (ladder == three && ladder == from_lag) ? "exact-equal" : "mismatch";
        table << "hermite,-," << n << ",ladder," << join_coeffs(ladder) << ','
              << verdict << '\n';
        table << "hermite,-," << n << ",three_term," << join_coeffs(three) << ','
              << verdict << '\n';
        table << "hermite,-," << n << ",from_laguerre," << join_coeffs(from_lag)
              << ',' << verdict << '\n';
    }

    if (config.out_path.empty()) {
        std::cout << table.str();
    } else {
        auto f = open_out(config.out_path);
        f << table.str();
    }
    return exit_ok;
}

// --- riccati -------------------------------------------------------------- --

int riccati_impl(const JobConfig& config) {
    if (config.gaps.empty()) throw ConfigError("at least one gap is required");
    RiccatiProblem p;
    for (const auto& g : config.gaps)
        p.gaps.push_back(parse_rational_field(g, "gap").to_double());
    p.period = static_cast<int>(p.gaps.size());
    p.center = parse_rational_field(config.center, "u0").to_double();
    if (config.ansatz == "pole_poly" || config.ansatz == "pole_plus_polynomial") {
        p.ansatz = RiccatiAnsatz::pole_plus_polynomial;
        p.solver = RiccatiSolver::newton;
    } else if (config.ansatz == "grid" || config.ansatz == "grid_collocation") {
        p.ansatz = RiccatiAnsatz::grid_collocation;
        p.solver = RiccatiSolver::least_squares;
    } else {
        throw ConfigError("unknown ansatz '" + config.ansatz +
                          "' (expected pole_poly or grid)");
    }
    p.max_order = config.order;
    p.tol = config.tol;
    p.grid.u_min = p.center - 8.0;
    p.grid.u_max = p.center + 8.0;
    p.grid.points = config.grid_points > 0 ? config.grid_points : 2001;
    p.validate();

    const RiccatiSolution sol = solve_periodic(p);

    json j;
    j["schema"] = 1;
    j["period"] = p.period;
    j["gaps"] = p.gaps;
    j["center"] = p.center;
    j["ansatz"] = p.ansatz == RiccatiAnsatz::pole_plus_polynomial
                      ? "pole_plus_polynomial"
                      : "grid_collocation";
    switch (sol.status) {
        case RiccatiStatus::converged: j["status"] = "converged"; break;
        case RiccatiStatus::no_convergence: j["status"] = "no_convergence"; break;
        case RiccatiStatus::ansatz_insufficient:
            j["status"] = "ansatz_insufficient";
            break;
    }
    j["converged"] = sol.converged;
    j["residual_norm"] = sol.residual_norm;
    j["exploratory"] = sol.exploratory;
    j["ansatz_order"] = sol.ansatz_order;
    j["iterations"] = sol.iterations;
    json ws = json::array();
    for (std::size_t lam = 0; lam < sol.w.size(); ++lam) {
        json entry;
        entry["level"] = static_cast<int>(lam + 1);
        if (const auto* pp = std::get_if<PolePolyW>(&sol.w[lam])) {
            entry["linear"] = pp->linear;
            entry["pole"] = pp->pole;
            entry["odd_coeffs"] = pp->odd_coeffs;
        } else {
            const auto& gw = std::get<GridW>(sol.w[lam]);
            entry["offsets"] = gw.offsets;
            entry["values"] = gw.values;
        }
        ws.push_back(std::move(entry));
    }
    j["superpotentials"] = ws;
    write_json(j, config.out_path);

    return sol.converged ? exit_ok : exit_no_convergence;
}

// --- verify ----------------------------------------------------------------

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::string brief(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

HierarchySpec spec_from_alpha(const Rational& alpha) {
    // gap sum fixed at 2: Δ1 = 1-2α, Δ2 = 1+2α
    HierarchySpec s;
    s.period = 2;
    s.gaps = {Rational(1) - Rational(2) * alpha, Rational(1) + Rational(2) * alpha};
    s.validate();
    return s;
}

std::pair<bool, std::string> check_closure_exact() {
    int bad = 0;
    for (const auto& gaps :
         std::vector<std::vector<Rational>>{{Rational(2)},
                                            {Rational(1), Rational(3)},
                                            {Rational(1), Rational(2)}}) {
        HierarchySpec s;
        s.gaps = gaps;
        s.period = static_cast<int>(gaps.size());
        for (const auto& triple : closure_residual(s))
            if (!triple.is_zero()) ++bad;
    }
    return {bad == 0, bad == 0 ? "all Laurent residuals identically zero"
                               : std::to_string(bad) + " nonzero residual triples"};
}

std::pair<bool, std::string> check_round_trip(const std::vector<Rational>& alphas,
                                              unsigned nmax) {
    int bad = 0, total = 0;
    for (const auto& a : alphas) {
        const HierarchySpec s = spec_from_alpha(a);
        for (int lam = 1; lam <= 2; ++lam) {
            // lowering the ground state annihilates it
            const auto dead = apply_ladder(make_ladder(s, LadderDirection::lower, lam),
                                           ground_state(s, lam));
            ++total;
            if (!dead.is_zero()) ++bad;
            for (unsigned n = 1; n <= nmax; ++n) {
                const QuasiState psi = build_eigenstate(s, lam, n);
                const auto down =
                    apply_ladder(make_ladder(s, LadderDirection::lower, lam), psi);
                const auto back =
                    apply_ladder(make_ladder(s, LadderDirection::raise, lam), down);
                const Rational factor =
                    energy_level(s, lam, n) - energy_level(s, lam, 0);
                ++total;
                if (!states_equal(back, scale_state(psi, factor))) ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                          " ladder round trips exact"};
}

std::pair<bool, std::string> check_closed_forms(const std::vector<Rational>& alphas,
                                                unsigned nmax) {
    int bad = 0, total = 0;
    for (const auto& a : alphas) {
        const HierarchySpec s = spec_from_alpha(a);
        for (int lam = 1; lam <= 2; ++lam)
            for (unsigned n = 0; n <= nmax; ++n) {
                const QuasiState ladder = build_eigenstate(s, lam, n);
                const QuasiState closed =
                    closed_form_state(s, eigenstate_closed_form(s, lam, n));
                ++total;
                if (!states_equal(ladder, closed)) ++bad;
            }
    }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                          " states match the closed form exactly"};
}

std::pair<bool, std::string> check_recursions(unsigned pmax) {
    const std::vector<Rational> gammas = {Rational(1, 2),  Rational(-1, 4),
                                          Rational(1, 3),  Rational(7, 3),
                                          Rational(-2, 5), Rational(5, 2)};
    int bad = 0, total = 0;
    for (const auto& g : gammas)
        for (unsigned p = 0; p <= pmax; ++p)
            for (const auto& [name, res] : recursion_residuals(g, p)) {
                ++total;
                if (!res.is_zero()) ++bad;
            }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                          " recursion residuals identically zero"};
}

std::pair<bool, std::string> check_rodrigues(unsigned pmax) {
    const std::vector<Rational> gammas = {Rational(1, 2),  Rational(-1, 4),
                                          Rational(1, 3),  Rational(7, 3),
                                          Rational(-2, 5), Rational(5, 2)};
    int bad = 0, total = 0;
    for (const auto& g : gammas)
        for (unsigned p = 0; p <= pmax; ++p) {
            const PolyQ series = laguerre_series(g, p);
            ++total;
            if (laguerre_generalized_rodrigues(g, p, D2Sign::plus) != series) ++bad;
            ++total;
            if (laguerre_generalized_rodrigues(g, p, D2Sign::minus) != series) ++bad;
        }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                          " generalized-Rodrigues constructions exact"};
}

std::pair<bool, std::string> check_hermite_routes(unsigned nmax) {
    int bad = 0, total = 0;
    for (unsigned n = 0; n <= nmax; ++n) {
        const PolyQ ladder = hermite(n, HermiteRoute::ladder);
        ++total;
        if (hermite(n, HermiteRoute::three_term) != ladder) ++bad;
        ++total;
        if (hermite_from_laguerre(n) != ladder) ++bad;
        ++total;
        if (!ode_residual(HermiteOde{n}, ladder).is_zero()) ++bad;
    }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                          " Hermite route/ODE identities exact"};
}

std::pair<bool, std::string> check_gram(const std::vector<Rational>& alphas,
                                        int count, double tol) {
    double worst = 0.0;
    // period-2 hierarchies over the alpha sample
    for (const auto& a : alphas) {
        const HierarchySpec s = spec_from_alpha(a);
        for (int lam = 1; lam <= 2; ++lam) {
            std::vector<QuasiState> st;
            for (int n = 0; n < count; ++n)
                st.push_back(build_eigenstate(s, lam, static_cast<unsigned>(n)));
            for (int i = 0; i < count; ++i)
                for (int j = 0; j < count; ++j) {
                    const double g =
                        overlap(st[static_cast<std::size_t>(i)],
                                st[static_cast<std::size_t>(j)], s,
                                overlap_scheme(st[static_cast<std::size_t>(i)],
                                               st[static_cast<std::size_t>(j)]));
                    worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
                }
        }
    }
    // the Gaussian (period-1) branch
    HierarchySpec s1;
    s1.period = 1;
    s1.gaps = {Rational(2)};
    std::vector<QuasiState> st;
    for (int n = 0; n < count; ++n)
        st.push_back(build_eigenstate(s1, 1, static_cast<unsigned>(n)));
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j) {
            const double g = overlap(st[static_cast<std::size_t>(i)],
                                     st[static_cast<std::size_t>(j)], s1,
                                     overlap_scheme(st[static_cast<std::size_t>(i)],
                                                    st[static_cast<std::size_t>(j)]));
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return {worst <= tol, "max |G - I| = " + brief(worst)};
}

std::pair<bool, std::string> check_fd_period2(int points) {
    HierarchySpec s;
    s.period = 2;
    s.gaps = {Rational(1), Rational(2)};
    s.ground_energy = Rational(1);   // keep every level away from zero
    const Hierarchy h = build_hierarchy(s);
    Grid grid;
    grid.points = points;
    double worst = 0.0;
    for (int lam = 1; lam <= 2; ++lam) {
        const auto fd =
            fd_spectrum(h.potentials[static_cast<std::size_t>(lam - 1)], s, grid, 6);
        for (int n = 0; n < 6; ++n) {
            const double exact =
                energy_level(s, lam, static_cast<unsigned>(n)).to_double();
            worst = std::max(worst, std::abs(fd[static_cast<std::size_t>(n)] - exact) /
                                        std::abs(exact));
        }
    }
    return {worst <= 1e-3, "max relative error = " + brief(worst)};
}

std::pair<bool, std::string> check_fd_harmonic(int points) {
    HierarchySpec s;
    s.period = 1;
    s.gaps = {Rational(2)};
    s.ground_energy = Rational(1);
    const Hierarchy h = build_hierarchy(s);
    Grid grid;
    grid.points = points;
    const auto fd = fd_spectrum(h.potentials[0], s, grid, 6);
    double worst = 0.0;
    for (int n = 0; n < 6; ++n) {
        const double exact = energy_level(s, 1, static_cast<unsigned>(n)).to_double();
        worst = std::max(worst, std::abs(fd[static_cast<std::size_t>(n)] - exact) /
                                    std::abs(exact));
    }
    return {worst <= 1e-4, "max relative error = " + brief(worst)};
}

std::pair<bool, std::string> check_nodes() {
    int bad = 0, total = 0;
    for (const auto& a : {Rational(1, 4), Rational(-1, 4)}) {
        const HierarchySpec s = spec_from_alpha(a);
        for (int lam = 1; lam <= 2; ++lam)
            for (unsigned n = 0; n <= 7; ++n) {
                const auto cf = eigenstate_closed_form(s, lam, n);
                const auto nodes = count_nodes(build_eigenstate(s, lam, n), s,
                                               {-12.0, 12.0});
                const int p = static_cast<int>(cf.p);
                bool ok;
                if (cf.parity == Parity::odd) {
                    ok = nodes.zeros == 2 * p + 1 &&
                         nodes.center == CenterBehavior::vanishes_power;
                } else if (cf.sigma.sgn() > 0) {
                    ok = nodes.zeros == 2 * p + 1 &&
                         nodes.center == CenterBehavior::vanishes_power;
                } else if (cf.sigma.sgn() < 0) {
                    ok = nodes.zeros == 2 * p &&
                         nodes.center == CenterBehavior::diverges_power;
                } else {
                    ok = nodes.zeros == 2 * p &&
                         nodes.center == CenterBehavior::finite_nonzero;
                }
                ++total;
                if (!ok) ++bad;
            }
    }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                          " node counts match the parity/center laws"};
}

std::pair<bool, std::string> check_intertwine(double perturbation) {
    HierarchySpec s;
    s.period = 2;
    s.gaps = {Rational(1), Rational(2)};
    Grid grid;
    double worst = 0.0;
    for (int lam = 1; lam <= 2; ++lam) {
        std::vector<QuasiState> probes;
        const int next = lam == 2 ? 1 : 2;
        for (unsigned n = 0; n <= 2; ++n)
            probes.push_back(build_eigenstate(s, next, n));
        worst = std::max(worst,
                         intertwine_residual(s, lam, probes, grid, perturbation));
    }
    return {worst <= 1e-6, "max relative intertwining residual = " + brief(worst)};
}

std::pair<bool, std::string> check_degenerate_limit() {
    HierarchySpec s2;
    s2.period = 2;
    s2.gaps = {Rational(1), Rational(1)};
    HierarchySpec s1;
    s1.period = 1;
    s1.gaps = {Rational(1)};
    double worst = 0.0;
    for (unsigned n = 0; n <= 6; ++n) {
        const QuasiState a = build_eigenstate(s2, 1, n);
        const QuasiState b = build_eigenstate(s1, 1, n);
        for (int k = 0; k < 50; ++k) {
            const double u = -5.0 + 10.0 * k / 49.0;
            worst = std::max(worst, std::abs(wavefunction_eval(a, s2, u) -
                                             wavefunction_eval(b, s1, u)));
        }
    }
    return {worst <= 1e-12, "max pointwise deviation = " + brief(worst)};
}

int verify_impl(const JobConfig& config) {
    std::vector<Check> checks;
    auto run = [&checks](const std::string& name, auto&& fn) {
        Check c;
        c.name = name;
        try {
            auto [ok, detail] = fn();
            c.passed = ok;
            c.detail = std::move(detail);
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = std::string("exception: ") + e.what();
        }
        checks.push_back(std::move(c));
    };

    const std::vector<Rational> alphas = {Rational(0), Rational(1, 4),
                                          Rational(-1, 4), Rational(1, 6),
                                          Rational(-2, 5)};
    const int fd_points = config.grid_points > 0 ? config.grid_points : 2001;

    // exact suite
    run("riccati_symbolic_closure", check_closure_exact);
    run("ladder_round_trip", [&] { return check_round_trip(alphas, 3); });
    run("closed_form_equivalence", [&] { return check_closed_forms(alphas, 10); });
    run("laguerre_recursions", [] { return check_recursions(8); });
    run("rodrigues_equivalence", [] { return check_rodrigues(10); });
    run("hermite_routes", [] { return check_hermite_routes(16); });
    // numeric suite
    run("gram_identity", [&] { return check_gram(alphas, 6, 1e-8); });
    run("fd_spectrum_period2", [&] { return check_fd_period2(fd_points); });
    run("fd_spectrum_harmonic", [&] { return check_fd_harmonic(fd_points); });
    run("node_structure", check_nodes);
    run("intertwine_identity",
        [&] { return check_intertwine(config.perturb_gap); });
    run("degenerate_limit", check_degenerate_limit);

    json matrix = json::array();
    if (config.alpha_sweep > 0) {
        const int k = config.alpha_sweep;
        for (int i = 0; i < k; ++i) {
            const Rational alpha(2 * i + 1 - k, 4 * k);
            json row;
            row["alpha"] = alpha.str();
            auto one = [&](auto&& fn) {
                try {
                    return fn().first;
                } catch (const std::exception&) {
                    return false;
                }
            };
            const std::vector<Rational> single = {alpha};
            row["closed_form"] = one([&] { return check_closed_forms(single, 6); });
            row["round_trip"] = one([&] { return check_round_trip(single, 2); });
            row["gram"] = one([&] { return check_gram(single, 4, 1e-8); });
            matrix.push_back(std::move(row));
        }
    }

    int failed = 0;
    for (const auto& c : checks) {
        if (!c.passed) ++failed;
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << " — " << c.detail
                  << '\n';
    }
    if (config.alpha_sweep > 0) {
        for (const auto& row : matrix) {
            bool all = true;
            for (const auto& [key, val] : row.items())
                if (val.is_boolean() && !val.get<bool>()) all = false;
            std::cout << (all ? "[PASS] " : "[FAIL] ") << "alpha = "
                      << row["alpha"].get<std::string>() << '\n';
            if (!all) ++failed;
        }
    }
    std::cout << checks.size() - static_cast<std::size_t>(failed) << '/'
              << checks.size() << " checks passed\n";

    if (!config.out_path.empty()) {
        json report;
        report["schema"] = 1;
        report["passed"] = failed == 0;
        json items = json::array();
        for (const auto& c : checks)
            items.push_back(
                {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        report["checks"] = items;
        if (config.alpha_sweep > 0) report["alpha_matrix"] = matrix;
        write_json(report, config.out_path);
    }

    return failed == 0 ? exit_ok : exit_verification_failure;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
}

} // namespace

int cmd_engineer(const JobConfig& config) {
    return guarded([&] { return engineer_impl(config); });
}

int cmd_polys(const JobConfig& config) {
    return guarded([&] { return polys_impl(config); });
}

int cmd_verify(const JobConfig& config) {
    return guarded([&] { return verify_impl(config); });
}

int cmd_riccati(const JobConfig& config) {
    return guarded([&] { return riccati_impl(config); });
}

int run_job(const JobConfig& config) {
    if (config.command == "engineer") return cmd_engineer(config);
    if (config.command == "polys") return cmd_polys(config);
    if (config.command == "verify") return cmd_verify(config);
    if (config.command == "riccati") return cmd_riccati(config);
    std::cerr << "config error: unknown command '" << config.command << "'\n";
    return exit_config_error;
}

} // namespace gapforge
