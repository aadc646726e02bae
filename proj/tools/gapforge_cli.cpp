#include <CLI11.hpp>

#include "gapforge/jobio.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gapforge: engineer 1-D quantum potentials with prescribed "
                 "periodic gap spectra, build their eigenstates exactly, and "
                 "verify the construction"};
    app.require_subcommand(1);

    gapforge::JobConfig cfg;

    auto* engineer = app.add_subcommand(
        "engineer", "build potentials, spectra and eigenstates from gaps");
    engineer->add_option("--gaps", cfg.gaps, "energy gaps, exact rationals p/q")
        ->required()
        ->delimiter(',');
    engineer->add_option("--levels", cfg.levels, "levels per Hamiltonian (default 8)");
    engineer->add_option("--e0", cfg.ground_energy, "ground energy, rational");
    engineer->add_option("--u0", cfg.center, "potential center, rational");
    engineer->add_option("--out", cfg.out_path, "output directory")->required();

    auto* polys = app.add_subcommand(
        "polys", "emit Laguerre/Hermite coefficient tables from all routes");
    polys->add_option("--gamma", cfg.gamma, "Laguerre parameter, rational (default 1/2)");
    polys->add_option("--pmax", cfg.pmax, "highest degree, <= 64 (default 12)");
    polys->add_option("--out", cfg.out_path, "output file (default stdout)");

    auto* verify = app.add_subcommand(
        "verify", "run the exact and numeric verification suites");
    verify->add_option("--alpha-sweep", cfg.alpha_sweep,
                       "emit a per-alpha pass matrix of this size");
    verify->add_option("--perturb-gap", cfg.perturb_gap,
                       "fault injection: perturb a gap inside the intertwining check");
    verify->add_option("--grid-points", cfg.grid_points,
                       "finite-difference grid size override");
    verify->add_option("--out", cfg.out_path, "write the JSON report here");

    auto* riccati = app.add_subcommand(
        "riccati", "solve the periodic superpotential chain numerically");
    riccati->add_option("--gaps", cfg.gaps, "energy gaps, exact rationals p/q")
        ->required()
        ->delimiter(',');
    riccati->add_option("--u0", cfg.center, "potential center, rational");
    riccati->add_option("--ansatz", cfg.ansatz, "pole_poly | grid (default pole_poly)");
    riccati->add_option("--order", cfg.order, "highest odd ansatz power (default 5)");
    riccati->add_option("--tol", cfg.tol, "certification tolerance (default 1e-10)");
    riccati->add_option("--grid-points", cfg.grid_points,
                        "collocation/certification grid size override");
    riccati->add_option("--out", cfg.out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? gapforge::exit_ok : gapforge::exit_config_error;
    }

    for (const auto* sub : {engineer, polys, verify, riccati})
        if (sub->parsed()) cfg.command = sub->get_name();

    return gapforge::run_job(cfg);
}
