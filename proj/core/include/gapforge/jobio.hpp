#pragma once

#include <string>
#include <vector>

namespace gapforge {

// --- command layer -----------------------------------------------------------
//
// The CLI front-end parses argv into a JobConfig and dispatches here; tests
// drive the same entry points directly.  All file formats are deterministic:
// CSV carries a "#schema=1" header line and 17-significant-digit floats,
// JSON encodes exact rationals as "p/q" strings.

struct JobConfig {
    std::string command;               // engineer | polys | verify | riccati
    std::vector<std::string> gaps;     // exact rationals, "p/q" text
    std::string ground_energy = "0";   // E_0, exact rational text
    std::string center = "0";          // u_0, exact rational text
    int levels = 8;                    // engineer: states/energies per Hamiltonian
    std::string gamma = "1/2";         // polys: Laguerre parameter, rational text
    int pmax = 12;                     // polys: highest degree (<= 64)
    std::string out_path;              // engineer: directory; polys/riccati/verify: file
    int alpha_sweep = 0;               // verify: per-alpha pass matrix size
    double perturb_gap = 0.0;          // verify: fault injection for the intertwining check
    std::string ansatz = "pole_poly";  // riccati: pole_poly | grid
    int order = 5;                     // riccati: highest odd ansatz power
    double tol = 1e-10;                // riccati: certification tolerance
    int grid_points = 0;               // riccati/verify override; 0 = default
};

// exit codes shared by all commands
inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failure = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_no_convergence = 3;

// %.17g rendering used by every CSV/JSON float field
std::string format_double(double x);

int cmd_engineer(const JobConfig& config);
int cmd_polys(const JobConfig& config);
int cmd_verify(const JobConfig& config);
int cmd_riccati(const JobConfig& config);

// dispatch on config.command; unknown commands are config errors
int run_job(const JobConfig& config);

} // namespace gapforge
