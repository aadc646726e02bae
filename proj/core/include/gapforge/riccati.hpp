#pragma once

#include <variant>
#include <vector>

#include "gapforge/hierarchy.hpp"
#include "gapforge/numverify.hpp"

namespace gapforge {

// --- numerical solver for the periodic superpotential chain ------------------
//
// Solves the cyclic system  W_{λ+1}^2 - W_{λ+1}' + Δ_λ = W_λ^2 + W_λ'
// (λ = 1..N, W_{N+1} = W_1) for arbitrary period, in floating point.
// Periods 1 and 2 have closed forms (hierarchy module) and serve as ground
// truth; larger periods are exploratory and every solution is certified by
// re-evaluating the residual, never by trusting iteration flags.

// W(u) = linear (u-u0) + pole/(u-u0) + sum_k odd_coeffs[k] (u-u0)^{2k+3}
struct PolePolyW {
    double center = 0.0;
    double linear = 0.0;
    double pole = 0.0;
    std::vector<double> odd_coeffs;   // coefficients of (u-u0)^3, ^5, ...

    double eval(double u) const;
    double deriv(double u) const;
};

// W sampled on the right half-line; extended to the left as an odd function.
// Evaluation/derivative by local cubic (4-point) Lagrange interpolation.
struct GridW {
    double center = 0.0;
    std::vector<double> offsets;   // ascending distances from the center (> 0)
    std::vector<double> values;    // W(center + offset)

    double eval(double u) const;
    double deriv(double u) const;
};

using WRep = std::variant<PolePolyW, GridW>;

double w_eval(const WRep& w, double u);
double w_deriv(const WRep& w, double u);

// Closed-form superpotential as a solver-compatible representation.
WRep to_rep(const Superpotential& w);

enum class RiccatiAnsatz { pole_plus_polynomial, grid_collocation };
enum class RiccatiSolver { newton, least_squares };
enum class RiccatiStatus { converged, no_convergence, ansatz_insufficient };

struct RiccatiProblem {
    int period = 1;
    std::vector<double> gaps;
    double center = 0.0;
    RiccatiAnsatz ansatz = RiccatiAnsatz::pole_plus_polynomial;
    // Highest odd power admitted in the polynomial tail (1 = pole+linear only).
    int max_order = 5;
    Grid grid;                      // collocation window
    RiccatiSolver solver = RiccatiSolver::newton;
    int max_iter = 80;
    double tol = 1e-10;

    void validate() const;          // ConfigError on inconsistent input
};

struct RiccatiSolution {
    std::vector<WRep> w;            // W_1..W_N, best iterate found
    double residual_norm = 0.0;     // certified on a finer grid than solving
    bool converged = false;
    RiccatiStatus status = RiccatiStatus::no_convergence;
    bool exploratory = false;       // period >= 3: no ground truth exists
    int ansatz_order = 1;           // highest odd power actually used
    int iterations = 0;
};

// Max over λ and over grid points (outside the center band) of
// |W_{λ+1}^2 - W_{λ+1}' + Δ_λ - W_λ^2 - W_λ'|, cyclically closed.
double riccati_residual(const std::vector<WRep>& w, const std::vector<double>& gaps,
                        const Grid& grid);

// Damped Gauss-Newton (newton) or Levenberg-Marquardt (least_squares) on
// collocation residuals, with automatic escalation of the polynomial ansatz
// order; non-convergence and ansatz insufficiency are reported in-band.
RiccatiSolution solve_periodic(const RiccatiProblem& problem);

} // namespace gapforge
