#pragma once

#include <utility>
#include <vector>

#include "gapforge/hierarchy.hpp"

namespace gapforge {

// --- floating-point verification layer --------------------------------------
//
// Everything here converts the exact layer to doubles and checks it against
// independent numerics: Gaussian quadrature for inner products, a
// finite-difference eigensolver for spectra, high-order finite differences
// for the intertwining identity, and exact Sturm sequences for node counts.

// Uniform sampling window around the potential center.
struct Grid {
    double u_min = -8.0;
    double u_max = 8.0;
    int points = 2001;
    // Half-width of the band around u0 excluded from finite differencing when
    // the potential is singular there.  0 selects an automatic choice.
    double excluded_center_halfwidth = 0.0;

    double spacing() const { return (u_max - u_min) / (points - 1); }
    void validate(const HierarchySpec& spec) const;   // ConfigError on misuse
};

enum class QuadratureKind { gauss_laguerre, gauss_hermite, trapezoid_u };

struct QuadratureScheme {
    QuadratureKind kind = QuadratureKind::gauss_laguerre;
    Rational weight_exponent;   // γ of the v^γ e^{-v} weight (gauss_laguerre)
    int nodes = 64;
};

// Scheme that integrates the product of two states exactly (up to rounding):
// Laguerre with the combined weight exponent for laguerre_v states, Hermite
// for gaussian_u states.
QuadratureScheme overlap_scheme(const QuasiState& a, const QuasiState& b);

// One-dimensional Gaussian rules (Golub-Welsch).
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights for weight v^gamma e^{-v} on (0, inf); gamma > -1.
QuadRule gauss_laguerre_rule(double gamma, int n);
// Nodes/weights for weight e^{-v^2} on (-inf, inf).
QuadRule gauss_hermite_rule(int n);

// Full-line inner product <a|b> assembled from the two half-lines with
// parity signs; opposite parities short-circuit to exact 0.  Throws
// SchemeMismatch when the scheme cannot integrate the pair exactly.
double overlap(const QuasiState& a, const QuasiState& b, const HierarchySpec& spec,
               const QuadratureScheme& scheme);

// Lowest `count` eigenvalues of -d^2/du^2 + V on the grid (Dirichlet ends).
// Singular potentials (invsq_coeff != 0) are handled per parity class on the
// half-line with the known |u-u0|^m edge behavior folded into the operator.
// Throws ConvergenceError if the eigenvalue iteration fails.
std::vector<double> fd_spectrum(const PotentialForm& potential, const HierarchySpec& spec,
                                const Grid& grid, int count);

// Max relative residual of (H_{λ+1} - E_{λ,0} - A_λ A†_λ) over the probes
// and grid points away from the excluded band, with derivatives taken by
// 4th-order finite differences of exact state evaluations.
// `gap_perturbation` shifts Δ_1 inside the A_λ A†_λ factors only (fault
// injection for the linear-growth oracle); 0 checks the true identity.
double intertwine_residual(const HierarchySpec& spec, int level,
                           const std::vector<QuasiState>& probes, const Grid& grid,
                           double gap_perturbation = 0.0);

enum class CenterBehavior { vanishes_power, finite_nonzero, diverges_power };

struct NodeCount {
    int zeros = 0;                      // total zero count on the open domain
    CenterBehavior center = CenterBehavior::finite_nonzero;
    Rational exponent;                  // |u-u0| power at the center (2*sigma)
};

// Exact node count: Sturm-chain root counting of the polynomial factor
// (mapped to the v variable) plus the center classification from sigma.
NodeCount count_nodes(const QuasiState& state, const HierarchySpec& spec,
                      std::pair<double, double> domain);

// Exact count of distinct real roots of p in the half-open interval (lo, hi].
int sturm_root_count(const PolyQ& p, const Rational& lo, const Rational& hi);

} // namespace gapforge
