#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gapforge/polyq.hpp"
#include "gapforge/rational.hpp"

namespace gapforge {

// --- periodic SUSY hierarchy: closed forms for periods 1 and 2 ---------------
//
// A hierarchy is specified by its period N, the N successive energy gaps, the
// ground energy and the center of the potential.  Units are chosen so that
// the Schrödinger operator is -d²/du² + V(u).
//
// Closed-form construction (superpotentials, potentials, eigenstates) is
// implemented for N ∈ {1,2}; larger periods are handled numerically by the
// riccati module.  Spectra are well defined for any period and are provided
// for all N ≥ 1.

struct HierarchySpec {
    int period = 1;
    std::vector<Rational> gaps;     // Δ_1..Δ_N, all positive
    Rational ground_energy;         // E_{1,0}
    Rational center;                // u0

    // Throws ConfigError when period/gaps are inconsistent or gaps are not
    // strictly positive.
    void validate() const;

    Rational gap_sum() const;
    // Period-2 asymmetry (Δ2-Δ1)/(2(Δ2+Δ1)); identically 0 for period 1.
    // Always in (-1/2, 1/2) for positive gaps.
    Rational alpha() const;
};

// W(u) = linear_coeff * (u-u0) + pole_coeff / (u-u0)
struct Superpotential {
    Rational linear_coeff;
    Rational pole_coeff;
    Rational center;

    double eval(double u) const;
    double derivative(double u) const;
};

// V(u) = quad_coeff * (u-u0)^2 + invsq_coeff / (u-u0)^2 + const_term
struct PotentialForm {
    Rational quad_coeff;
    Rational invsq_coeff;
    Rational const_term;
    Rational center;

    // Throws SingularPoint at u = u0 when invsq_coeff != 0.
    double eval(double u) const;
};

enum class Parity { even, odd };
enum class StateForm { gaussian_u, laguerre_v };

// Exact quasi-polynomial eigenstate.
//
//   laguerre_v:  psi(u) = s * N0 * sqrt(amp2/Γ(gamma_base)) * v^sigma e^{-v/2} poly(v),
//                v = (S/4)(u-u0)^2,  S = sum of gaps,  N0 = (S/4)^{1/4},
//                s = -1 on u < u0 iff parity == odd, else +1.
//   gaussian_u:  psi(u) =     N0 * sqrt(amp2/Γ(gamma_base)) * e^{-v^2/2} poly(v),
//                v = sqrt(Δ/2)(u-u0) (signed), N0 = (Δ/2)^{1/4}.
//
// amp2 and the Γ tag carry the exact squared normalization; floats appear
// only in wavefunction_eval.  A zero poly is the zero state.
struct QuasiState {
    StateForm form = StateForm::laguerre_v;
    Rational sigma;                 // exponent of v (laguerre_v only)
    PolyQ poly;
    Parity parity = Parity::even;
    Rational amp2 = Rational(1);    // rational factor of the squared norm
    Rational gamma_base;            // norm^2 = amp2 / Γ(gamma_base), up to N0^2

    bool is_zero() const { return poly.is_zero(); }
};

enum class LadderDirection { raise, lower };

// First-order intertwining operator A†_λ (raise) or A_λ (lower), expressed in
// the v variable.  For period 2:
//   A†_λ = sqrt(S) (v^{1/2}/2 + pole v^{-1/2} - v^{1/2} d_v),   pole = (-1)^λ α/2,
//   A_λ  = same with +v^{1/2} d_v.
// For period 1 (Gaussian form): A†= sqrt(Δ/2)(v - d_v), A = sqrt(Δ/2)(v + d_v).
// `scale` stores the squared prefactor (S, resp. Δ/2) applied to amp2 per use.
struct LadderOp {
    LadderDirection direction = LadderDirection::raise;
    int level = 1;                  // λ, reduced into 1..N
    StateForm form = StateForm::laguerre_v;
    Rational half_v;                // coefficient of v^{1/2}
    Rational pole;                  // coefficient of v^{-1/2}
    Rational scale;                 // squared amplitude factor per application
};

LadderOp make_ladder(const HierarchySpec& spec, LadderDirection direction, int level);

struct SpectrumTable {
    int level = 1;
    std::vector<std::pair<unsigned, Rational>> entries;   // (n, E_{level,n})
};

struct Hierarchy {
    std::vector<Superpotential> superpotentials;   // W_1..W_N
    std::vector<PotentialForm> potentials;         // V_1..V_N
};

// Superpotentials and potentials of the whole hierarchy; the W_λ satisfy the
// periodic Riccati chain exactly (see closure_residual).  Throws
// UnsupportedPeriod for period >= 3.
Hierarchy build_hierarchy(const HierarchySpec& spec);

// E_{λ,n}: ground energy plus the cyclic partial gap sums.  Valid for any
// period; λ in 1..N.
Rational energy_level(const HierarchySpec& spec, int level, unsigned n);

SpectrumTable make_spectrum_table(const HierarchySpec& spec, int level, unsigned max_n);

// psi_{λ,0}; poly = 1, even parity.
QuasiState ground_state(const HierarchySpec& spec, int level);

// Exact application; throws FormMismatch when the operator and state forms
// disagree.  Lowering a ground state yields the zero state.
QuasiState apply_ladder(const LadderOp& op, const QuasiState& state);

// psi_{λ,n} via repeated raising from the appropriate ground state, divided
// by the product of energy-difference factors; exactly normalized.
QuasiState build_eigenstate(const HierarchySpec& spec, int level, unsigned n);

// The closed-form decomposition
//   psi_{λ,n} = sign * N0 * sqrt(amp2/Γ(gamma_base)) * v^sigma e^{-v/2} L^(gamma)_p(v)
// with sign = (-1)^p, p = floor(n/2), amp2 = p!/ (gamma_base)_shift.
// Period 2 only: throws UnsupportedPeriod otherwise.
struct ClosedForm {
    int sign = 1;
    unsigned p = 0;
    Rational gamma;
    Rational sigma;
    Rational amp2;
    Rational gamma_base;
    Parity parity = Parity::even;
};

ClosedForm eigenstate_closed_form(const HierarchySpec& spec, int level, unsigned n);

// Expand a closed form into a QuasiState (poly = sign * L^(gamma)_p).
QuasiState closed_form_state(const HierarchySpec& spec, const ClosedForm& cf);

// Pointwise evaluation in double precision.  Throws SingularPoint at u = u0
// when sigma < 0; returns exact 0 there when sigma > 0.
double wavefunction_eval(const QuasiState& state, const HierarchySpec& spec, double u);

// Multiply the state's value by an exact scalar (sign goes into poly).
QuasiState scale_state(QuasiState state, const Rational& factor);

// Exact value equality of two states (handles the amp2/poly split: a and b
// are equal iff poly_a sqrt(amp2_a) == poly_b sqrt(amp2_b) with matching
// form/sigma/parity/Γ tag).
bool states_equal(const QuasiState& a, const QuasiState& b);

// sqrt of an exact rational if it is a perfect square, else nullopt.
std::optional<Rational> exact_sqrt(const Rational& r);

// Exact Laurent-coefficient residual of the periodic Riccati chain
//   W_{λ+1}^2 - W_{λ+1}' + Δ_λ - (W_λ^2 + W_λ')      (W_{N+1} = W_1)
// one triple (coefficients of (u-u0)^2, 1, (u-u0)^{-2}) per λ.  All-zero
// certifies the closure.
struct LaurentTriple {
    Rational quad;
    Rational constant;
    Rational invsq;
    bool is_zero() const {
        return quad == Rational(0) && constant == Rational(0) && invsq == Rational(0);
    }
};

std::vector<LaurentTriple> closure_residual(const HierarchySpec& spec);

} // namespace gapforge
