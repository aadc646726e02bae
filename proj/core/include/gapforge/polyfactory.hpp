#pragma once

#include <map>
#include <string>

#include "gapforge/polyq.hpp"
#include "gapforge/rational.hpp"

namespace gapforge {

// --- generalized Laguerre / Hermite polynomial factory -----------------------
//
// Three independent construction routes for the same families:
//   1. classical finite series (the exact oracle),
//   2. a nonlinear second-order "double ladder" operator D2 acting on a
//      quasi-polynomial seed (generalized Rodrigues route),
//   3. ladder / recurrence routes for the Hermite family.
// The equality of the routes is a theorem; the test suite checks it
// coefficient-exactly.

enum class D2Sign { plus, minus };

// The composite operator
//   D2 = (v^{1/2}/2 - (1/2 ± γ)/2 v^{-1/2} - v^{1/2} d_v)
//        (v^{1/2}/2 + (1/2 ± γ)/2 v^{-1/2} - v^{1/2} d_v),
// with the sign variant selecting which of the two middle-term signs is used.
// Both variants generate the same polynomials from the canonical seed; that
// equivalence is part of the verified contract.
struct D2Operator {
    Rational gamma;
    D2Sign sign = D2Sign::plus;

    // (1/2 ± gamma)/2, the magnitude of the v^{-1/2} coefficient.
    Rational pole_coeff() const;
};

// A quasi-polynomial v^sigma e^{-v/2} P(v).  The exponential weight is fixed
// and implicit; only sigma and P are stored.  Canonical form keeps P(0) != 0
// (common powers of v are absorbed into sigma).
struct QuasiOperand {
    Rational sigma;
    PolyQ poly;
};

// Canonical seed v^{1/4+γ/2} e^{-v/2} that the Rodrigues route starts from.
QuasiOperand rodrigues_seed(const Rational& gamma);

// One application of the first-order factor
//   v^{1/2}/2 + c v^{-1/2} - v^{1/2} d_v   (raising = true), or
//   v^{1/2}/2 + c v^{-1/2} + v^{1/2} d_v   (raising = false)
// to a quasi-polynomial.  Result is NOT canonicalized (sigma drops by 1/2).
QuasiOperand ladder_factor_apply(const QuasiOperand& x, const Rational& c, bool raising);

// One full application of D2 (two factors), canonicalized.  When x is the
// canonical seed family (x.sigma == 1/4 + γ/2) the cancellation theorem
// guarantees sigma is restored and the degree grows by exactly one; both are
// asserted as hard failures since a violation falsifies the theorem.
QuasiOperand d2_apply(const D2Operator& op, const QuasiOperand& x);

// Classical finite series: sum_k (-1)^k binom(p+γ, p-k) v^k / k!.
// Polynomial in γ, so any rational γ is accepted; degree p, leading
// coefficient (-1)^p/p!.
PolyQ laguerre_series(const Rational& gamma, unsigned p);

// Generalized Rodrigues route: ((-1)^p/p!) * [p-fold D2 applied to the seed].
// Equal to laguerre_series(gamma, p) for either sign variant.
PolyQ laguerre_generalized_rodrigues(const Rational& gamma, unsigned p, D2Sign sign);

enum class HermiteRoute { ladder, three_term };

// Hermite polynomial H_n by the requested route:
//   ladder:     H_{n+1} = 2v H_n - H_n'   (repeated (v - d_v) conjugated by the
//                                          Gaussian weight)
//   three_term: H_{n+1} = 2v H_n - 2n H_{n-1}
PolyQ hermite(unsigned n, HermiteRoute route);

// Hermite from half-integer Laguerre:
//   H_{2p}(x)   = (-1)^p 2^{2p}   p! L_p^{(-1/2)}(x^2)
//   H_{2p+1}(x) = (-1)^p 2^{2p+1} p! x L_p^{(1/2)}(x^2)
PolyQ hermite_from_laguerre(unsigned n);

// ODE residuals; the zero polynomial certifies that `poly` solves the
// equation with the given parameters.
struct LaguerreOde { Rational gamma; unsigned p = 0; };
struct HermiteOde { unsigned n = 0; };

// v P'' + (γ+1-v) P' + p P
PolyQ ode_residual(const LaguerreOde& kind, const PolyQ& poly);
// P'' - 2v P' + 2n P
PolyQ ode_residual(const HermiteOde& kind, const PolyQ& poly);

// Residuals (LHS - RHS) of the six Laguerre recursion relations, keyed by
// name; every residual is the zero polynomial.
//   lower_gamma         : L^(γ-1)_p     = (γ + v d_v) L^(γ)_p / (p+γ)
//   raise_gamma_deriv   : L^(γ+1)_p     = -d_v L^(γ)_{p+1}
//   raise_gamma         : L^(γ+1)_p     = (1 - d_v) L^(γ)_p
//   lower_gamma_raise_p : L^(γ-1)_{p+1} = -(v - γ - v d_v) L^(γ)_p / (p+1)
//   raise_p             : L^(γ)_{p+1}   = ((p+1+γ-v) L^(γ)_p + v d_v L^(γ)_p) / (p+1)
//   three_term_mixed    : L^(γ)_{p+1}   = ((p+1+γ-v) L^(γ)_p - v L^(γ+1)_{p-1}) / (p+1)
// three_term_mixed references p-1 and is only emitted for p >= 1.
// Throws PoleError when p + γ == 0 (lower_gamma divides by p+γ).
std::map<std::string, PolyQ> recursion_residuals(const Rational& gamma, unsigned p);

} // namespace gapforge
