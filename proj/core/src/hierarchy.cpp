#include "gapforge/hierarchy.hpp"

#include <cmath>
#include <string>

#include "gapforge/errors.hpp"
#include "gapforge/polyfactory.hpp"

namespace gapforge {

namespace {

const Rational kHalf(1, 2);

int reduce_level(int level, int period) {
    int r = (level - 1) % period;
    if (r < 0) r += period;
    return r + 1;
}

void require_closed_form(const HierarchySpec& spec) {
    if (spec.period > 2)
        throw UnsupportedPeriod("closed forms cover periods 1 and 2; period " +
                                std::to_string(spec.period) +
                                " requires the numerical Riccati solver");
}

// Strip common powers of v from the polynomial part into sigma.
QuasiState canonicalize(QuasiState s) {
    if (s.poly.is_zero()) return s;
    const unsigned m = s.poly.low_zero_count();
    if (m > 0) {
        s.poly = s.poly.shift_down(m);
        s.sigma += Rational(static_cast<long>(m));
    }
    return s;
}

} // namespace

void HierarchySpec::validate() const {
    if (period < 1) throw ConfigError("period must be a positive integer");
    if (gaps.size() != static_cast<std::size_t>(period))
        throw ConfigError("expected " + std::to_string(period) + " gaps, got " +
                          std::to_string(gaps.size()));
    for (const auto& g : gaps)
        if (g <= Rational(0)) throw ConfigError("all gaps must be strictly positive");
}

Rational HierarchySpec::gap_sum() const {
    Rational s(0);
    for (const auto& g : gaps) s += g;
    return s;
}

Rational HierarchySpec::alpha() const {
    if (period == 1) return Rational(0);
    if (period != 2)
        throw UnsupportedPeriod("asymmetry parameter is defined for period 2");
    return (gaps[1] - gaps[0]) / (Rational(2) * gap_sum());
}

double Superpotential::eval(double u) const {
    const double d = u - center.to_double();
    double w = linear_coeff.to_double() * d;
    if (pole_coeff != Rational(0)) w += pole_coeff.to_double() / d;
    return w;
}

double Superpotential::derivative(double u) const {
    const double d = u - center.to_double();
    double w = linear_coeff.to_double();
    if (pole_coeff != Rational(0)) w -= pole_coeff.to_double() / (d * d);
    return w;
}

double PotentialForm::eval(double u) const {
    const double d = u - center.to_double();
    double v = quad_coeff.to_double() * d * d + const_term.to_double();
    if (invsq_coeff != Rational(0)) {
        if (d == 0.0) throw SingularPoint("potential evaluated at its center");
        v += invsq_coeff.to_double() / (d * d);
    }
    return v;
}

Hierarchy build_hierarchy(const HierarchySpec& spec) {
    spec.validate();
    require_closed_form(spec);
    Hierarchy h;
    if (spec.period == 1) {
        const Rational d = spec.gaps[0];
        h.superpotentials.push_back({d * kHalf, Rational(0), spec.center});
        // V_1 = (Δ/2)^2 (u-u0)^2 - Δ/2 + E0
        h.potentials.push_back(
            {d * d / Rational(4), Rational(0), spec.ground_energy - d * kHalf, spec.center});
        return h;
    }
    const Rational a = spec.alpha();
    const Rational c = spec.gap_sum() / Rational(4);
    for (int level = 1; level <= 2; ++level) {
        const Rational pole = level == 1 ? -a : a;
        h.superpotentials.push_back({c, pole, spec.center});
        // V_λ = W_λ^2 - W_λ' + E_{λ,0}
        const Rational e0 = energy_level(spec, level, 0);
        h.potentials.push_back({c * c, pole * pole + pole,
                                Rational(2) * c * pole - c + e0, spec.center});
    }
    return h;
}

Rational energy_level(const HierarchySpec& spec, int level, unsigned n) {
    spec.validate();
    if (level < 1 || level > spec.period)
        throw ConfigError("level " + std::to_string(level) + " outside 1.." +
                          std::to_string(spec.period));
    Rational e = spec.ground_energy;
    for (int j = 1; j < level; ++j) e += spec.gaps[static_cast<std::size_t>(j - 1)];
    for (unsigned k = 0; k < n; ++k)
        e += spec.gaps[static_cast<std::size_t>(reduce_level(level + static_cast<int>(k),
                                                             spec.period) - 1)];
    return e;
}

SpectrumTable make_spectrum_table(const HierarchySpec& spec, int level, unsigned max_n) {
    SpectrumTable t;
    t.level = level;
    t.entries.reserve(max_n + 1);
    for (unsigned n = 0; n <= max_n; ++n) t.entries.emplace_back(n, energy_level(spec, level, n));
    return t;
}

LadderOp make_ladder(const HierarchySpec& spec, LadderDirection direction, int level) {
    spec.validate();
    require_closed_form(spec);
    LadderOp op;
    op.direction = direction;
    op.level = reduce_level(level, spec.period);
    if (spec.period == 1) {
        op.form = StateForm::gaussian_u;
        op.scale = spec.gaps[0] * kHalf;
        return op;
    }
    op.form = StateForm::laguerre_v;
    op.half_v = kHalf;
    op.pole = (op.level % 2 == 0 ? spec.alpha() : -spec.alpha()) * kHalf;
    op.scale = spec.gap_sum();
    return op;
}

QuasiState ground_state(const HierarchySpec& spec, int level) {
    spec.validate();
    require_closed_form(spec);
    if (level < 1 || level > spec.period)
        throw ConfigError("level outside 1..N");
    QuasiState s;
    s.poly = PolyQ::one();
    s.parity = Parity::even;
    s.amp2 = Rational(1);
    if (spec.period == 1) {
        s.form = StateForm::gaussian_u;
        s.sigma = Rational(0);
        s.gamma_base = kHalf;
        return s;
    }
    const Rational a = spec.alpha();
    s.form = StateForm::laguerre_v;
    s.sigma = (level == 1 ? a : -a) * kHalf;
    s.gamma_base = level == 1 ? kHalf + a : kHalf - a;
    return s;
}

QuasiState apply_ladder(const LadderOp& op, const QuasiState& state) {
    if (op.form != state.form)
        throw FormMismatch("ladder operator and state use different analytic forms");
    if (state.is_zero()) return state;

    QuasiState out = state;
    out.parity = state.parity == Parity::even ? Parity::odd : Parity::even;
    out.amp2 = state.amp2 * op.scale;

    if (state.form == StateForm::gaussian_u) {
        // (v - d_v): P -> 2vP - P';   (v + d_v): P -> P'
        if (op.direction == LadderDirection::raise)
            out.poly = PolyQ::monomial(1, Rational(2)) * state.poly - diff(state.poly);
        else
            out.poly = diff(state.poly);
        return out;
    }

    // v^{1/2}/2 + c v^{-1/2} ∓ v^{1/2} d_v on v^sigma e^{-v/2} P:
    //   raise: Q = vP + (c - sigma)P - vP',   lower: Q = (c + sigma)P + vP',
    // with sigma -> sigma - 1/2, then common powers of v restored to sigma.
    const PolyQ v = PolyQ::monomial(1);
    if (op.direction == LadderDirection::raise)
        out.poly = v * state.poly + (op.pole - state.sigma) * state.poly - v * diff(state.poly);
    else
        out.poly = (op.pole + state.sigma) * state.poly + v * diff(state.poly);
    out.sigma = state.sigma - kHalf;
    return canonicalize(std::move(out));
}

QuasiState build_eigenstate(const HierarchySpec& spec, int level, unsigned n) {
    spec.validate();
    require_closed_form(spec);
    QuasiState s = ground_state(spec, reduce_level(level + static_cast<int>(n), spec.period));
    for (unsigned k = n; k >= 1; --k) {
        const LadderOp up =
            make_ladder(spec, LadderDirection::raise,
                        reduce_level(level + static_cast<int>(k) - 1, spec.period));
        s = apply_ladder(up, s);
    }
    const Rational e_top = energy_level(spec, level, n);
    for (unsigned k = 1; k <= n; ++k)
        s.amp2 /= e_top - energy_level(spec, level, k - 1);
    return s;
}

ClosedForm eigenstate_closed_form(const HierarchySpec& spec, int level, unsigned n) {
    spec.validate();
    if (spec.period != 2)
        throw UnsupportedPeriod("closed-form Laguerre decomposition requires period 2");
    if (level < 1 || level > 2) throw ConfigError("level outside 1..2");

    const Rational a = level == 1 ? spec.alpha() : -spec.alpha();
    ClosedForm cf;
    cf.p = n / 2;
    cf.sign = cf.p % 2 == 0 ? 1 : -1;
    cf.parity = n % 2 == 0 ? Parity::even : Parity::odd;
    unsigned shift = cf.p;
    if (n % 2 == 0) {
        cf.gamma = a - kHalf;
        cf.sigma = a * kHalf;
        cf.gamma_base = kHalf + a;
    } else {
        cf.gamma = kHalf - a;
        cf.sigma = (Rational(1) - a) * kHalf;
        cf.gamma_base = kHalf - a;
        shift += 1;
    }
    cf.amp2 = factorial(cf.p) / gamma_shift_ratio(cf.gamma_base, shift);
    return cf;
}

double wavefunction_eval(const QuasiState& state, const HierarchySpec& spec, double u) {
    if (state.is_zero()) return 0.0;
    const double u0 = spec.center.to_double();
    const double d = u - u0;
    const double norm =
        std::sqrt(state.amp2.to_double() / gamma_to_double(state.gamma_base));

    if (state.form == StateForm::gaussian_u) {
        const double omega = spec.gaps[0].to_double() / 2.0;   // v = sqrt(Δ/2)(u-u0)
        const double v = std::sqrt(omega) * d;
        return std::pow(omega, 0.25) * norm * std::exp(-0.5 * v * v) * eval(state.poly, v);
    }

    const double q = spec.gap_sum().to_double() / 4.0;         // v = (S/4)(u-u0)^2
    if (d == 0.0) {
        if (state.sigma.sgn() < 0)
            throw SingularPoint("state diverges at the potential center");
        if (state.sigma.sgn() > 0) return 0.0;
        return std::pow(q, 0.25) * norm * eval(state.poly, 0.0);
    }
    const double v = q * d * d;
    double value = std::pow(q, 0.25) * norm * std::pow(v, state.sigma.to_double()) *
                   std::exp(-0.5 * v) * eval(state.poly, v);
    if (state.parity == Parity::odd && d < 0.0) value = -value;
    return value;
}

QuasiState scale_state(QuasiState state, const Rational& factor) {
    state.poly *= factor;
    return state;
}

std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r.sgn() < 0) return std::nullopt;
    if (r.sgn() == 0) return Rational(0);
    if (!mpz_perfect_square_p(r.num().get_mpz_t()) ||
        !mpz_perfect_square_p(r.den().get_mpz_t()))
        return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), r.num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.den().get_mpz_t());
    return Rational(mpq_class(n) / mpq_class(d));
}

bool states_equal(const QuasiState& a, const QuasiState& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.form != b.form || a.parity != b.parity) return false;
    if (a.form == StateForm::laguerre_v && a.sigma != b.sigma) return false;
    if (a.gamma_base != b.gamma_base) return false;
    // value equality: poly_a sqrt(amp2_a) == poly_b sqrt(amp2_b)
    const auto root = exact_sqrt(a.amp2 / b.amp2);
    if (!root) return false;
    return a.poly * *root == b.poly;
}

QuasiState closed_form_state(const HierarchySpec& spec, const ClosedForm& cf) {
    (void)spec;
    QuasiState s;
    s.form = StateForm::laguerre_v;
    s.sigma = cf.sigma;
    s.poly = laguerre_series(cf.gamma, cf.p) * Rational(cf.sign);
    s.parity = cf.parity;
    s.amp2 = cf.amp2;
    s.gamma_base = cf.gamma_base;
    return s;
}

std::vector<LaurentTriple> closure_residual(const HierarchySpec& spec) {
    const Hierarchy h = build_hierarchy(spec);
    const int n = spec.period;
    std::vector<LaurentTriple> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int lam = 1; lam <= n; ++lam) {
        const Superpotential& w = h.superpotentials[static_cast<std::size_t>(lam - 1)];
        const Superpotential& wn = h.superpotentials[static_cast<std::size_t>(lam % n)];
        // W^2 ∓ W' for W = c δ + a/δ:
        //   quad c^2, const 2ca ∓ c, invsq a^2 ± a
        LaurentTriple r;
        r.quad = wn.linear_coeff * wn.linear_coeff - w.linear_coeff * w.linear_coeff;
        r.constant = (Rational(2) * wn.linear_coeff * wn.pole_coeff - wn.linear_coeff) +
                     spec.gaps[static_cast<std::size_t>(lam - 1)] -
                     (Rational(2) * w.linear_coeff * w.pole_coeff + w.linear_coeff);
        r.invsq = (wn.pole_coeff * wn.pole_coeff + wn.pole_coeff) -
                  (w.pole_coeff * w.pole_coeff - w.pole_coeff);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace gapforge
