#include "gapforge/polyfactory.hpp"

#include "gapforge/errors.hpp"

namespace gapforge {

namespace {

const Rational kHalf(1, 2);
const Rational kQuarter(1, 4);

// Strip the common power of v out of the polynomial part into the exponent.
QuasiOperand canonicalize(QuasiOperand x) {
    if (x.poly.is_zero()) return x;
    const unsigned m = x.poly.low_zero_count();
    if (m > 0) {
        x.poly = x.poly.shift_down(m);
        x.sigma += Rational(static_cast<long>(m));
    }
    return x;
}

} // namespace

Rational D2Operator::pole_coeff() const {
    return sign == D2Sign::plus ? kHalf * (kHalf + gamma) : kHalf * (kHalf - gamma);
}

QuasiOperand rodrigues_seed(const Rational& gamma) {
    return QuasiOperand{kQuarter + kHalf * gamma, PolyQ::one()};
}

QuasiOperand ladder_factor_apply(const QuasiOperand& x, const Rational& c, bool raising) {
    //   (v^{1/2}/2 + c v^{-1/2} ∓ v^{1/2} d_v) v^σ e^{-v/2} P
    //     = v^{σ-1/2} e^{-v/2} (vP + (c−σ)P − vP')          raising
    //     = v^{σ-1/2} e^{-v/2} ((c+σ)P + vP')               lowering
    // (the vP/2 pieces from the weight derivative cancel or double up).
    const PolyQ v = PolyQ::monomial(1);
    PolyQ q;
    if (raising) {
        q = v * x.poly + (c - x.sigma) * x.poly - v * diff(x.poly);
    } else {
        q = (c + x.sigma) * x.poly + v * diff(x.poly);
    }
    return QuasiOperand{x.sigma - kHalf, std::move(q)};
}

QuasiOperand d2_apply(const D2Operator& op, const QuasiOperand& x) {
    const Rational c = op.pole_coeff();
    // rightmost factor first: +c, then -c; both are raising-type factors.
    QuasiOperand mid = ladder_factor_apply(x, c, true);
    QuasiOperand out = canonicalize(ladder_factor_apply(mid, -c, true));
    if (x.sigma == kQuarter + kHalf * op.gamma && !x.poly.is_zero()) {
        // On the canonical seed family the two half-steps must cancel exactly:
        // sigma restored, degree up by one.  Anything else falsifies the
        // cancellation theorem, so fail hard.
        if (out.sigma != x.sigma || out.poly.degree() != x.poly.degree() + 1)
            throw Error("D2 cancellation violated: sigma " + x.sigma.str() + " -> " +
                        out.sigma.str() + ", degree " + std::to_string(x.poly.degree()) +
                        " -> " + std::to_string(out.poly.degree()));
    }
    return out;
}

PolyQ laguerre_series(const Rational& gamma, unsigned p) {
    // sum_k (-1)^k [prod_{i=k+1}^{p} (γ+i)] / ((p-k)! k!) v^k
    std::vector<Rational> c(p + 1);
    for (unsigned k = 0; k <= p; ++k) {
        Rational term = rising_factorial(gamma + Rational(static_cast<long>(k) + 1), p - k);
        term /= factorial(p - k) * factorial(k);
        if (k % 2 == 1) term = -term;
        c[k] = term;
    }
    return PolyQ(std::move(c));
}

PolyQ laguerre_generalized_rodrigues(const Rational& gamma, unsigned p, D2Sign sign) {
    const D2Operator op{gamma, sign};
    QuasiOperand x = rodrigues_seed(gamma);
    for (unsigned k = 0; k < p; ++k) x = d2_apply(op, x);
    Rational norm = Rational(1) / factorial(p);
    if (p % 2 == 1) norm = -norm;
    return norm * x.poly;
}

PolyQ hermite(unsigned n, HermiteRoute route) {
    const PolyQ two_v = PolyQ::monomial(1, Rational(2));
    if (route == HermiteRoute::ladder) {
        PolyQ h = PolyQ::one();
        for (unsigned k = 0; k < n; ++k) h = two_v * h - diff(h);
        return h;
    }
    PolyQ prev;              // H_{-1} = 0
    PolyQ cur = PolyQ::one();
    for (unsigned k = 0; k < n; ++k) {
        PolyQ next = two_v * cur - Rational(2 * static_cast<long>(k)) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

PolyQ hermite_from_laguerre(unsigned n) {
    const unsigned p = n / 2;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 2, n);
    Rational pref = Rational(mpq_class(pw)) * factorial(p);
    if (p % 2 == 1) pref = -pref;
    if (n % 2 == 0) {
        return pref * substitute_square(laguerre_series(Rational(-1, 2), p));
    }
    return (pref * substitute_square(laguerre_series(Rational(1, 2), p))).shift_up(1);
}

PolyQ ode_residual(const LaguerreOde& kind, const PolyQ& poly) {
    const PolyQ v = PolyQ::monomial(1);
    const PolyQ d1 = diff(poly);
    return v * diff(d1) + (PolyQ{kind.gamma + Rational(1)} - v) * d1 +
           Rational(static_cast<long>(kind.p)) * poly;
}

PolyQ ode_residual(const HermiteOde& kind, const PolyQ& poly) {
    const PolyQ d1 = diff(poly);
    return diff(d1) - PolyQ::monomial(1, Rational(2)) * d1 +
           Rational(2 * static_cast<long>(kind.n)) * poly;
}

std::map<std::string, PolyQ> recursion_residuals(const Rational& gamma, unsigned p) {
    const Rational pr(static_cast<long>(p));
    if (pr + gamma == Rational(0))
        throw PoleError("recursion relation divides by p+gamma = 0 (p=" +
                        std::to_string(p) + ", gamma=" + gamma.str() + ")");

    const PolyQ v = PolyQ::monomial(1);
    const PolyQ L = laguerre_series(gamma, p);
    const PolyQ L_next = laguerre_series(gamma, p + 1);
    const PolyQ L_dn = laguerre_series(gamma - Rational(1), p);
    const PolyQ L_dn_next = laguerre_series(gamma - Rational(1), p + 1);
    const PolyQ L_up = laguerre_series(gamma + Rational(1), p);
    const PolyQ dL = diff(L);

    std::map<std::string, PolyQ> res;
    res["lower_gamma"] = L_dn - (Rational(1) / (pr + gamma)) * (gamma * L + v * dL);
    res["raise_gamma_deriv"] = L_up + diff(L_next);
    res["raise_gamma"] = L_up - (L - dL);
    res["lower_gamma_raise_p"] =
        L_dn_next + (Rational(1) / (pr + Rational(1))) * ((v - PolyQ{gamma}) * L - v * dL);
    res["raise_p"] =
        L_next - (Rational(1) / (pr + Rational(1))) * ((PolyQ{pr + Rational(1) + gamma} - v) * L + v * dL);
    if (p >= 1) {
        const PolyQ L_up_prev = laguerre_series(gamma + Rational(1), p - 1);
        res["three_term_mixed"] =
            L_next -
            (Rational(1) / (pr + Rational(1))) * ((PolyQ{pr + Rational(1) + gamma} - v) * L - v * L_up_prev);
    }
    return res;
}

} // namespace gapforge
