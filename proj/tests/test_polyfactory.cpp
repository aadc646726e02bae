#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gapforge/errors.hpp"
#include "gapforge/polyfactory.hpp"

using namespace gapforge;

namespace {

std::mt19937 rng(61803399u);

Rational random_gamma() {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 9);
    // negative integers are excluded: L_p^(gamma) itself degenerates there
    // (drops degree), so the construction rightly refuses them
    while (true) {
        const Rational g(num(rng), den(rng));
        if (!(g.is_integer() && g < Rational(0))) return g;
    }
}

const std::vector<Rational> gamma_samples = {
    Rational(1, 2),  Rational(-1, 2), Rational(-1, 4), Rational(1, 4),
    Rational(1, 3),  Rational(-1, 3), Rational(7, 3),  Rational(-2, 5),
    Rational(5, 2),  Rational(0),     Rational(3),     Rational(-5, 6),
};

PolyQ laguerre1(const Rational& g) {
    return PolyQ{Rational(1) + g, Rational(-1)};
}

PolyQ laguerre2(const Rational& g) {
    return PolyQ{(g + Rational(2)) * (g + Rational(1)) * Rational(1, 2),
                 -(g + Rational(2)), Rational(1, 2)};
}

} // namespace

TEST_CASE("laguerre series low orders") {
    for (const auto& g : gamma_samples) {
        CAPTURE(g.str());
        CHECK(laguerre_series(g, 0) == PolyQ::one());
        CHECK(laguerre_series(g, 1) == laguerre1(g));
        CHECK(laguerre_series(g, 2) == laguerre2(g));
    }
}

TEST_CASE("laguerre series degree and leading coefficient") {
    for (const auto& g : gamma_samples)
        for (unsigned p = 0; p <= 12; ++p) {
            const PolyQ l = laguerre_series(g, p);
            CHECK(l.degree() == static_cast<int>(p));
            const Rational lead =
                Rational(p % 2 == 0 ? 1 : -1) / factorial(p);
            CHECK(l.leading() == lead);
        }
}

TEST_CASE("rodrigues seed and single application") {
    const Rational g(1, 2);
    const QuasiOperand seed = rodrigues_seed(g);
    CHECK(seed.sigma == Rational(1, 2));
    CHECK(seed.poly == PolyQ::one());
    for (const D2Sign sign : {D2Sign::plus, D2Sign::minus}) {
        const QuasiOperand out = d2_apply(D2Operator{g, sign}, seed);
        CHECK(out.sigma == seed.sigma);
        // D2 seed |-> v - (gamma+1) = (-1) * 1! * L1
        CHECK(out.poly == -laguerre1(g));
    }
}

TEST_CASE("the alpha-form operator reproduces the first even polynomial") {
    // gamma = -1/2 + alpha, alpha = 1/4: acting on the sigma = alpha/2 operand
    // produces v - 1/2 - alpha, the first even excited polynomial
    const Rational alpha(1, 4);
    const Rational g = Rational(-1, 2) + alpha;
    const QuasiOperand seed = rodrigues_seed(g);
    CHECK(seed.sigma == alpha / Rational(2));
    const QuasiOperand out = d2_apply(D2Operator{g, D2Sign::plus}, seed);
    CHECK(out.poly == PolyQ{-Rational(1, 2) - alpha, Rational(1)});
    CHECK(out.poly == -laguerre_series(g, 1));
}

TEST_CASE("pole coefficient of the operator factors") {
    CHECK(D2Operator{Rational(1, 2), D2Sign::plus}.pole_coeff() == Rational(1, 2));
    CHECK(D2Operator{Rational(1, 2), D2Sign::minus}.pole_coeff() == Rational(0));
    CHECK(D2Operator{Rational(-1, 4), D2Sign::plus}.pole_coeff() == Rational(1, 8));
}

TEST_CASE("ladder factor shifts the exponent by one half") {
    const QuasiOperand x{Rational(3, 4), PolyQ{Rational(2), Rational(1)}};
    const QuasiOperand up = ladder_factor_apply(x, Rational(1, 2), true);
    CHECK(up.sigma == Rational(1, 4));
    const QuasiOperand down = ladder_factor_apply(x, Rational(1, 2), false);
    CHECK(down.sigma == Rational(1, 4));
}

TEST_CASE("generalized Rodrigues equals the series: flagship identity") {
    for (const auto& g : gamma_samples)
        for (unsigned p = 0; p <= 12; ++p) {
            CAPTURE(g.str());
            CAPTURE(p);
            const PolyQ series = laguerre_series(g, p);
            CHECK(laguerre_generalized_rodrigues(g, p, D2Sign::plus) == series);
            CHECK(laguerre_generalized_rodrigues(g, p, D2Sign::minus) == series);
        }
}

TEST_CASE("generalized Rodrigues equals the series at random parameters") {
    for (int trial = 0; trial < 10; ++trial) {
        const Rational g = random_gamma();
        for (unsigned p : {3u, 7u, 11u}) {
            CAPTURE(g.str());
            const PolyQ series = laguerre_series(g, p);
            CHECK(laguerre_generalized_rodrigues(g, p, D2Sign::plus) == series);
            CHECK(laguerre_generalized_rodrigues(g, p, D2Sign::minus) == series);
        }
    }
}

TEST_CASE("repeated applications control the degree exactly") {
    const Rational g(-1, 3);
    const D2Operator op{g, D2Sign::minus};
    QuasiOperand x = rodrigues_seed(g);
    for (int p = 1; p <= 16; ++p) {
        x = d2_apply(op, x);
        CHECK(x.sigma == rodrigues_seed(g).sigma);
        CHECK(x.poly.degree() == p);
    }
}

TEST_CASE("hermite routes and examples") {
    CHECK(hermite(0, HermiteRoute::ladder) == PolyQ::one());
    CHECK(hermite(1, HermiteRoute::ladder) == PolyQ{Rational(0), Rational(2)});
    CHECK(hermite(2, HermiteRoute::three_term) ==
          PolyQ{Rational(-2), Rational(0), Rational(4)});
    CHECK(hermite(3, HermiteRoute::three_term) ==
          PolyQ{Rational(0), Rational(-12), Rational(0), Rational(8)});
    for (unsigned n = 0; n <= 24; ++n)
        CHECK(hermite(n, HermiteRoute::ladder) == hermite(n, HermiteRoute::three_term));
}

TEST_CASE("hermite from half-integer laguerre") {
    CHECK(hermite_from_laguerre(1) == PolyQ{Rational(0), Rational(2)});
    CHECK(hermite_from_laguerre(2) == PolyQ{Rational(-2), Rational(0), Rational(4)});
    CHECK(hermite_from_laguerre(3) ==
          PolyQ{Rational(0), Rational(-12), Rational(0), Rational(8)});
    for (unsigned n = 0; n <= 24; ++n)
        CHECK(hermite_from_laguerre(n) == hermite(n, HermiteRoute::ladder));
}

TEST_CASE("differential equation residuals") {
    for (const auto& g : gamma_samples) {
        CHECK(ode_residual(LaguerreOde{g, 1}, laguerre1(g)).is_zero());
        for (unsigned p = 0; p <= 10; ++p)
            CHECK(ode_residual(LaguerreOde{g, p}, laguerre_series(g, p)).is_zero());
    }
    for (unsigned n = 0; n <= 12; ++n)
        CHECK(ode_residual(HermiteOde{n}, hermite(n, HermiteRoute::ladder)).is_zero());
    // negative control: the wrong polynomial leaves the constant gamma+1
    const Rational g(1, 3);
    CHECK(ode_residual(LaguerreOde{g, 1}, PolyQ{Rational(0), Rational(1)}) ==
          PolyQ{g + Rational(1)});
}

TEST_CASE("recursion residuals vanish for the sample set") {
    for (const auto& g : gamma_samples)
        for (unsigned p = 0; p <= 12; ++p) {
            if ((g + Rational(static_cast<long>(p))) == Rational(0)) continue;
            const auto residuals = recursion_residuals(g, p);
            CHECK(residuals.size() == (p >= 1 ? 6 : 5));
            for (const auto& [name, r] : residuals) {
                CAPTURE(g.str());
                CAPTURE(p);
                CAPTURE(name);
                CHECK(r.is_zero());
            }
        }
}

TEST_CASE("recursion residuals at the alpha-shifted parameter") {
    const Rational g = Rational(-1, 2) + Rational(1, 3);
    for (const auto& [name, r] : recursion_residuals(g, 3)) {
        CAPTURE(name);
        CHECK(r.is_zero());
    }
}

TEST_CASE("recursion residuals reject the gamma pole") {
    CHECK_THROWS_AS(recursion_residuals(Rational(-2), 2), PoleError);
    CHECK_THROWS_AS(recursion_residuals(Rational(0), 0), PoleError);
}

TEST_CASE("degenerate negative-integer parameters are refused, not mangled") {
    // At gamma = -4 the family degenerates once p reaches 4: L_4^(-4) has a
    // vanishing trailing block, the two-factor cancellation breaks, and the
    // construction must refuse rather than return a wrong polynomial.
    CHECK(laguerre_generalized_rodrigues(Rational(-4), 3, D2Sign::plus) ==
          laguerre_series(Rational(-4), 3));
    CHECK_THROWS_AS(laguerre_generalized_rodrigues(Rational(-4), 4, D2Sign::plus),
                    Error);
    CHECK_THROWS_AS(laguerre_generalized_rodrigues(Rational(-4), 4, D2Sign::minus),
                    Error);
}

TEST_CASE("route comparison detects corruption") {
    const Rational g(1, 2);
    PolyQ tampered = laguerre_series(g, 4);
    tampered += PolyQ::monomial(2, Rational(1, 1000000));
    CHECK(tampered != laguerre_generalized_rodrigues(g, 4, D2Sign::plus));
}
