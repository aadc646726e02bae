#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gapforge/errors.hpp"
#include "gapforge/hierarchy.hpp"
#include "gapforge/polyfactory.hpp"

using namespace gapforge;

namespace {

HierarchySpec period1(long gap, long e0 = 0) {
    HierarchySpec s;
    s.period = 1;
    s.gaps = {Rational(gap)};
    s.ground_energy = Rational(e0);
    return s;
}

HierarchySpec period2(const Rational& d1, const Rational& d2, long e0 = 0) {
    HierarchySpec s;
    s.period = 2;
    s.gaps = {d1, d2};
    s.ground_energy = Rational(e0);
    return s;
}

PolyQ monic(const PolyQ& p) {
    REQUIRE_FALSE(p.is_zero());
    return p * (Rational(1) / p.leading());
}

} // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(period2(Rational(0), Rational(1)).validate(), ConfigError);
    CHECK_THROWS_AS(period2(Rational(-1), Rational(1)).validate(), ConfigError);
    HierarchySpec s;
    s.period = 2;
    s.gaps = {Rational(1)};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.period = 0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    CHECK_NOTHROW(period2(Rational(1), Rational(3)).validate());
}

TEST_CASE("alpha asymmetry") {
    CHECK(period1(2).alpha() == Rational(0));
    CHECK(period2(Rational(1), Rational(3)).alpha() == Rational(1, 4));
    CHECK(period2(Rational(3), Rational(1)).alpha() == Rational(-1, 4));
    CHECK(period2(Rational(2), Rational(2)).alpha() == Rational(0));
    HierarchySpec s;
    s.period = 3;
    s.gaps = {Rational(1), Rational(1), Rational(1)};
    CHECK_THROWS_AS(s.alpha(), UnsupportedPeriod);
}

TEST_CASE("hierarchy construction closed forms") {
    SUBCASE("period 1") {
        const auto h = build_hierarchy(period1(2));
        REQUIRE(h.superpotentials.size() == 1);
        CHECK(h.superpotentials[0].linear_coeff == Rational(1));
        CHECK(h.superpotentials[0].pole_coeff == Rational(0));
        CHECK(h.potentials[0].quad_coeff == Rational(1));
        CHECK(h.potentials[0].invsq_coeff == Rational(0));
        CHECK(h.potentials[0].const_term == Rational(-1));
    }
    SUBCASE("period 2, gaps 1 and 3") {
        const auto h = build_hierarchy(period2(Rational(1), Rational(3)));
        REQUIRE(h.superpotentials.size() == 2);
        CHECK(h.superpotentials[0].linear_coeff == Rational(1));
        CHECK(h.superpotentials[0].pole_coeff == Rational(-1, 4));
        CHECK(h.superpotentials[1].pole_coeff == Rational(1, 4));
        // constant terms -delta2/2 + E0 and +delta1/2 + E0
        CHECK(h.potentials[0].const_term == Rational(-3, 2));
        CHECK(h.potentials[1].const_term == Rational(1, 2));
    }
    SUBCASE("degenerate gaps reduce to the harmonic case") {
        const auto h2 = build_hierarchy(period2(Rational(2), Rational(2)));
        const auto h1 = build_hierarchy(period1(2));
        CHECK(h2.superpotentials[0].pole_coeff == Rational(0));
        CHECK(h2.superpotentials[0].linear_coeff ==
              h2.superpotentials[1].linear_coeff);
        CHECK(h2.superpotentials[0].linear_coeff ==
              h1.superpotentials[0].linear_coeff);
    }
    SUBCASE("larger periods are rejected") {
        HierarchySpec s;
        s.period = 3;
        s.gaps = {Rational(1), Rational(2), Rational(3)};
        CHECK_THROWS_AS(build_hierarchy(s), UnsupportedPeriod);
    }
}

TEST_CASE("riccati chain closes exactly") {
    for (const auto& spec :
         {period1(2), period1(5), period2(Rational(1), Rational(3)),
          period2(Rational(1), Rational(2)), period2(Rational(7, 3), Rational(1, 5))}) {
        for (const auto& triple : closure_residual(spec)) CHECK(triple.is_zero());
    }
}

TEST_CASE("energy levels") {
    const auto s = period2(Rational(1), Rational(2));
    const long expect1[] = {0, 1, 3, 4, 6, 7};
    const long expect2[] = {1, 3, 4, 6, 7, 9};
    for (unsigned n = 0; n < 6; ++n) {
        CHECK(energy_level(s, 1, n) == Rational(expect1[n]));
        CHECK(energy_level(s, 2, n) == Rational(expect2[n]));
    }
    CHECK(energy_level(period1(2, 1), 1, 3) == Rational(7));
    CHECK_THROWS_AS(energy_level(s, 0, 0), ConfigError);
    CHECK_THROWS_AS(energy_level(s, 3, 0), ConfigError);
}

TEST_CASE("spectrum periodicity and level consistency") {
    const auto s = period2(Rational(2, 3), Rational(7, 5));
    const Rational sum = s.gap_sum();
    for (int lam = 1; lam <= 2; ++lam)
        for (unsigned n = 0; n < 10; ++n)
            CHECK(energy_level(s, lam, n + 2) == energy_level(s, lam, n) + sum);
    // the successor Hamiltonian drops exactly the lowest level
    for (unsigned n = 0; n < 10; ++n)
        CHECK(energy_level(s, 2, n) == energy_level(s, 1, n + 1));
    const SpectrumTable t = make_spectrum_table(s, 1, 9);
    REQUIRE(t.entries.size() == 10);
    for (std::size_t i = 1; i < t.entries.size(); ++i)
        CHECK(t.entries[i - 1].second < t.entries[i].second);
}

TEST_CASE("ground states") {
    const auto s = period2(Rational(1), Rational(3));   // alpha = 1/4
    const QuasiState g1 = ground_state(s, 1);
    CHECK(g1.form == StateForm::laguerre_v);
    CHECK(g1.sigma == Rational(1, 8));
    CHECK(g1.poly == PolyQ::one());
    CHECK(g1.parity == Parity::even);
    CHECK(g1.gamma_base == Rational(3, 4));   // 1/2 + alpha
    const QuasiState g2 = ground_state(s, 2);
    CHECK(g2.sigma == Rational(-1, 8));
    CHECK(g2.gamma_base == Rational(1, 4));
    const QuasiState h = ground_state(period1(2), 1);
    CHECK(h.form == StateForm::gaussian_u);
    CHECK(h.poly == PolyQ::one());
    CHECK(h.gamma_base == Rational(1, 2));
}

TEST_CASE("ladder operator bookkeeping") {
    const auto s = period2(Rational(1), Rational(3));
    const auto up1 = make_ladder(s, LadderDirection::raise, 1);
    CHECK(up1.half_v == Rational(1, 2));
    CHECK(up1.pole == Rational(-1, 8));   // (-1)^1 alpha/2
    CHECK(up1.scale == Rational(4));      // gap sum
    const auto up2 = make_ladder(s, LadderDirection::raise, 2);
    CHECK(up2.pole == Rational(1, 8));
    // levels reduce cyclically
    CHECK(make_ladder(s, LadderDirection::raise, 3).pole == up1.pole);
    CHECK(make_ladder(s, LadderDirection::lower, 4).pole == up2.pole);
}

TEST_CASE("ladder application basics") {
    const auto s = period2(Rational(1), Rational(3));
    SUBCASE("lowering the ground state annihilates it") {
        const auto dead = apply_ladder(make_ladder(s, LadderDirection::lower, 1),
                                       ground_state(s, 1));
        CHECK(dead.is_zero());
    }
    SUBCASE("raising the second ground state gives the first excited state") {
        // psi_{1,1} = A+_1 psi_{2,0} / sqrt(delta_1), and delta_1 = 1 here
        const auto raised = apply_ladder(make_ladder(s, LadderDirection::raise, 1),
                                         ground_state(s, 2));
        CHECK(raised.sigma == Rational(3, 8));   // (1 - alpha)/2
        CHECK(raised.parity == Parity::odd);
        CHECK(raised.poly.degree() == 0);
        CHECK(states_equal(raised, build_eigenstate(s, 1, 1)));
    }
    SUBCASE("form mismatch is rejected") {
        CHECK_THROWS_AS(apply_ladder(make_ladder(s, LadderDirection::raise, 1),
                                     ground_state(period1(2), 1)),
                        FormMismatch);
    }
}

TEST_CASE("two raises from the ground state") {
    // gaps (3,1): alpha = -1/4 and delta2*(delta1+delta2) = 4, a perfect
    // square, so the unnormalized double-raise compares exactly
    const auto s = period2(Rational(3), Rational(1));
    const auto t = apply_ladder(
        make_ladder(s, LadderDirection::raise, 1),
        apply_ladder(make_ladder(s, LadderDirection::raise, 2), ground_state(s, 1)));
    CHECK(t.parity == Parity::even);
    // poly proportional to v - 1/2 - alpha
    CHECK(monic(t.poly) == PolyQ{Rational(-1, 4), Rational(1)});
    CHECK(states_equal(t, scale_state(build_eigenstate(s, 1, 2), Rational(2))));
}

TEST_CASE("eigenstate polynomials match the displayed low orders") {
    const auto s = period2(Rational(1), Rational(3));   // alpha = 1/4
    const QuasiState s13 = build_eigenstate(s, 1, 3);
    CHECK(s13.sigma == Rational(3, 8));
    CHECK(monic(s13.poly) == PolyQ{Rational(-5, 4), Rational(1)});   // v - 3/2 + a
    const QuasiState s22 = build_eigenstate(s, 2, 2);
    CHECK(s22.sigma == Rational(-1, 8));
    CHECK(monic(s22.poly) == PolyQ{Rational(-1, 4), Rational(1)});   // v - 1/2 + a
}

TEST_CASE("period-1 eigenstates are Hermite states") {
    const auto s = period1(2);
    const QuasiState built = build_eigenstate(s, 1, 2);
    QuasiState expected;
    expected.form = StateForm::gaussian_u;
    expected.poly = hermite(2, HermiteRoute::three_term);
    expected.parity = Parity::even;
    expected.amp2 = Rational(1, 8);   // 1/(2^2 2!)
    expected.gamma_base = Rational(1, 2);
    CHECK(states_equal(built, expected));
}

TEST_CASE("closed form decomposition map") {
    const auto s = period2(Rational(1), Rational(3));   // alpha = 1/4
    const auto even1 = eigenstate_closed_form(s, 1, 4);
    CHECK(even1.p == 2);
    CHECK(even1.sign == 1);
    CHECK(even1.gamma == Rational(-1, 4));    // -1/2 + alpha
    CHECK(even1.sigma == Rational(1, 8));     // alpha/2
    const auto odd1 = eigenstate_closed_form(s, 1, 3);
    CHECK(odd1.p == 1);
    CHECK(odd1.sign == -1);
    CHECK(odd1.gamma == Rational(1, 4));      // 1/2 - alpha
    CHECK(odd1.sigma == Rational(3, 8));      // (1 - alpha)/2
    const auto odd2 = eigenstate_closed_form(s, 2, 5);
    CHECK(odd2.p == 2);
    CHECK(odd2.gamma == Rational(3, 4));      // 1/2 + alpha
    CHECK(odd2.sigma == Rational(5, 8));      // (1 + alpha)/2
    const auto even2 = eigenstate_closed_form(s, 2, 2);
    CHECK(even2.gamma == Rational(-3, 4));    // -1/2 - alpha
    CHECK(even2.sigma == Rational(-1, 8));    // -alpha/2
    CHECK_THROWS_AS(eigenstate_closed_form(period1(2), 1, 1), UnsupportedPeriod);
}

TEST_CASE("ladder construction equals the closed form exactly") {
    const std::vector<Rational> alphas = {Rational(0), Rational(1, 4),
                                          Rational(-1, 3), Rational(2, 5)};
    for (const auto& a : alphas) {
        const auto s = period2(Rational(1) - Rational(2) * a,
                               Rational(1) + Rational(2) * a);
        for (int lam = 1; lam <= 2; ++lam)
            for (unsigned n = 0; n <= 12; ++n) {
                CAPTURE(a.str());
                CAPTURE(lam);
                CAPTURE(n);
                const QuasiState built = build_eigenstate(s, lam, n);
                const QuasiState closed =
                    closed_form_state(s, eigenstate_closed_form(s, lam, n));
                CHECK(states_equal(built, closed));
                CHECK(built.poly.degree() == static_cast<int>(n / 2));
            }
    }
}

TEST_CASE("ladder round trip scales by the energy gap") {
    const auto s = period2(Rational(1), Rational(2));
    for (int lam = 1; lam <= 2; ++lam)
        for (unsigned n = 1; n <= 6; ++n) {
            const QuasiState psi = build_eigenstate(s, lam, n);
            const auto back = apply_ladder(
                make_ladder(s, LadderDirection::raise, lam),
                apply_ladder(make_ladder(s, LadderDirection::lower, lam), psi));
            const Rational gap = energy_level(s, lam, n) - energy_level(s, lam, 0);
            CHECK(states_equal(back, scale_state(psi, gap)));
        }
}

TEST_CASE("alpha negation swaps the two levels") {
    const Rational a(1, 3);
    const auto plus = period2(Rational(1) - Rational(2) * a,
                              Rational(1) + Rational(2) * a);
    const auto minus = period2(Rational(1) + Rational(2) * a,
                               Rational(1) - Rational(2) * a);
    for (unsigned n = 0; n <= 8; ++n) {
        const QuasiState x = build_eigenstate(plus, 1, n);
        const QuasiState y = build_eigenstate(minus, 2, n);
        CHECK(x.sigma == y.sigma);
        CHECK(x.gamma_base == y.gamma_base);
        CHECK(states_equal(x, y));
    }
}

TEST_CASE("pointwise evaluation") {
    const auto s = period2(Rational(1), Rational(3));   // alpha = 1/4 > 0
    SUBCASE("vanishing center") {
        CHECK(wavefunction_eval(ground_state(s, 1), s, 0.0) == 0.0);
    }
    SUBCASE("odd antisymmetry") {
        const QuasiState psi = build_eigenstate(s, 1, 1);
        for (double d : {0.3, 0.8, 1.7})
            CHECK(wavefunction_eval(psi, s, -d) ==
                  doctest::Approx(-wavefunction_eval(psi, s, d)).epsilon(1e-14));
    }
    SUBCASE("diverging center is flagged") {
        CHECK_THROWS_AS(wavefunction_eval(ground_state(s, 2), s, 0.0), SingularPoint);
    }
    SUBCASE("harmonic limit matches the Gaussian pointwise") {
        const auto deg = period2(Rational(1), Rational(1));
        const auto h = period1(1);
        for (unsigned n = 0; n <= 5; ++n) {
            const QuasiState a = build_eigenstate(deg, 1, n);
            const QuasiState b = build_eigenstate(h, 1, n);
            for (double u : {-3.1, -1.0, -0.25, 0.4, 1.9, 3.3})
                CHECK(wavefunction_eval(a, deg, u) ==
                      doctest::Approx(wavefunction_eval(b, h, u)).epsilon(1e-12));
        }
    }
}

TEST_CASE("potential evaluation and singularity") {
    const auto s = period2(Rational(1), Rational(3));
    const auto h = build_hierarchy(s);
    CHECK_THROWS_AS(h.potentials[0].eval(0.0), SingularPoint);
    // W^2 - W' + E0 at a regular point
    const auto& w = h.superpotentials[0];
    const double u = 1.3;
    const double lhs = h.potentials[0].eval(u);
    const double rhs = w.eval(u) * w.eval(u) - w.derivative(u);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
}

TEST_CASE("exact square roots") {
    CHECK(exact_sqrt(Rational(4, 9)) == Rational(2, 3));
    CHECK(exact_sqrt(Rational(1)) == Rational(1));
    CHECK_FALSE(exact_sqrt(Rational(2)).has_value());
    CHECK_FALSE(exact_sqrt(Rational(-4)).has_value());
}

TEST_CASE("state equality discriminates") {
    const auto s = period2(Rational(1), Rational(3));
    const QuasiState a = build_eigenstate(s, 1, 2);
    QuasiState b = a;
    b.parity = Parity::odd;
    CHECK_FALSE(states_equal(a, b));
    QuasiState c = a;
    c.amp2 = c.amp2 * Rational(2);   // irrational rescale of the value
    CHECK_FALSE(states_equal(a, c));
    QuasiState d = a;
    d.amp2 = d.amp2 * Rational(4);
    d.poly = d.poly * Rational(1, 2);   // compensating rational rescale
    CHECK(states_equal(a, d));
}
