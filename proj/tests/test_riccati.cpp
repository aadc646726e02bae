#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gapforge/errors.hpp"
#include "gapforge/hierarchy.hpp"
#include "gapforge/riccati.hpp"

using namespace gapforge;

namespace {

std::vector<WRep> closed_form_reps(const HierarchySpec& spec) {
    std::vector<WRep> w;
    for (const auto& sp : build_hierarchy(spec).superpotentials)
        w.push_back(to_rep(sp));
    return w;
}

HierarchySpec spec2(long d1, long d2) {
    HierarchySpec s;
    s.period = 2;
    s.gaps = {Rational(d1), Rational(d2)};
    return s;
}

RiccatiProblem problem(std::vector<double> gaps) {
    RiccatiProblem p;
    p.gaps = std::move(gaps);
    p.period = static_cast<int>(p.gaps.size());
    return p;
}

const PolePolyW& pole_rep(const WRep& w) { return std::get<PolePolyW>(w); }

} // namespace

TEST_CASE("pole-polynomial representation evaluates in closed form") {
    PolePolyW w;
    w.center = 1.0;
    w.linear = 2.0;
    w.pole = -0.5;
    w.odd_coeffs = {0.25};
    const double d = 0.8;
    CHECK(w.eval(1.0 + d) ==
          doctest::Approx(2.0 * d - 0.5 / d + 0.25 * d * d * d).epsilon(1e-15));
    CHECK(w.deriv(1.0 + d) ==
          doctest::Approx(2.0 + 0.5 / (d * d) + 0.75 * d * d).epsilon(1e-15));
}

TEST_CASE("grid representation reproduces cubic data exactly") {
    GridW w;
    w.center = 0.0;
    for (int j = 0; j < 60; ++j) {
        const double d = 0.3 + 0.1 * j;
        w.offsets.push_back(d);
        w.values.push_back(d * d * d - 2.0 * d);
    }
    // 4-point Lagrange interpolation is exact on cubics, at and between nodes
    for (double d : {0.3, 0.47, 1.234, 3.9, 5.95}) {
        CHECK(w.eval(d) == doctest::Approx(d * d * d - 2.0 * d).epsilon(1e-13));
        CHECK(w.eval(-d) == -w.eval(d));      // odd extension, bitwise
        CHECK(w.deriv(d) == doctest::Approx(3.0 * d * d - 2.0).epsilon(1e-11));
        CHECK(w.deriv(-d) == w.deriv(d));     // derivative of odd is even, bitwise
    }
}

TEST_CASE("grid representation tracks a pole-shaped profile at h^4 accuracy") {
    GridW w;
    w.center = 0.0;
    for (int j = 0; j < 60; ++j) {
        const double d = 0.3 + 0.1 * j;
        w.offsets.push_back(d);
        w.values.push_back(d + 0.25 / d);   // a typical superpotential shape
    }
    // away from the steep inner edge the quartic error term is ~1e-5
    for (double d : {1.17, 2.33, 3.91}) {
        CHECK(w.eval(d) == doctest::Approx(d + 0.25 / d).epsilon(1e-4));
        CHECK(std::abs(w.deriv(d) - (1.0 - 0.25 / (d * d))) <= 5e-3);
    }
}

TEST_CASE("closed forms certify with tiny residuals") {
    Grid grid;
    SUBCASE("period 1") {
        HierarchySpec s;
        s.period = 1;
        s.gaps = {Rational(2)};
        CHECK(riccati_residual(closed_form_reps(s), {2.0}, grid) <= 1e-14);
    }
    SUBCASE("period 2") {
        CHECK(riccati_residual(closed_form_reps(spec2(1, 3)), {1.0, 3.0}, grid) <=
              1e-12);
    }
    SUBCASE("perturbed pole is detected") {
        auto w = closed_form_reps(spec2(1, 3));
        std::get<PolePolyW>(w[0]).pole += 0.01;
        CHECK(riccati_residual(w, {1.0, 3.0}, grid) >= 1e-3);
    }
}

TEST_CASE("residual input validation") {
    Grid grid;
    CHECK_THROWS_AS(riccati_residual({}, {}, grid), ConfigError);
    CHECK_THROWS_AS(riccati_residual(closed_form_reps(spec2(1, 3)), {1.0}, grid),
                    ConfigError);
}

TEST_CASE("problem validation") {
    CHECK_THROWS_AS(problem({}).validate(), ConfigError);
    CHECK_THROWS_AS(problem({1.0, -2.0}).validate(), ConfigError);
    auto p = problem({1.0});
    p.tol = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = problem({1.0});
    p.max_order = 0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("solver recovers the period-1 closed form") {
    auto sol = solve_periodic(problem({2.0}));
    REQUIRE(sol.converged);
    CHECK(sol.status == RiccatiStatus::converged);
    CHECK(sol.residual_norm <= 1e-10);
    CHECK_FALSE(sol.exploratory);
    const auto& w = pole_rep(sol.w[0]);
    CHECK(std::abs(w.linear - 1.0) <= 1e-6);
    CHECK(std::abs(w.pole) <= 1e-6);
}

TEST_CASE("solver recovers the period-2 closed form") {
    auto sol = solve_periodic(problem({1.0, 3.0}));
    REQUIRE(sol.converged);
    CHECK(sol.residual_norm <= 1e-10);
    REQUIRE(sol.w.size() == 2);
    CHECK(std::abs(pole_rep(sol.w[0]).linear - 1.0) <= 1e-6);
    CHECK(std::abs(pole_rep(sol.w[0]).pole + 0.25) <= 1e-6);
    CHECK(std::abs(pole_rep(sol.w[1]).linear - 1.0) <= 1e-6);
    CHECK(std::abs(pole_rep(sol.w[1]).pole - 0.25) <= 1e-6);
}

TEST_CASE("least-squares variant agrees on the pole ansatz") {
    auto p = problem({1.0, 3.0});
    p.solver = RiccatiSolver::least_squares;
    auto sol = solve_periodic(p);
    REQUIRE(sol.converged);
    CHECK(std::abs(pole_rep(sol.w[0]).pole + 0.25) <= 1e-6);
}

TEST_CASE("cyclic shift of the gaps rotates the solution") {
    auto a = solve_periodic(problem({1.0, 3.0}));
    auto b = solve_periodic(problem({3.0, 1.0}));
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(std::abs(pole_rep(b.w[0]).pole - pole_rep(a.w[1]).pole) <= 1e-8);
    CHECK(std::abs(pole_rep(b.w[1]).pole - pole_rep(a.w[0]).pole) <= 1e-8);
}

TEST_CASE("equal gaps collapse to the harmonic embedding for any period") {
    for (int n : {2, 3, 4}) {
        auto sol = solve_periodic(problem(std::vector<double>(n, 1.0)));
        REQUIRE(sol.converged);
        CHECK(sol.exploratory == (n >= 3));
        for (const auto& w : sol.w) {
            CHECK(std::abs(pole_rep(w).linear - 0.5) <= 1e-8);
            CHECK(std::abs(pole_rep(w).pole) <= 1e-8);
        }
    }
}

TEST_CASE("unequal period-3 gaps yield a certified in-band outcome") {
    auto p = problem({1.0, 2.0, 3.0});
    p.max_order = 5;
    auto sol = solve_periodic(p);
    CHECK(sol.exploratory);
    CHECK_FALSE(sol.converged);
    CHECK(std::isfinite(sol.residual_norm));
    CHECK(sol.residual_norm > p.tol);
    CHECK((sol.status == RiccatiStatus::ansatz_insufficient ||
           sol.status == RiccatiStatus::no_convergence));
    REQUIRE(sol.w.size() == 3);
}

TEST_CASE("convergence flag always matches an independent recheck") {
    for (auto gaps : {std::vector<double>{2.0}, std::vector<double>{1.0, 2.0},
                      std::vector<double>{1.0, 2.0, 3.0}}) {
        auto p = problem(gaps);
        auto sol = solve_periodic(p);
        CHECK(sol.converged == (sol.residual_norm <= p.tol));
        CHECK(sol.converged == (sol.status == RiccatiStatus::converged));
        Grid fine;
        fine.points = 4003;
        const double recheck = riccati_residual(sol.w, gaps, fine);
        if (sol.converged) CHECK(recheck <= 10.0 * p.tol);
    }
}

TEST_CASE("grid-collocation ansatz cross-check on period 2") {
    auto p = problem({1.0, 3.0});
    p.ansatz = RiccatiAnsatz::grid_collocation;
    p.solver = RiccatiSolver::least_squares;
    p.grid.points = 801;
    p.max_iter = 40;
    auto sol = solve_periodic(p);
    REQUIRE(sol.w.size() == 2);
    // exploratory-quality: the sampled values should track the closed form
    // away from the center band
    const auto exact = closed_form_reps(spec2(1, 3));
    double worst = 0.0;
    for (double u : {2.0, 3.0, 4.0, 5.0})
        worst = std::max(worst, std::abs(w_eval(sol.w[0], u) - w_eval(exact[0], u)));
    CHECK(worst <= 5e-2);
}
