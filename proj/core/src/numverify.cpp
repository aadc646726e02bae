#include "gapforge/numverify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <lapacke.h>

#include "gapforge/errors.hpp"

namespace gapforge {

namespace {

std::vector<double> tridiag_eigenvalues(std::vector<double> diag, std::vector<double> off) {
    const lapack_int n = static_cast<lapack_int>(diag.size());
    const lapack_int info = LAPACKE_dsterf(n, diag.data(), off.data());
    if (info != 0)
        throw ConvergenceError("tridiagonal eigenvalue iteration failed (info=" +
                               std::to_string(info) + ")");
    return diag;   // ascending
}

QuadRule golub_welsch(const std::vector<double>& diag, const std::vector<double>& off,
                      double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) jacobi(k, k) = diag[static_cast<std::size_t>(k)];
    for (int k = 0; k + 1 < n; ++k)
        jacobi(k, k + 1) = jacobi(k + 1, k) = off[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("quadrature Jacobi eigenproblem failed");
    QuadRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        rule.nodes[static_cast<std::size_t>(j)] = es.eigenvalues()(j);
        const double first = es.eigenvectors()(0, j);
        rule.weights[static_cast<std::size_t>(j)] = mu0 * first * first;
    }
    return rule;
}

int required_nodes(const QuasiState& a, const QuasiState& b) {
    const int deg = std::max(a.poly.degree(), 0) + std::max(b.poly.degree(), 0);
    return deg / 2 + 1;
}

// Midpoint rule on the u line using full wavefunction evaluation; independent
// of the Gaussian-quadrature path (used as a cross-check).
double midpoint_overlap(const QuasiState& a, const QuasiState& b, const HierarchySpec& spec,
                        int points) {
    const double u0 = spec.center.to_double();
    double radius;
    const int deg = std::max(a.poly.degree(), 0) + std::max(b.poly.degree(), 0);
    if (a.form == StateForm::gaussian_u) {
        const double omega = spec.gaps[0].to_double() / 2.0;
        radius = (8.0 + std::sqrt(3.0 * deg + 1.0)) / std::sqrt(omega);
    } else {
        const double q = spec.gap_sum().to_double() / 4.0;
        const double v_max = 50.0 + 4.0 * deg;
        radius = std::sqrt(v_max / q);
    }
    const double h = 2.0 * radius / points;
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
        const double u = u0 - radius + (i + 0.5) * h;
        acc += wavefunction_eval(a, spec, u) * wavefunction_eval(b, spec, u);
    }
    return acc * h;
}

// --- finite differences ------------------------------------------------------

// Half-line eigenvalues for a singular potential, one parity class at a time.
//
// With V = quad*d^2 + q/d^2 + const and the class edge behavior psi ~ |d|^m
// (m(m-1) = q), substituting psi = d^m * phi removes the singular term:
//   -(d^{2m} phi')'/d^{2m} + (quad*d^2 + const) phi = E phi.
// A cell-centered finite-volume discretization of this weighted form (nodes
// at (j+1/2)h, zero flux through the d=0 face) is symmetrizable by
// sqrt(weight) and second-order accurate up to the edge, which the plain
// 1/d^2 operator is not.
std::vector<double> half_line_weighted(const PotentialForm& potential, double m,
                                       double extent, double h) {
    const int cells = static_cast<int>(std::floor(extent / h - 0.5));
    if (cells < 8) throw ConfigError("grid too coarse for the half-line eigensolver");
    const double quad = potential.quad_coeff.to_double();
    const double cterm = potential.const_term.to_double();
    std::vector<double> diag(static_cast<std::size_t>(cells));
    std::vector<double> off(static_cast<std::size_t>(cells - 1));
    auto face = [&](int j) { return j == 0 ? 0.0 : std::pow(j * h, 2.0 * m); };
    // exact cell average of the weight d^{2m}: midpoint values lose
    // O(h^{2m+1}) mass in the first cell and drag the eigenvalue
    // convergence below second order when 2m < 1
    auto cell_weight = [&](int j) {
        return std::pow(h, 2.0 * m) *
               (std::pow(j + 1.0, 2.0 * m + 1.0) -
                std::pow(static_cast<double>(j), 2.0 * m + 1.0)) /
               (2.0 * m + 1.0);
    };
    for (int j = 0; j < cells; ++j) {
        const double d = (j + 0.5) * h;
        const double w = cell_weight(j);
        diag[static_cast<std::size_t>(j)] =
            (face(j) + face(j + 1)) / (h * h * w) + quad * d * d + cterm;
        if (j + 1 < cells)
            off[static_cast<std::size_t>(j)] =
                -face(j + 1) / (h * h * std::sqrt(w * cell_weight(j + 1)));
    }
    return tridiag_eigenvalues(std::move(diag), std::move(off));
}

// Half-line scheme with an explicit excluded band: one-sided power matching
// psi(edge - h) = r * psi(edge) folded into the first diagonal entry.
std::vector<double> half_line_banded(const PotentialForm& potential, double m,
                                     double band, double extent, double h) {
    const int n = static_cast<int>(std::floor((extent - band) / h));
    if (n < 8) throw ConfigError("grid too coarse for the half-line eigensolver");
    std::vector<double> diag(static_cast<std::size_t>(n));
    std::vector<double> off(static_cast<std::size_t>(n - 1), -1.0 / (h * h));
    const double u0 = potential.center.to_double();
    for (int j = 0; j < n; ++j)
        diag[static_cast<std::size_t>(j)] =
            2.0 / (h * h) + potential.eval(u0 + band + j * h);
    const double ghost = band - h;
    if (ghost > 0.0) {
        const double sqrt_quad = std::sqrt(potential.quad_coeff.to_double());
        const double dv = sqrt_quad * (ghost * ghost - band * band);   // v(ghost)-v(band)
        const double ratio = std::pow(ghost / band, m) * std::exp(-0.5 * dv);
        diag[0] -= ratio / (h * h);
    }
    return tridiag_eigenvalues(std::move(diag), std::move(off));
}

Rational rational_from_double(double x) { return Rational(mpq_class(x)); }

// Sturm chain of p (ends at the gcd; counts distinct roots).
std::vector<PolyQ> sturm_chain(const PolyQ& p) {
    std::vector<PolyQ> chain;
    chain.push_back(p);
    chain.push_back(diff(p));
    while (!chain.back().is_zero()) {
        const PolyQ& a = chain[chain.size() - 2];
        const PolyQ& b = chain.back();
        PolyQ rem = divmod(a, b).second;
        chain.push_back(-rem);
    }
    chain.pop_back();
    return chain;
}

int sign_variations(const std::vector<PolyQ>& chain, const Rational& x) {
    int count = 0;
    int prev = 0;
    for (const auto& f : chain) {
        const int s = eval(f, x).sgn();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

} // namespace

void Grid::validate(const HierarchySpec& spec) const {
    if (points < 3) throw ConfigError("grid needs at least 3 points");
    if (!(u_min < u_max)) throw ConfigError("grid window is empty");
    const double u0 = spec.center.to_double();
    if (!(u_min < u0 && u0 < u_max))
        throw ConfigError("grid window must contain the potential center");
    if (excluded_center_halfwidth < 0.0)
        throw ConfigError("excluded band half-width must be nonnegative");
}

QuadratureScheme overlap_scheme(const QuasiState& a, const QuasiState& b) {
    QuadratureScheme s;
    if (a.form == StateForm::gaussian_u && b.form == StateForm::gaussian_u) {
        s.kind = QuadratureKind::gauss_hermite;
        s.nodes = required_nodes(a, b) + 10;
        return s;
    }
    s.kind = QuadratureKind::gauss_laguerre;
    s.weight_exponent = a.sigma + b.sigma - Rational(1, 2);
    s.nodes = required_nodes(a, b) + 10;
    return s;
}

QuadRule gauss_laguerre_rule(double gamma, int n) {
    if (n < 1) throw ConfigError("quadrature needs at least one node");
    if (!(gamma > -1.0)) throw ConfigError("Laguerre weight exponent must exceed -1");
    std::vector<double> diag(static_cast<std::size_t>(n));
    std::vector<double> off(static_cast<std::size_t>(n - 1));
    for (int k = 0; k < n; ++k) diag[static_cast<std::size_t>(k)] = 2.0 * k + gamma + 1.0;
    for (int k = 1; k < n; ++k)
        off[static_cast<std::size_t>(k - 1)] = std::sqrt(k * (k + gamma));
    return golub_welsch(diag, off, std::tgamma(gamma + 1.0));
}

QuadRule gauss_hermite_rule(int n) {
    if (n < 1) throw ConfigError("quadrature needs at least one node");
    std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
    std::vector<double> off(static_cast<std::size_t>(n - 1));
    for (int k = 1; k < n; ++k) off[static_cast<std::size_t>(k - 1)] = std::sqrt(0.5 * k);
    return golub_welsch(diag, off, std::sqrt(M_PI));
}

double overlap(const QuasiState& a, const QuasiState& b, const HierarchySpec& spec,
               const QuadratureScheme& scheme) {
    spec.validate();
    if (a.is_zero() || b.is_zero()) return 0.0;
    if (a.form != b.form)
        throw FormMismatch("overlap of states in different analytic forms");
    // Opposite parity: the u-line integrand is odd around u0, so the two
    // half-line contributions cancel before any quadrature.
    if (a.parity != b.parity) return 0.0;

    if (scheme.kind == QuadratureKind::trapezoid_u)
        return midpoint_overlap(a, b, spec, std::max(scheme.nodes, 1001));

    if (a.form == StateForm::gaussian_u) {
        if (scheme.kind != QuadratureKind::gauss_hermite)
            throw SchemeMismatch("gaussian states require the Hermite weight");
        if (scheme.nodes < required_nodes(a, b))
            throw SchemeMismatch("node count below polynomial exactness requirement");
        const QuadRule rule = gauss_hermite_rule(scheme.nodes);
        double acc = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            acc += rule.weights[j] * eval(a.poly, rule.nodes[j]) * eval(b.poly, rule.nodes[j]);
        return std::sqrt((a.amp2 * b.amp2).to_double()) / std::sqrt(M_PI) * acc;
    }

    if (scheme.kind != QuadratureKind::gauss_laguerre)
        throw SchemeMismatch("laguerre states require the Laguerre weight");
    const Rational g = a.sigma + b.sigma - Rational(1, 2);
    if (scheme.weight_exponent != g)
        throw SchemeMismatch("scheme weight exponent " + scheme.weight_exponent.str() +
                             " does not match combined state exponent " + g.str());
    if (g <= Rational(-1))
        throw SchemeMismatch("combined exponent " + g.str() + " is not integrable");
    if (scheme.nodes < required_nodes(a, b))
        throw SchemeMismatch("node count below polynomial exactness requirement");

    const QuadRule rule = gauss_laguerre_rule(g.to_double(), scheme.nodes);
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        acc += rule.weights[j] * eval(a.poly, rule.nodes[j]) * eval(b.poly, rule.nodes[j]);
    // Half-line Jacobian: du = dv/(sqrt(S) sqrt(v)); N0^2/sqrt(S) = 1/2, and the
    // two half-lines double it (equal parity).
    const double norm = std::sqrt((a.amp2 * b.amp2).to_double() /
                                  (gamma_to_double(a.gamma_base) * gamma_to_double(b.gamma_base)));
    return norm * acc;
}

std::vector<double> fd_spectrum(const PotentialForm& potential, const HierarchySpec& spec,
                                const Grid& grid, int count) {
    spec.validate();
    grid.validate(spec);
    if (count < 1) throw ConfigError("requested eigenvalue count must be positive");
    if (count > grid.points / 4)
        throw ConfigError("requested eigenvalue count exceeds points/4");
    const double h = grid.spacing();
    const double u0 = spec.center.to_double();

    if (potential.invsq_coeff == Rational(0)) {
        const int n = grid.points - 2;   // interior nodes, Dirichlet ends
        std::vector<double> diag(static_cast<std::size_t>(n));
        std::vector<double> off(static_cast<std::size_t>(n - 1), -1.0 / (h * h));
        for (int i = 0; i < n; ++i)
            diag[static_cast<std::size_t>(i)] =
                2.0 / (h * h) + potential.eval(grid.u_min + (i + 1) * h);
        auto ev = tridiag_eigenvalues(std::move(diag), std::move(off));
        ev.resize(static_cast<std::size_t>(count));
        return ev;
    }

    // Singular center: solve one half-line problem per parity class, with the
    // class edge exponent from the indicial equation m(m-1) = invsq_coeff.
    const double q = potential.invsq_coeff.to_double();
    const double disc = std::sqrt(1.0 + 4.0 * q);
    const double m_even = 0.5 * (1.0 - disc);
    const double m_odd = 0.5 * (1.0 + disc);
    const double extent = std::min(grid.u_max - u0, u0 - grid.u_min);
    const double band = grid.excluded_center_halfwidth;

    std::vector<double> even_ev, odd_ev;
    if (band > 0.0) {
        even_ev = half_line_banded(potential, m_even, band, extent, h);
        odd_ev = half_line_banded(potential, m_odd, band, extent, h);
    } else {
        even_ev = half_line_weighted(potential, m_even, extent, h);
        odd_ev = half_line_weighted(potential, m_odd, extent, h);
    }
    std::vector<double> merged;
    merged.reserve(even_ev.size() + odd_ev.size());
    std::merge(even_ev.begin(), even_ev.end(), odd_ev.begin(), odd_ev.end(),
               std::back_inserter(merged));
    merged.resize(static_cast<std::size_t>(count));
    return merged;
}

double intertwine_residual(const HierarchySpec& spec, int level,
                           const std::vector<QuasiState>& probes, const Grid& grid,
                           double gap_perturbation) {
    spec.validate();
    grid.validate(spec);
    if (level < 1 || level > spec.period) throw ConfigError("level outside 1..N");

    const Hierarchy built = build_hierarchy(spec);
    // A-side superpotential, optionally with a deliberately perturbed first gap.
    Superpotential w = built.superpotentials[static_cast<std::size_t>(level - 1)];
    if (gap_perturbation != 0.0) {
        HierarchySpec perturbed = spec;
        perturbed.gaps[0] += rational_from_double(gap_perturbation);
        w = build_hierarchy(perturbed).superpotentials[static_cast<std::size_t>(level - 1)];
    }
    // H_{level+1}; for level = N the chain wraps onto H_1 shifted by the gap sum.
    PotentialForm v_next;
    if (level < spec.period) {
        v_next = built.potentials[static_cast<std::size_t>(level)];
    } else {
        v_next = built.potentials[0];
        v_next.const_term += spec.gap_sum();
    }
    const double e0 = energy_level(spec, level, 0).to_double();

    const double fd_h = 2e-3;
    double band = grid.excluded_center_halfwidth;
    if (band <= 0.0)
        band = spec.period == 2 && spec.alpha() != Rational(0) ? 0.3 : 8.0 * fd_h;
    const double u0 = spec.center.to_double();
    const double h = grid.spacing();

    double worst = 0.0;
    for (const auto& probe : probes) {
        if (probe.is_zero()) continue;
        auto psi = [&](double x) { return wavefunction_eval(probe, spec, x); };
        auto a_dag = [&](double x) {
            const double d1 = (psi(x - 2 * fd_h) - 8 * psi(x - fd_h) + 8 * psi(x + fd_h) -
                               psi(x + 2 * fd_h)) /
                              (12 * fd_h);
            return -d1 + w.eval(x) * psi(x);
        };
        double probe_scale = 0.0;
        double probe_worst = 0.0;
        for (int i = 0; i < grid.points; ++i) {
            const double u = grid.u_min + i * h;
            if (std::abs(u - u0) < band + 4 * fd_h) continue;
            if (u - 2 * fd_h < grid.u_min || u + 2 * fd_h > grid.u_max) continue;
            const double d2 = (-psi(u - 2 * fd_h) + 16 * psi(u - fd_h) - 30 * psi(u) +
                               16 * psi(u + fd_h) - psi(u + 2 * fd_h)) /
                              (12 * fd_h * fd_h);
            const double lhs = -d2 + (v_next.eval(u) - e0) * psi(u);
            const double da = (a_dag(u - 2 * fd_h) - 8 * a_dag(u - fd_h) +
                               8 * a_dag(u + fd_h) - a_dag(u + 2 * fd_h)) /
                              (12 * fd_h);
            const double rhs = da + w.eval(u) * a_dag(u);
            probe_scale = std::max(probe_scale, std::abs(lhs));
            probe_worst = std::max(probe_worst, std::abs(lhs - rhs));
        }
        if (probe_scale > 0.0) worst = std::max(worst, probe_worst / probe_scale);
    }
    return worst;
}

int sturm_root_count(const PolyQ& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw ConfigError("root counting of the zero polynomial");
    if (p.degree() == 0) return 0;
    if (!(lo < hi)) return 0;
    const auto chain = sturm_chain(p);
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

NodeCount count_nodes(const QuasiState& state, const HierarchySpec& spec,
                      std::pair<double, double> domain) {
    spec.validate();
    NodeCount out;
    if (state.is_zero()) return out;

    if (state.form == StateForm::gaussian_u) {
        const double omega = spec.gaps[0].to_double() / 2.0;
        const double u0 = spec.center.to_double();
        const Rational v_lo = rational_from_double(std::sqrt(omega) * (domain.first - u0));
        const Rational v_hi = rational_from_double(std::sqrt(omega) * (domain.second - u0));
        out.zeros = sturm_root_count(state.poly, v_lo, v_hi);
        const unsigned low = state.poly.coeff(0) == Rational(0) ? state.poly.low_zero_count() : 0;
        out.exponent = Rational(static_cast<long>(low));
        out.center = low > 0 ? CenterBehavior::vanishes_power : CenterBehavior::finite_nonzero;
        return out;
    }

    const double u0 = spec.center.to_double();
    const double qfac = spec.gap_sum().to_double() / 4.0;
    const double d_left = std::abs(domain.first - u0);
    const double d_right = std::abs(domain.second - u0);
    const Rational v_left = rational_from_double(qfac * d_left * d_left);
    const Rational v_right = rational_from_double(qfac * d_right * d_right);
    out.zeros = sturm_root_count(state.poly, Rational(0), v_left) +
                sturm_root_count(state.poly, Rational(0), v_right);
    out.exponent = Rational(2) * state.sigma;
    const int s = state.sigma.sgn();
    if (s > 0) {
        out.center = CenterBehavior::vanishes_power;
        out.zeros += 1;   // the nonanalytic center zero
    } else if (s == 0) {
        out.center = CenterBehavior::finite_nonzero;
    } else {
        out.center = CenterBehavior::diverges_power;
    }
    return out;
}

} // namespace gapforge
