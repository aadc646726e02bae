#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "gapforge/rational.hpp"

namespace gapforge {

// Dense univariate polynomial with exact rational coefficients,
// coeff(k) multiplying x^k.  The empty coefficient vector is the zero
// polynomial; degree() of zero is -1.  Leading zeros are always trimmed.
class PolyQ {
public:
    PolyQ() = default;
    PolyQ(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
    explicit PolyQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static PolyQ zero() { return PolyQ{}; }
    static PolyQ one() { return PolyQ{Rational(1)}; }
    // coef * x^k
    static PolyQ monomial(unsigned k, const Rational& coef = Rational(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    // Coefficient of x^k; zero beyond the degree.
    Rational coeff(unsigned k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

    // Number of leading (low-order) zero coefficients, i.e. the largest m with
    // x^m dividing the polynomial.  Zero polynomial reports 0.
    unsigned low_zero_count() const;
    // Divide by x^m exactly (requires low_zero_count() >= m).
    PolyQ shift_down(unsigned m) const;
    // Multiply by x^m.
    PolyQ shift_up(unsigned m) const;

    PolyQ& operator+=(const PolyQ& o);
    PolyQ& operator-=(const PolyQ& o);
    PolyQ& operator*=(const PolyQ& o);
    PolyQ& operator*=(const Rational& s);

    friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
    friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
    friend PolyQ operator*(PolyQ a, const PolyQ& b) { return a *= b; }
    friend PolyQ operator*(PolyQ a, const Rational& s) { return a *= s; }
    friend PolyQ operator*(const Rational& s, PolyQ a) { return a *= s; }
    friend PolyQ operator-(const PolyQ& a) { return a * Rational(-1); }

    friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }
    friend bool operator!=(const PolyQ& a, const PolyQ& b) { return !(a == b); }

    // Human-readable form like "x^2 - 1/2 x + 3" for diagnostics.
    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Derivative with respect to the variable.
PolyQ diff(const PolyQ& p);

// Exact evaluation (Horner).
Rational eval(const PolyQ& p, const Rational& x);
// Floating evaluation (Horner); coefficients converted once per call.
double eval(const PolyQ& p, double x);

// p(x) -> p(x^2)
PolyQ substitute_square(const PolyQ& p);

// Euclidean division: returns {quotient, remainder} with
// a == quotient * b + remainder and deg(remainder) < deg(b).
// Throws ConfigError when b is zero.
std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b);

} // namespace gapforge
