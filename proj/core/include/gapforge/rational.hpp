#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>

namespace gapforge {

// Exact rational scalar. Always canonical: lowest terms, positive denominator.
//
// This is a thin veneer over GMP's mpq_class; the wrapper pins down the
// canonicalization and string format ("p/q", or just "p" when q == 1) that the
// rest of the library and the file formats rely on.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(n) {}
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Parses "p", "p/q" or "-p/q" (no spaces). Returns nullopt on malformed
    // input or zero denominator.
    static std::optional<Rational> parse(const std::string& text);
    // Same, but throws ConfigError with the offending text in the message.
    static Rational parse_or_throw(const std::string& text);

    std::string str() const;      // canonical "p/q" / "p" form
    double to_double() const { return v_.get_d(); }

    int sgn() const { return ::sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }
    // True when the value sits on a pole of the gamma function: 0, -1, -2, ...
    bool is_nonpositive_integer() const { return is_integer() && v_ <= 0; }
    // Numerator/denominator as arbitrary-precision integers.
    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class v_;
};

Rational abs(const Rational& r);

// n! as an exact rational.
Rational factorial(unsigned n);

// Rising factorial  base (base+1) ... (base+k-1).  Plain product: factors that
// pass through zero are legitimate here (this is what makes binomials in the
// family parameter polynomial), so no pole screening is done.
Rational rising_factorial(const Rational& base, unsigned k);

// The gamma ratio  G(base+k) / G(base)  collapsed to the same rising
// factorial, but with each factor screened: if any of base, base+1, ...,
// base+k-1 is a nonpositive integer the ratio involves a gamma pole and a
// PoleError is thrown.
Rational gamma_shift_ratio(const Rational& base, unsigned k);

// An unevaluated gamma ratio G(base+shift)/G(base).  Construction validates
// against poles; value() collapses it to an exact Rational.
struct GammaRatio {
    Rational base;
    unsigned shift = 0;

    GammaRatio() = default;
    GammaRatio(Rational b, unsigned s);
    Rational value() const { return gamma_shift_ratio(base, shift); }
};

bool operator==(const GammaRatio& a, const GammaRatio& b);

// G(x) for rational x, evaluated in double precision.  Floating point is
// confined to this single conversion; throws PoleError on nonpositive
// integer x.
double gamma_to_double(const Rational& x);

} // namespace gapforge
