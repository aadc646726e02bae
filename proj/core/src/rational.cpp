#include "gapforge/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "gapforge/errors.hpp"

namespace gapforge {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw ConfigError("rational with zero denominator");
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.v_ == 0) throw ConfigError("rational division by zero");
    v_ /= o.v_;
    return *this;
}

std::optional<Rational> Rational::parse(const std::string& text) {
    // strict grammar: [+-]digits[/digits]; GMP's own parser is laxer than the
    // file formats allow (it ignores whitespace), so validate first.
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') ++i;
    std::size_t num_digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) { ++i; ++num_digits; }
    if (num_digits == 0) return std::nullopt;
    if (i < text.size()) {
        if (text[i] != '/') return std::nullopt;
        ++i;
        std::size_t den_digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) { ++i; ++den_digits; }
        if (den_digits == 0 || i != text.size()) return std::nullopt;
    }
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return Rational(q);
}

Rational Rational::parse_or_throw(const std::string& text) {
    auto r = parse(text);
    if (!r) throw ConfigError("malformed rational '" + text + "' (expected p or p/q)");
    return *r;
}

std::string Rational::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_;
}

Rational abs(const Rational& r) {
    return r.sgn() < 0 ? -r : r;
}

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(mpq_class(f));
}

Rational rising_factorial(const Rational& base, unsigned k) {
    Rational acc(1);
    Rational term = base;
    for (unsigned j = 0; j < k; ++j) {
        acc *= term;
        term += Rational(1);
    }
    return acc;
}

Rational gamma_shift_ratio(const Rational& base, unsigned k) {
    Rational term = base;
    for (unsigned j = 0; j < k; ++j) {
        if (term.is_nonpositive_integer())
            throw PoleError("gamma pole at " + term.str() + " in shift ratio from base " + base.str());
        term += Rational(1);
    }
    return rising_factorial(base, k);
}

GammaRatio::GammaRatio(Rational b, unsigned s) : base(std::move(b)), shift(s) {
    (void)gamma_shift_ratio(base, shift); // validates; result discarded
}

bool operator==(const GammaRatio& a, const GammaRatio& b) {
    return a.base == b.base && a.shift == b.shift;
}

double gamma_to_double(const Rational& x) {
    if (x.is_nonpositive_integer())
        throw PoleError("gamma pole at " + x.str());
    return std::tgamma(x.to_double());
}

} // namespace gapforge
