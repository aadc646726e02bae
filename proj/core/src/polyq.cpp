#include "gapforge/polyq.hpp"

#include <sstream>

#include "gapforge/errors.hpp"

namespace gapforge {

void PolyQ::trim() {
    while (!c_.empty() && c_.back() == Rational(0)) c_.pop_back();
}

PolyQ PolyQ::monomial(unsigned k, const Rational& coef) {
    if (coef == Rational(0)) return PolyQ{};
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = coef;
    return PolyQ(std::move(c));
}

unsigned PolyQ::low_zero_count() const {
    unsigned m = 0;
    while (m < c_.size() && c_[m] == Rational(0)) ++m;
    return m == c_.size() ? 0 : m;
}

PolyQ PolyQ::shift_down(unsigned m) const {
    if (is_zero()) return PolyQ{};
    if (low_zero_count() < m)
        throw ConfigError("shift_down: polynomial not divisible by x^" + std::to_string(m));
    return PolyQ(std::vector<Rational>(c_.begin() + m, c_.end()));
}

PolyQ PolyQ::shift_up(unsigned m) const {
    if (is_zero()) return PolyQ{};
    std::vector<Rational> c(m, Rational(0));
    c.insert(c.end(), c_.begin(), c_.end());
    return PolyQ(std::move(c));
}

PolyQ& PolyQ::operator+=(const PolyQ& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

PolyQ& PolyQ::operator*=(const PolyQ& o) {
    if (is_zero() || o.is_zero()) { c_.clear(); return *this; }
    std::vector<Rational> out(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] += c_[i] * o.c_[j];
    c_ = std::move(out);
    trim();
    return *this;
}

PolyQ& PolyQ::operator*=(const Rational& s) {
    if (s == Rational(0)) { c_.clear(); return *this; }
    for (auto& ck : c_) ck *= s;
    return *this;
}

std::string PolyQ::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& ck = c_[static_cast<std::size_t>(k)];
        if (ck == Rational(0)) continue;
        Rational mag = abs(ck);
        if (first) {
            if (ck.sgn() < 0) os << "-";
            first = false;
        } else {
            os << (ck.sgn() < 0 ? " - " : " + ");
        }
        const bool unit = (mag == Rational(1));
        if (k == 0 || !unit) os << mag.str();
        if (k > 0) {
            if (!unit) os << " ";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

PolyQ diff(const PolyQ& p) {
    if (p.degree() <= 0) return PolyQ{};
    std::vector<Rational> c(static_cast<std::size_t>(p.degree()));
    for (int k = 1; k <= p.degree(); ++k)
        c[static_cast<std::size_t>(k - 1)] = Rational(k) * p.coeff(static_cast<unsigned>(k));
    return PolyQ(std::move(c));
}

Rational eval(const PolyQ& p, const Rational& x) {
    Rational acc(0);
    for (int k = p.degree(); k >= 0; --k)
        acc = acc * x + p.coeff(static_cast<unsigned>(k));
    return acc;
}

double eval(const PolyQ& p, double x) {
    double acc = 0.0;
    for (int k = p.degree(); k >= 0; --k)
        acc = acc * x + p.coeff(static_cast<unsigned>(k)).to_double();
    return acc;
}

PolyQ substitute_square(const PolyQ& p) {
    std::vector<Rational> c;
    if (p.is_zero()) return PolyQ{};
    c.assign(static_cast<std::size_t>(2 * p.degree() + 1), Rational(0));
    for (int k = 0; k <= p.degree(); ++k)
        c[static_cast<std::size_t>(2 * k)] = p.coeff(static_cast<unsigned>(k));
    return PolyQ(std::move(c));
}

std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b) {
    if (b.is_zero()) throw ConfigError("polynomial division by zero");
    PolyQ rem = a;
    if (a.degree() < b.degree()) return {PolyQ{}, rem};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
    const Rational lead = b.leading();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const unsigned shift = static_cast<unsigned>(rem.degree() - b.degree());
        const Rational factor = rem.leading() / lead;
        q[shift] = factor;
        rem -= b.shift_up(shift) * factor;
    }
    return {PolyQ(std::move(q)), rem};
}

} // namespace gapforge
