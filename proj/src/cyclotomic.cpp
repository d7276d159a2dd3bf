#include "mfzl/cyclotomic.hpp"

#include <stdexcept>

namespace mfzl {

Cyclotomic::Cyclotomic(Rational r, int p) : p_(p) {
    if (p < 0 || p == 1) throw std::invalid_argument("cyclotomic order must be 0 or a prime");
    const size_t dim = p == 0 ? 1 : static_cast<size_t>(p - 1);
    c_.assign(dim, Rational(0));
    c_[0] = std::move(r);
}

Cyclotomic Cyclotomic::root_power(int p, long e, const Rational& c) {
    if (p < 2) throw std::invalid_argument("cyclotomic order must be a prime");
    Cyclotomic out(Rational(0), p);
    long r = e % p;
    if (r < 0) r += p;
    if (r < p - 1) {
        out.c_[static_cast<size_t>(r)] = c;
    } else {
        // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
        for (auto& x : out.c_) x = -c;
    }
    return out;
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
    return c_.empty() ? Rational(0) : c_[0];
}

Cyclotomic Cyclotomic::lifted(int p) const {
    if (p_ == p || p == 0) return *this;
    if (p_ != 0) throw std::invalid_argument("mixing cyclotomic fields of different orders");
    Cyclotomic out(c_.empty() ? Rational(0) : c_[0], p);
    return out;
}

int Cyclotomic::common_order(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.p_ == 0) return b.p_;
    if (b.p_ == 0 || a.p_ == b.p_) return a.p_;
    throw std::invalid_argument("mixing cyclotomic fields of different orders");
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    const int p = common_order(*this, o);
    if (c_.empty()) *this = Cyclotomic(Rational(0), p);
    *this = lifted(p);
    const Cyclotomic rhs = o.c_.empty() ? Cyclotomic(Rational(0), p) : o.lifted(p);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic operator-(const Cyclotomic& a) {
    Cyclotomic out = a;
    for (auto& x : out.c_) x = -x;
    return out;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    const int p = Cyclotomic::common_order(a, b);
    if (a.c_.empty() || b.c_.empty()) return Cyclotomic();
    if (p == 0) return Cyclotomic(a.c_[0] * b.c_[0]);
    const Cyclotomic x = a.lifted(p);
    const Cyclotomic y = b.lifted(p);
    // Multiply modulo x^p - 1, then fold zeta^{p-1}.
    std::vector<Rational> prod(static_cast<size_t>(p), Rational(0));
    for (size_t i = 0; i < x.c_.size(); ++i) {
        if (sgn(x.c_[i]) == 0) continue;
        for (size_t j = 0; j < y.c_.size(); ++j)
            prod[(i + j) % static_cast<size_t>(p)] += x.c_[i] * y.c_[j];
    }
    Cyclotomic out(Rational(0), p);
    const Rational top = prod[static_cast<size_t>(p - 1)];
    for (size_t i = 0; i + 1 < prod.size(); ++i) out.c_[i] = prod[i] - top;
    return out;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    const Cyclotomic d = a - b;
    return d.is_zero();
}

CycloSeries to_cyclo(const QSeries& s) {
    return s.map_coeffs([](const Rational& c) { return Cyclotomic(c); });
}

}  // namespace mfzl
