#include "mfzl/qseries.hpp"

namespace mfzl {

namespace {

// Inverse of a unit series u (u_0 != 0) to `count` terms.
std::vector<Rational> unit_inverse(const std::vector<Rational>& u, long count) {
    std::vector<Rational> w(static_cast<size_t>(std::max(0L, count)));
    if (count <= 0) return w;
    const Rational inv0 = 1 / u[0];
    w[0] = inv0;
    for (long n = 1; n < count; ++n) {
        Rational acc = 0;
        const long imax = std::min<long>(n, static_cast<long>(u.size()) - 1);
        for (long i = 1; i <= imax; ++i) acc += u[static_cast<size_t>(i)] * w[static_cast<size_t>(n - i)];
        w[static_cast<size_t>(n)] = -acc * inv0;
    }
    return w;
}

}  // namespace

QSeries inverse(const QSeries& a) {
    if (a.is_zero()) throw NonInvertible("series has no nonzero leading coefficient");
    const long v = a.start_index();
    if (a.exact() && a.coeffs().size() == 1)
        return QSeries(a.ramification(), -v, {1 / a.coeffs().front()}, QSeries::kExact);
    if (a.exact())
        throw NonInvertible("inverse of an exact non-monomial series needs a truncation");
    const long count = a.truncation_index() - v;
    return QSeries(a.ramification(), -v, unit_inverse(a.coeffs(), count), a.truncation_index() - 2 * v);
}

QSeries div(const QSeries& a, const QSeries& b) {
    if (b.is_zero()) throw DivisionByZeroSeries("division by a series that vanishes to its truncation");
    const int R = std::lcm(a.ramification(), b.ramification());
    const QSeries x = a.with_ramification(R);
    const QSeries y = b.with_ramification(R);
    const long vb = y.start_index();
    if (y.exact() && y.coeffs().size() == 1) {
        const Rational inv = 1 / y.coeffs().front();
        return QSeries(R, x.start_index() - vb, (inv * x).coeffs(),
                       x.exact() ? QSeries::kExact : x.truncation_index() - vb);
    }
    const long va = x.valuation_index();
    long t = detail::add_index(x.truncation_index(), -vb);
    if (!y.exact()) t = std::min(t, y.truncation_index() - 2 * vb + va);
    if (t >= QSeries::kExact)
        throw DivisionByZeroSeries("quotient of exact series is infinite; truncate first");
    if (x.is_zero()) return QSeries(R, 0, {}, t);
    const long count = t + vb - va;
    const std::vector<Rational> w = unit_inverse(y.coeffs(), count);
    const QSeries winv(R, 0, w, count);
    const QSeries prod = x * winv;
    return QSeries(R, prod.start_index() - vb, prod.coeffs(), t);
}

QSeries operator/(const QSeries& a, const QSeries& b) { return div(a, b); }

Integer sigma(long k, long n) {
    if (k < 0 || n < 1) throw std::invalid_argument("sigma needs k >= 0 and n >= 1");
    Integer total = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        Integer term;
        mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        total += term;
        const long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
            total += term;
        }
    }
    return total;
}

std::vector<Integer> sigma_table(long k, long count) {
    std::vector<Integer> table(static_cast<size_t>(std::max(0L, count)), Integer(0));
    for (long d = 1; d < count; ++d) {
        Integer dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        for (long m = d; m < count; m += d) table[static_cast<size_t>(m)] += dk;
    }
    return table;
}

Rational bernoulli(long k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("bernoulli expects an even index >= 2");
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, B_0 = 1.
    std::vector<Rational> b(static_cast<size_t>(k + 1));
    b[0] = 1;
    for (long m = 1; m <= k; ++m) {
        Rational acc = 0;
        Integer binom = 1;  // C(m+1, j)
        for (long j = 0; j < m; ++j) {
            acc += binom * b[static_cast<size_t>(j)];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        // binom is now C(m+1, m) = m+1.
        b[static_cast<size_t>(m)] = -acc / binom;
    }
    return b[static_cast<size_t>(k)];
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

}  // namespace mfzl
