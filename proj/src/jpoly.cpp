#include "mfzl/jpoly.hpp"

#include "mfzl/forms.hpp"

#include <numeric>
#include <sstream>

namespace mfzl {

namespace {

bool is_integer(const Rational& q) { return q.get_den() == 1; }

void require_integral_exponents(const QSeries& s, const char* what) {
    if (s.ramification() != 1) throw NotPolynomial(std::string(what) + " has fractional exponents");
}

}  // namespace

std::string JPolynomial::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (long m = degree(); m >= 0; --m) {
        const Rational& c = coeffs[static_cast<size_t>(m)];
        if (sgn(c) == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = mag == 1;
        if (m == 0 || !unit) os << mag.get_str();
        if (m > 0) {
            if (!unit) os << "*";
            os << "X";
            if (m > 1) os << "^" << m;
        }
    }
    if (first) os << "0";
    return os.str();
}

Rational JPolynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

JPolynomial jpoly_of_weight_zero(const QSeries& g) {
    require_integral_exponents(g, "weight-zero series");
    if (!g.exact() && g.truncation_index() < 1)
        throw InsufficientTruncation("the constant term of the series is not known");
    if (g.is_zero()) throw NotPolynomial("the zero series has no nonzero polynomial");
    const long v = g.valuation_index();
    if (v > 0) throw NotPolynomial("series vanishes at infinity; no polynomial in j matches it");
    const long d = -v;
    const long T = g.exact() ? std::max(1L, g.end_index()) : g.truncation_index();
    const QSeries j = jfunction(T + std::max(0L, d - 1));

    std::vector<QSeries> powers{QSeries::constant(Rational(1))};
    for (long m = 1; m <= d; ++m) powers.push_back(powers.back() * j);

    JPolynomial P;
    P.coeffs.assign(static_cast<size_t>(d + 1), Rational(0));
    QSeries residual = g.exact() ? g.truncated_index(T) : g;
    for (long m = d; m >= 0; --m) {
        const Rational c = residual.coeff_index(-m);
        P.coeffs[static_cast<size_t>(m)] = c;
        if (sgn(c) != 0) residual = residual - c * powers[static_cast<size_t>(m)];
    }
    if (!residual.is_zero()) {
        std::ostringstream os;
        os << "residual after elimination is nonzero at q^" << residual.start_index();
        throw NotPolynomial(os.str());
    }
    // Re-substitution certificate.
    QSeries check = QSeries::zero_to(T);
    for (long m = 0; m <= d; ++m) check = check + P.coeffs[static_cast<size_t>(m)] * powers[static_cast<size_t>(m)];
    const QSeries diff = (check - g).truncated_index(T);
    if (!diff.is_zero()) throw NotPolynomial("re-substitution does not reproduce the series");
    return P;
}

long required_truncation(long k, long n0) { return n0 + (k - 12 * n0) + 1; }

JPolynomial extract_pf(const QSeries& f, long k) {
    require_integral_exponents(f, "form");
    if (k % 2 != 0) throw std::invalid_argument("weight must be even");
    if (f.is_zero()) throw NotPolynomial("the zero form has no associated polynomial");
    const long n0 = f.valuation_index();
    const long d = k - 12 * n0;
    if (!f.exact() && f.truncation_index() < required_truncation(k, n0)) {
        std::ostringstream os;
        os << "truncation " << f.truncation_index() << " is below the required " << required_truncation(k, n0);
        throw InsufficientTruncation(os.str());
    }
    const long Nf = f.exact() ? required_truncation(k, n0) : f.truncation_index();
    const QSeries f12 = pow(f.truncated_index(Nf), 12);
    const long M = Nf + 2 + std::max(0L, -n0);
    QSeries g;
    if (k > 0)
        g = f12 / pow(delta(M), k);
    else if (k < 0)
        g = f12 * pow(delta(M), -k);
    else
        g = f12;
    if (d < 0) throw NotPolynomial("f^12 / Delta^k vanishes at infinity");
    JPolynomial P = jpoly_of_weight_zero(g);
    P.weight = k;
    P.valuation = n0;
    return P;
}

JPolynomial reduced_jpoly(const QSeries& f, long k) {
    if (k % 12 != 0) throw std::invalid_argument("reduced polynomial needs 12 | k");
    require_integral_exponents(f, "form");
    if (f.is_zero()) throw NotPolynomial("the zero form has no associated polynomial");
    const long n0 = f.valuation_index();
    const long m = k / 12;
    const long Nf = f.exact() ? std::max({m + 1, n0 + 1, 1L}) : f.truncation_index();
    const QSeries fs = f.truncated_index(Nf);
    const long M = fs.truncation_index() + 2 + std::max(0L, -n0) + std::abs(m);
    QSeries g;
    if (m > 0)
        g = fs / pow(delta(M), m);
    else if (m < 0)
        g = fs * pow(delta(M), -m);
    else
        g = fs;
    JPolynomial P = jpoly_of_weight_zero(g);
    P.weight = k;
    P.valuation = n0;
    return P;
}

QSeries substitute_j(const JPolynomial& P, long N) {
    const QSeries j = jfunction(N + std::max(0L, P.degree() - 1));
    QSeries acc = QSeries::zero_to(N);
    for (long m = P.degree(); m >= 0; --m) acc = acc * j + QSeries::constant(P.coeffs[static_cast<size_t>(m)]);
    return acc.truncated_index(N);
}

Complex evaluate_pf(const JPolynomial& P, const Complex& x) {
    Complex acc;
    for (auto it = P.coeffs.rbegin(); it != P.coeffs.rend(); ++it) acc = acc * x + Complex(to_real(*it));
    return acc;
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<Rational> poly_pow(const std::vector<Rational>& a, long n) {
    std::vector<Rational> r{Rational(1)};
    for (long i = 0; i < n; ++i) r = poly_mul(r, a);
    return r;
}

std::string IntegralityReport::verdict_text() const {
    switch (verdict) {
        case Verdict::Guaranteed: return "transcendental zero guaranteed";
        case Verdict::AllIntegral: return "all-integral: no transcendental zero is forced";
        case Verdict::HypothesesNotMet: return "hypotheses not met";
    }
    return "";
}

IntegralityReport integrality_report(const JPolynomial& P) {
    IntegralityReport r;
    r.leading_is_integer = is_integer(P.leading());
    r.leading_is_unit = r.leading_is_integer && abs(P.leading()) == 1;
    for (long m = 0; m <= P.degree(); ++m)
        if (!is_integer(P.coeffs[static_cast<size_t>(m)])) r.offending_indices.push_back(m);
    r.all_integral = r.offending_indices.empty();
    if (r.all_integral)
        r.verdict = IntegralityReport::Verdict::AllIntegral;
    else if (r.leading_is_integer)
        r.verdict = IntegralityReport::Verdict::Guaranteed;
    else
        r.verdict = IntegralityReport::Verdict::HypothesesNotMet;
    return r;
}

Equivalence equivalent(const QSeries& f, long k1, const QSeries& g, long k2) {
    require_integral_exponents(f, "first form");
    require_integral_exponents(g, "second form");
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("equivalence needs nonzero forms");
    Equivalence out;
    if (static_cast<__int128>(k1) * k2 < 0) return out;
    const long gg = std::gcd(std::abs(k1), std::abs(k2));
    out.e1 = gg == 0 ? 1 : std::abs(k2) / gg;
    out.e2 = gg == 0 ? 1 : std::abs(k1) / gg;
    if (out.e2 == 0) out.e1 = 1;
    if (out.e1 == 0) out.e2 = 1;
    const QSeries F = pow(f, out.e1);
    const QSeries G = pow(g, out.e2);
    const long T = std::min(F.truncation_index(), G.truncation_index());
    const long v = std::min(F.valuation_index(), G.valuation_index());
    if (T < QSeries::kExact && T - v < 9) throw InsufficientTruncation("fewer than 8 known terms past the leading one");
    if (F.valuation_index() != G.valuation_index()) return out;
    const Rational lambda = F.leading_coeff() / G.leading_coeff();
    const QSeries diff = F - lambda * G;
    if (!diff.is_zero()) return out;
    out.equivalent = true;
    out.lambda = lambda;
    return out;
}

}  // namespace mfzl
