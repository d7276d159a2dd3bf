#pragma once

// Reduction of a weakly holomorphic form f of weight k to a polynomial in j:
// g_f = f^12 / Delta^k = P_f(j). The polynomial is found by leading-term
// elimination against powers of the j-series and then certified by
// re-substitution up to the known truncation.

#include "mfzl/numeric.hpp"
#include "mfzl/qseries.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mfzl {

struct InsufficientTruncation : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotPolynomial : std::domain_error {
    using std::domain_error::domain_error;
};

struct JPolynomial {
    /// Ascending coefficients c_0 .. c_d with c_d != 0.
    std::vector<Rational> coeffs;
    /// Weight of the source form.
    long weight = 0;
    /// q-valuation of the source form.
    long valuation = 0;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    const Rational& leading() const { return coeffs.back(); }
    /// Human-readable form such as "X^2 - 1728*X + 5".
    std::string to_string() const;
    Rational operator()(const Rational& x) const;
    friend bool operator==(const JPolynomial& a, const JPolynomial& b) { return a.coeffs == b.coeffs; }
};

/// The polynomial P with P(j) = g for a weight-zero series g (ramification 1).
JPolynomial jpoly_of_weight_zero(const QSeries& g);

/// P_f with f^12 / Delta^k = P_f(j).
JPolynomial extract_pf(const QSeries& f, long k);

/// The polynomial Q with f / Delta^{k/12} = Q(j); needs 12 | k. P_f = Q^12.
JPolynomial reduced_jpoly(const QSeries& f, long k);

/// Truncation index of f needed by extract_pf for a form of weight k and valuation n0.
long required_truncation(long k, long n0);

/// P(j-series) up to q^N.
QSeries substitute_j(const JPolynomial& P, long N);

/// Horner evaluation at the working precision.
Complex evaluate_pf(const JPolynomial& P, const Complex& x);

/// Product of polynomials with rational coefficients (ascending).
std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b);
std::vector<Rational> poly_pow(const std::vector<Rational>& a, long n);

struct IntegralityReport {
    enum class Verdict { Guaranteed, AllIntegral, HypothesesNotMet };
    bool leading_is_integer = false;
    bool leading_is_unit = false;
    bool all_integral = false;
    /// Degrees whose coefficient is not an integer.
    std::vector<long> offending_indices;
    Verdict verdict = Verdict::HypothesesNotMet;

    std::string verdict_text() const;
};

/// Leading integer with some non-integral coefficient guarantees a transcendental zero of f.
IntegralityReport integrality_report(const JPolynomial& P);

struct Equivalence {
    bool equivalent = false;
    /// f^{e1} = lambda * g^{e2} when equivalent.
    Rational lambda;
    long e1 = 1;
    long e2 = 1;
};

/// Tests f^{k2/g} = lambda g^{k1/g} with g = gcd(k1, k2); needs 8 known terms past the leading one.
Equivalence equivalent(const QSeries& f, long k1, const QSeries& g, long k2);

}  // namespace mfzl
