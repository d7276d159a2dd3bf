#include "mfzl/classify.hpp"

#include <cmath>
#include <numeric>

namespace mfzl {

namespace bmp = boost::multiprecision;

namespace {

Real two_pow(long e) { return bmp::ldexp(Real(1), static_cast<int>(e)); }

// Coefficient count times log2 H must stay below the information in the values.
bool within_information_bound(size_t coeffs, double log2_h, long rows, long bits) {
    return static_cast<double>(coeffs) * std::max(log2_h, 1.0) <= static_cast<double>(rows * bits) / 2;
}

bool within_height(double log2_h, const RecognitionBounds& b) { return log2_h <= b.log10_h_max * std::log2(10.0); }

long rows_for(const std::vector<Complex>& xs, long bits) {
    Real maxabs = 0, maxim = 0;
    for (const auto& x : xs) {
        maxabs = bmp::max(maxabs, abs(x));
        maxim = bmp::max(maxim, bmp::abs(x.im));
    }
    return maxim > maxabs * two_pow(-bits / 2) ? 2 : 1;
}

// log2 of a bound on the coefficients of prod (X - j(tau_Q)) over the reduced forms Q,
// from |j(tau)| <= e^{2 pi Im tau} + 2079 and |coefficient| <= 2^h prod max(1, |j|).
double class_polynomial_log2_height(long D, const std::vector<QuadraticForm>& classes) {
    const double pi = std::acos(-1.0);
    double total = static_cast<double>(classes.size());
    for (const auto& f : classes) {
        const double im = std::sqrt(static_cast<double>(-D)) / (2.0 * static_cast<double>(f.a));
        total += std::log2(std::exp(2 * pi * im) + 2079.0);
    }
    return total;
}

}  // namespace

std::optional<QuadraticForm> recognize_quadratic(const Complex& z, const RecognitionBounds& bounds) {
    if (z.im <= 0) throw std::invalid_argument("point must lie in the upper half-plane");
    PrecisionScope scope(bounds.bits + 32);
    const std::vector<Complex> xs{z * z, z, Complex(Real(1))};
    const auto rel = integer_relation(xs, bounds.bits);
    if (!rel) return std::nullopt;
    if (rel->relative_residual > two_pow(-bounds.bits / 2)) return std::nullopt;
    if (!within_information_bound(3, rel->log2_height, rows_for(xs, bounds.bits), bounds.bits)) return std::nullopt;
    if (!within_height(rel->log2_height, bounds)) return std::nullopt;
    Integer a = rel->coeffs[0], b = rel->coeffs[1], c = rel->coeffs[2];
    if (a == 0) return std::nullopt;
    if (a < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    a /= g;
    b /= g;
    c /= g;
    if (b * b - 4 * a * c >= 0) return std::nullopt;
    if (!a.fits_slong_p() || !b.fits_slong_p() || !c.fits_slong_p()) return std::nullopt;
    const Integer D = b * b - 4 * a * c;
    if (!D.fits_slong_p() || abs(D) > Integer(1) << 62) return std::nullopt;
    return QuadraticForm{a.get_si(), b.get_si(), c.get_si()};
}

std::optional<JRecognition> recognize_algebraic_integer(const Complex& x, const RecognitionBounds& bounds,
                                                        long only_degree) {
    PrecisionScope scope(bounds.bits + 32);
    const Real scale = bmp::max(Real(1), abs(x));
    // Integer snap.
    if (only_degree == 0 || only_degree == 1) {
        const Integer n = round_to_integer(x.re);
        const Real err = abs(x - Complex(to_real(n)));
        if (err < two_pow(-bounds.bits / 2) * scale && within_height(log2_abs(to_real(n)), bounds))
            return JRecognition{{-n, Integer(1)}};
        if (only_degree == 1) return std::nullopt;
    }
    const long dlo = only_degree ? only_degree : 2;
    const long dhi = only_degree ? only_degree : bounds.d_max;
    for (long d = dlo; d <= dhi; ++d) {
        std::vector<Complex> xs{Complex(Real(1))};
        for (long m = 1; m <= d; ++m) xs.push_back(xs.back() * x);
        const auto rel = integer_relation(xs, bounds.bits);
        if (!rel) continue;
        if (rel->relative_residual > two_pow(-bounds.bits / 2)) continue;
        if (!within_information_bound(static_cast<size_t>(d + 1), rel->log2_height, rows_for(xs, bounds.bits),
                                      bounds.bits))
            continue;
        if (!within_height(rel->log2_height, bounds)) continue;
        IntVector p = rel->coeffs;
        if (abs(p.back()) != 1) continue;
        if (p.back() < 0)
            for (auto& c : p) c = -c;
        return JRecognition{p};
    }
    return std::nullopt;
}

std::optional<JRecognition> recognize_j_integer(const Complex& z, const RecognitionBounds& bounds) {
    PrecisionScope scope(bounds.bits + 64);
    EvalContext ctx;
    ctx.precision = bounds.bits + 32;
    return recognize_algebraic_integer(eval_j(z, ctx), bounds);
}

std::string Verdict::label() const {
    switch (kind) {
        case Kind::CM: return "CM(" + std::to_string(D) + ")";
        case Kind::TranscendentalCandidate: return "TranscendentalCandidate";
        case Kind::Unresolved: return "Unresolved";
    }
    return "?";
}

Verdict classify_point(const Complex& z, const RecognitionBounds& bounds) {
    Verdict v;
    v.bounds = bounds;
    PrecisionScope scope(bounds.bits + 64);
    EvalContext ctx;
    ctx.precision = bounds.bits + 32;
    v.j_value = eval_j(z, ctx);
    const auto form = recognize_quadratic(z, bounds);
    if (form) {
        v.form = *form;
        v.D = form->discriminant();
        CMPoint exact;
        exact.form = *form;
        const Real az = abs(Complex(Real(form->a)) * z * z + Complex(Real(form->b)) * z + Complex(Real(form->c)));
        if (az > bmp::pow(Real(10), Real(-bounds.bits) / 4) * bmp::max(Real(1), Real(form->a) * abs(z) * abs(z))) {
            v.kind = Verdict::Kind::Unresolved;
            v.reason = "quadratic relation does not hold to the required accuracy";
            return v;
        }
        if (-v.D > 10'000'000) {
            v.kind = Verdict::Kind::CM;
            v.reason = "discriminant too large for a class-number computation; j was not checked";
            return v;
        }
        const std::vector<QuadraticForm> classes = reduced_forms(v.D);
        v.class_number = static_cast<long>(classes.size());
        if (v.class_number > bounds.d_max) {
            v.kind = Verdict::Kind::CM;
            v.reason = "class number " + std::to_string(v.class_number) +
                       " exceeds the degree bound; j was not checked";
            return v;
        }
        const double log2_h = class_polynomial_log2_height(v.D, classes);
        if (!within_height(log2_h, bounds)) {
            v.kind = Verdict::Kind::CM;
            v.reason = "the minimal polynomial of j exceeds the height bound; j was not checked";
            return v;
        }
        const long h = v.class_number;
        const long fine_bits = std::max<long>(bounds.bits + 128, static_cast<long>(2 * (h + 1) * (log2_h + 16)) + 64);
        PrecisionScope boosted(fine_bits + 64);
        EvalContext bctx;
        bctx.precision = fine_bits + 32;
        const Complex je = eval_j(exact.value(), bctx);
        RecognitionBounds fine = bounds;
        fine.bits = fine_bits;
        v.j_minpoly = recognize_algebraic_integer(je, fine, h);
        if (!v.j_minpoly) {
            v.kind = Verdict::Kind::Unresolved;
            v.reason = "quadratic relation found but j is not recognized as an algebraic integer of degree h(D)";
            return v;
        }
        v.kind = Verdict::Kind::CM;
        v.reason = "quadratic relation and a monic minimal polynomial of j of degree h(D)";
        return v;
    }
    v.j_minpoly = recognize_algebraic_integer(v.j_value, bounds);
    if (v.j_minpoly) {
        v.kind = Verdict::Kind::Unresolved;
        v.reason = "j is recognized as an algebraic integer but no quadratic relation was found";
        return v;
    }
    v.kind = Verdict::Kind::TranscendentalCandidate;
    v.reason = "no quadratic relation and no algebraic-integer relation for j within the bounds";
    return v;
}

Verdict classify_zero(const ZeroRecord& rec, const RecognitionBounds& bounds) { return classify_point(rec.z, bounds); }

IntegralityCertificate integrality_certificate(const QSeries& f, long k) {
    IntegralityCertificate c;
    c.polynomial = extract_pf(f, k);
    c.report = integrality_report(c.polynomial);
    return c;
}

}  // namespace mfzl
