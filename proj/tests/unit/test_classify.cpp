#include "doctest.h"
#include "mfzl/classify.hpp"

#include <random>

using namespace mfzl;

namespace {

std::vector<Integer> zs(std::initializer_list<long> v) {
    std::vector<Integer> r;
    for (long x : v) r.emplace_back(x);
    return r;
}

}  // namespace

TEST_CASE("LLL reduces a textbook basis") {
    // Basis from Cohen's worked example family; the reduced first vector is short.
    std::vector<IntVector> b{zs({1, 1, 1}), zs({-1, 0, 2}), zs({3, 5, 6})};
    const auto r = lll_reduce(b);
    Integer n0 = 0;
    for (const auto& x : r[0]) n0 += x * x;
    CHECK(n0 <= 2);
    // Determinant is preserved up to sign.
    auto det3 = [](const std::vector<IntVector>& m) -> Integer {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    CHECK(abs(det3(r)) == abs(det3(b)));
}

TEST_CASE("integer relation for sqrt 2") {
    PrecisionScope scope(200);
    const Real s = boost::multiprecision::sqrt(Real(2));
    const auto rel = integer_relation({Complex(Real(1)), Complex(s), Complex(s * s)}, 180);
    REQUIRE(rel);
    Integer sgn_fix = rel->coeffs[2] < 0 ? -1 : 1;
    CHECK(rel->coeffs[0] * sgn_fix == -2);
    CHECK(rel->coeffs[1] == 0);
    CHECK(rel->coeffs[2] * sgn_fix == 1);
}

TEST_CASE("quadratic recognition") {
    PrecisionScope scope(300);
    auto f = recognize_quadratic(Complex(Real(0), Real(1)));
    REQUIRE(f);
    CHECK(*f == QuadraticForm{1, 0, 1});
    CMPoint p7;
    p7.form = {2, 1, 1};
    f = recognize_quadratic(p7.value());
    REQUIRE(f);
    CHECK(*f == QuadraticForm{2, 1, 1});
    CHECK(f->discriminant() == -7);
    // 0.1 + 0.5 i is itself a CM point: a root of 50 x^2 - 10 x + 13.
    f = recognize_quadratic(Complex(Real("0.1"), Real("0.5")));
    REQUIRE(f);
    CHECK(*f == QuadraticForm{50, -10, 13});
    // A point built from pi and e has no small quadratic relation.
    const Complex generic(boost::multiprecision::exp(Real(1)) / 10, pi() / 5);
    CHECK_FALSE(recognize_quadratic(generic));
}

TEST_CASE("brute-force absence of small quadratic relations for a generic point") {
    PrecisionScope scope(300);
    const Complex z(boost::multiprecision::exp(Real(1)) / 10, pi() / 5);
    const Complex z2 = z * z;
    long hits = 0;
    for (long a = 1; a <= 60; ++a)
        for (long b = -60; b <= 60; ++b)
            for (long c = -60; c <= 60; ++c) {
                const Complex v = Complex(Real(a)) * z2 + Complex(Real(b)) * z + Complex(Real(c));
                if (abs(v) < Real("1e-20")) ++hits;
            }
    CHECK(hits == 0);
}

TEST_CASE("j recognition") {
    PrecisionScope scope(300);
    auto r = recognize_j_integer(Complex(Real(0), Real(1)));
    REQUIRE(r);
    CHECK(r->is_integer());
    CHECK(r->integer_value() == 1728);
    r = recognize_j_integer(galois_rep(-3).value());
    REQUIRE(r);
    CHECK(r->integer_value() == 0);
    r = recognize_j_integer(galois_rep(-8).value());
    REQUIRE(r);
    CHECK(r->integer_value() == 8000);
    // D = -15: j is a root of x^2 + 191025 x - 121287375.
    r = recognize_j_integer(galois_rep(-15).value());
    REQUIRE(r);
    CHECK(r->minpoly == zs({-121287375, 191025, 1}));
}

TEST_CASE("classification of points") {
    PrecisionScope scope(300);
    auto v = classify_point(galois_rep(-3).value());
    CHECK(v.kind == Verdict::Kind::CM);
    CHECK(v.D == -3);
    CHECK(v.label() == "CM(-3)");
    CMPoint p;
    p.form = {2, 1, 1};
    v = classify_point(p.value());
    CHECK(v.kind == Verdict::Kind::CM);
    CHECK(v.D == -7);
    v = classify_point(galois_rep(-15).value());
    CHECK(v.kind == Verdict::Kind::CM);
    CHECK(v.class_number == 2);
    const Complex generic(boost::multiprecision::exp(Real(1)) / 10, pi() / 5 + 1);
    v = classify_point(generic);
    CHECK(v.kind == Verdict::Kind::TranscendentalCandidate);
    CHECK(v.bounds.d_max == 8);
}

TEST_CASE("random points are never reported as CM") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PrecisionScope scope(300);
    long transcendental = 0;
    const long trials = 25;
    for (long i = 0; i < trials; ++i) {
        // Mix a random double with pi and log 2 so that the coordinates are not short rationals.
        const Real re = Real(u(rng) - 0.5) * pi() / 3;
        const Real im = Real(1) + Real(u(rng)) * boost::multiprecision::log(Real(2));
        const Verdict v = classify_point(Complex(re, im));
        if (v.kind == Verdict::Kind::TranscendentalCandidate) ++transcendental;
    }
    CHECK(transcendental == trials);
}

TEST_CASE("zeros of E4 and E12 on the arc are classified") {
    const FormEvaluator e4(FormExpr::eisenstein(4));
    const auto z4 = find_zeros_on_arc(e4, Locus::A, 32);
    REQUIRE(z4.size() == 1);
    CHECK(classify_zero(z4[0]).label() == "CM(-3)");
    const FormEvaluator e12(FormExpr::eisenstein(12));
    const auto z12 = find_zeros_on_arc(e12, Locus::A, 32);
    REQUIRE(z12.size() == 1);
    CHECK(classify_zero(z12[0]).kind == Verdict::Kind::TranscendentalCandidate);
}

TEST_CASE("integrality certificates") {
    const QSeries guaranteed = expand(FormExpr::delta() * (FormExpr::j() - FormExpr::constant(Rational(1, 2))), 30);
    auto c = integrality_certificate(guaranteed, 12);
    CHECK(c.report.verdict == IntegralityReport::Verdict::Guaranteed);
    const QSeries half =
        expand(scale(Rational(1, 2), FormExpr::delta() * (FormExpr::j() - FormExpr::constant(Rational(1728)))), 30);
    c = integrality_certificate(half, 12);
    CHECK(c.report.verdict == IntegralityReport::Verdict::HypothesesNotMet);
    c = integrality_certificate(delta(20), 12);
    CHECK(c.report.verdict == IntegralityReport::Verdict::AllIntegral);
}

TEST_CASE("every enumerated CM point is recognized with its discriminant") {
    PrecisionScope scope(300);
    std::vector<CMPoint> corpus = enumerate_arc_A();
    for (long p : {2L, 3L})
        for (const auto& pt : enumerate_fricke_arc(p)) corpus.push_back(pt);
    for (const auto& pt : enumerate_line_L(100000, Rational(2))) corpus.push_back(pt);
    for (const auto& pt : enumerate_line_R(100000, Rational(3))) corpus.push_back(pt);
    for (long p : {2L, 3L, 5L})
        for (const auto& pt : coset_exception_set(p)) corpus.push_back(pt);
    for (const auto& pt : corpus) {
        CAPTURE(pt.surd());
        const Verdict v = classify_point(pt.value());
        CHECK(v.kind == Verdict::Kind::CM);
        CHECK(v.D == pt.D());
        CHECK((v.D % 4 == 0 || (v.D % 4 + 4) % 4 == 1));
    }
}

TEST_CASE("CM points beyond the j-recognition bounds keep their quadratic verdict") {
    PrecisionScope scope(300);
    CMPoint p;
    p.form = {50, -10, 13};  // 0.1 + 0.5 i, D = -2500, h(D) = 10 > d_max
    const Complex z(Real(1) / 10, Real(1) / 2);
    CHECK(abs(z - p.value()) < Real("1e-80"));
    const Verdict v = classify_point(z);
    CHECK(v.kind == Verdict::Kind::CM);
    CHECK(v.D == -2500);
    CHECK(v.class_number == 10);
    CHECK(!v.j_minpoly);
    CHECK(v.reason.find("not checked") != std::string::npos);

    RecognitionBounds tight;
    tight.d_max = 12;
    tight.log10_h_max = 10;
    CMPoint q;
    q.form = {4, 0, 5};
    const Verdict w = classify_point(q.value(), tight);
    CHECK(w.kind == Verdict::Kind::CM);
    CHECK(!w.j_minpoly);
}
