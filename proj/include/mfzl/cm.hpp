#pragma once

// CM points as roots of primitive positive definite binary quadratic forms,
// and the enumerations of the CM points that can occur on the arc A, the
// Fricke arcs A_p, and the vertical lines L (Re z = -1/2) and R (Re z = 0).

#include "mfzl/numeric.hpp"
#include "mfzl/qseries.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfzl {

struct BadDiscriminant : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// a x^2 + b x + c with a > 0 and b^2 - 4ac < 0.
struct QuadraticForm {
    long a = 1;
    long b = 0;
    long c = 1;

    long discriminant() const { return b * b - 4 * a * c; }
    bool primitive() const;
    /// The SL2(Z)-reduced representative: |b| <= a <= c, b >= 0 when |b| = a or a = c.
    QuadraticForm reduced() const;
    bool is_reduced() const;
    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
    friend auto operator<=>(const QuadraticForm&, const QuadraticForm&) = default;
};

/// The principal form of discriminant D: (1, 0, -D/4) or (1, 1, (1-D)/4).
QuadraticForm principal_form(long D);

/// The reduced primitive forms of discriminant D, ordered by a then b.
std::vector<QuadraticForm> reduced_forms(long D);

/// Number of reduced primitive forms of discriminant D.
long class_number(long D);

/// Root (-b + i sqrt|D|)/(2a) of a form, kept exactly.
struct CMPoint {
    QuadraticForm form;
    /// "A", "Ap", "L", "R" or "B" (the exceptional set of the coset product).
    std::string locus;
    /// For points on L and R: the discriminant and the denominator parameter a of i sqrt|D|/(2a).
    long line_disc = 0;
    long line_a = 0;

    long D() const { return form.discriminant(); }
    /// -b / (2a).
    Rational real_part() const;
    long abs_disc() const { return -D(); }
    long two_a() const { return 2 * form.a; }
    /// Numeric value at the working precision.
    Complex value() const;
    /// Exact surd such as "(-1+i*sqrt(7))/4".
    std::string surd() const;
};

/// Galois representative: i sqrt|D|/2 if D = 0 mod 4, (-1 + i sqrt|D|)/2 if D = 1 mod 4.
CMPoint galois_rep(long D);

/// CM points on the arc |z| = 1/sqrt(p) with -1/2 <= Re z <= 0 (p = 1 gives the arc A),
/// keeping the discriminants for which some arc point is equivalent to the Galois representative.
std::vector<CMPoint> enumerate_arc(long p, long d_bound = 100000);
inline std::vector<CMPoint> enumerate_arc_A(long d_bound = 100000) { return enumerate_arc(1, d_bound); }
inline std::vector<CMPoint> enumerate_fricke_arc(long p, long d_bound = 100000) { return enumerate_arc(p, d_bound); }

/// Points -1/2 + i sqrt|D|/(2a), D = 1 mod 4, |D| <= d_bound, 1 <= a <= sqrt(|D|/3),
/// with sqrt|D|/2 < height.
std::vector<CMPoint> enumerate_line_L(long d_bound, const Rational& height);
/// Points i sqrt|D|/(2a), D = 0 mod 4, |D| <= d_bound, 1 <= a <= sqrt|D|/2, with sqrt|D|/2 < height.
std::vector<CMPoint> enumerate_line_R(long d_bound, const Rational& height);

/// The 2p points (i - n)/(n^2 + 1) and (sqrt(3)/2 i - n + 1/2)/(n^2 - n + 1), 0 <= n < p.
std::vector<CMPoint> coset_exception_set(long p);

/// Integer matrix (a b; c d) of determinant 1.
struct Mat2 {
    Integer a = 1, b = 0, c = 0, d = 1;

    friend Mat2 operator*(const Mat2& x, const Mat2& y);
    Complex apply(const Complex& z) const;
    /// c z + d
    Complex automorphy(const Complex& z) const;
    Mat2 inverse() const { return {d, -b, -c, a}; }
    std::string to_string() const;
};

struct Reduction {
    Complex z;
    Mat2 gamma;
};

/// gamma z in the fundamental domain: -1/2 <= Re < 1/2, |z| >= 1, Re <= 0 on the unit circle.
Reduction reduce_to_fundamental_domain(const Complex& z, long max_iterations = 10000);

}  // namespace mfzl
