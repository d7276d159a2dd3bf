#include "mfzl/cm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mfzl {

namespace {

long isqrt(long n) {
    if (n <= 0) return 0;
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void check_discriminant(long D) {
    if (D >= 0) throw BadDiscriminant("discriminant must be negative, got " + std::to_string(D));
    const long r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) throw BadDiscriminant("discriminant must be 0 or 1 mod 4, got " + std::to_string(D));
}

QuadraticForm primitive_part(long A, long B, long C) {
    const long g = std::gcd(std::gcd(A, B), C);
    return {A / g, B / g, C / g};
}

// sqrt|D| / 2 < h, tested exactly as |D| < 4 h^2.
bool below_height(long absD, const Rational& h) {
    if (sgn(h) <= 0) return false;
    return Rational(absD) < 4 * h * h;
}

}  // namespace

bool QuadraticForm::primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

QuadraticForm QuadraticForm::reduced() const {
    const long D = discriminant();
    if (a <= 0 || D >= 0) throw std::invalid_argument("reduction needs a positive definite form");
    QuadraticForm f = *this;
    for (;;) {
        // b into (-a, a]
        const long two_a = 2 * f.a;
        long b = ((f.b % two_a) + two_a) % two_a;
        if (b > f.a) b -= two_a;
        f.c = (b * b - D) / (4 * f.a);
        f.b = b;
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        break;
    }
    if ((f.a == f.c || f.b == -f.a) && f.b < 0) f.b = -f.b;
    return f;
}

bool QuadraticForm::is_reduced() const { return reduced() == *this; }

QuadraticForm principal_form(long D) {
    check_discriminant(D);
    if (D % 4 == 0) return {1, 0, -D / 4};
    return {1, 1, (1 - D) / 4};
}

std::vector<QuadraticForm> reduced_forms(long D) {
    check_discriminant(D);
    std::vector<QuadraticForm> out;
    const long absD = -D;
    for (long a = 1; 3 * a * a <= absD; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            const long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

long class_number(long D) { return static_cast<long>(reduced_forms(D).size()); }

Rational CMPoint::real_part() const {
    Rational r(-form.b, 2 * form.a);
    r.canonicalize();
    return r;
}

Complex CMPoint::value() const {
    const Real two_a = Real(2 * form.a);
    return {Real(-form.b) / two_a, boost::multiprecision::sqrt(Real(abs_disc())) / two_a};
}

std::string CMPoint::surd() const {
    // sqrt|D| = s sqrt(t) with t squarefree.
    long s = 1, t = abs_disc();
    for (long f = 2; f * f <= t; ++f)
        while (t % (f * f) == 0) {
            t /= f * f;
            s *= f;
        }
    long re = -form.b, im = s, den = 2 * form.a;
    const long g = std::gcd(std::gcd(std::labs(re), im), den);
    re /= g;
    im /= g;
    den /= g;
    std::string imag = (im == 1 ? "" : std::to_string(im) + "*") + "i" + (t == 1 ? "" : "*sqrt(" + std::to_string(t) + ")");
    std::string num = re == 0 ? imag : std::to_string(re) + "+" + imag;
    if (den == 1) return num;
    if (re != 0) num = "(" + num + ")";
    return num + "/" + std::to_string(den);
}

CMPoint galois_rep(long D) {
    CMPoint p;
    p.form = principal_form(D);
    p.locus = D % 4 == 0 ? "R" : "L";
    p.line_disc = D;
    p.line_a = 1;
    return p;
}

std::vector<CMPoint> enumerate_arc(long p, long d_bound) {
    if (p != 1 && p != 2 && p != 3) throw std::invalid_argument("arc enumeration supports p = 1, 2, 3");
    // Forms (p c, b, c) with 0 <= b <= p c: |D| = 4 p c^2 - b^2 >= p (4 - p) c^2.
    std::vector<CMPoint> all;
    std::vector<long> allowed;
    for (long c = 1; p * (4 - p) * c * c <= d_bound; ++c) {
        const long a = p * c;
        for (long b = 0; b <= a; ++b) {
            const QuadraticForm f{a, b, c};
            const long D = f.discriminant();
            if (D >= 0 || -D > d_bound || !f.primitive()) continue;
            CMPoint pt;
            pt.form = f;
            pt.locus = p == 1 ? "A" : "Ap";
            all.push_back(pt);
            if (f.reduced() == principal_form(D)) allowed.push_back(D);
        }
    }
    std::vector<CMPoint> out;
    for (const auto& pt : all)
        if (std::find(allowed.begin(), allowed.end(), pt.D()) != allowed.end()) out.push_back(pt);
    std::sort(out.begin(), out.end(), [](const CMPoint& x, const CMPoint& y) {
        return x.real_part() > y.real_part() || (x.real_part() == y.real_part() && x.form.a < y.form.a);
    });
    return out;
}

std::vector<CMPoint> enumerate_line_L(long d_bound, const Rational& height) {
    std::vector<CMPoint> out;
    for (long absD = 3; absD <= d_bound; absD += 4) {
        if (!below_height(absD, height)) break;
        for (long a = 1; 3 * a * a <= absD; ++a) {
            CMPoint pt;
            pt.form = primitive_part(4 * a * a, 4 * a * a, a * a + absD);
            pt.locus = "L";
            pt.line_disc = -absD;
            pt.line_a = a;
            out.push_back(pt);
        }
    }
    return out;
}

std::vector<CMPoint> enumerate_line_R(long d_bound, const Rational& height) {
    std::vector<CMPoint> out;
    for (long absD = 4; absD <= d_bound; absD += 4) {
        if (!below_height(absD, height)) break;
        for (long a = 1; 4 * a * a <= absD; ++a) {
            CMPoint pt;
            pt.form = primitive_part(4 * a * a, 0, absD);
            pt.locus = "R";
            pt.line_disc = -absD;
            pt.line_a = a;
            out.push_back(pt);
        }
    }
    return out;
}

std::vector<CMPoint> coset_exception_set(long p) {
    if (p < 2) throw std::invalid_argument("p must be a prime");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("p must be a prime");
    std::vector<CMPoint> out;
    for (long n = 0; n < p; ++n) {
        CMPoint pt;
        pt.form = {n * n + 1, 2 * n, 1};
        pt.locus = "B";
        out.push_back(pt);
    }
    for (long n = 0; n < p; ++n) {
        CMPoint pt;
        pt.form = {n * n - n + 1, 2 * n - 1, 1};
        pt.locus = "B";
        out.push_back(pt);
    }
    return out;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Complex Mat2::apply(const Complex& z) const {
    const Complex num = Complex(to_real(a)) * z + Complex(to_real(b));
    return num / automorphy(z);
}

Complex Mat2::automorphy(const Complex& z) const { return Complex(to_real(c)) * z + Complex(to_real(d)); }

std::string Mat2::to_string() const {
    std::ostringstream os;
    os << "[[" << a.get_str() << "," << b.get_str() << "],[" << c.get_str() << "," << d.get_str() << "]]";
    return os.str();
}

Reduction reduce_to_fundamental_domain(const Complex& z0, long max_iterations) {
    if (z0.im <= 0) throw std::invalid_argument("point must lie in the upper half-plane");
    const Real tol = boost::multiprecision::ldexp(Real(1), static_cast<int>(-(working_bits() - 16)));
    Reduction r{z0, Mat2{}};
    const Mat2 S{0, -1, 1, 0};
    for (long it = 0; it < max_iterations; ++it) {
        const Real shifted = boost::multiprecision::floor(r.z.re + Real(0.5));
        if (shifted != 0) {
            const Integer n = round_to_integer(shifted);
            r.z.re -= shifted;
            r.gamma = Mat2{1, -n, 0, 1} * r.gamma;
        }
        const Real norm = r.z.re * r.z.re + r.z.im * r.z.im;
        if (norm < 1 - tol) {
            r.z = Complex(-r.z.re / norm, r.z.im / norm);
            r.gamma = S * r.gamma;
            continue;
        }
        if (norm <= 1 + tol && r.z.re > tol) {
            r.z = Complex(-r.z.re / norm, r.z.im / norm);
            r.gamma = S * r.gamma;
        }
        return r;
    }
    throw NonConvergence("reduction to the fundamental domain did not converge");
}

}  // namespace mfzl
