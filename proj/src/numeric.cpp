#include "mfzl/numeric.hpp"

#include <algorithm>

#include <cmath>
#include <stdexcept>

namespace mfzl {

namespace {

thread_local long current_bits = 0;

unsigned bits_to_digits10(long bits) {
    // digits10 that Boost maps back to at least `bits` of mantissa.
    return static_cast<unsigned>(std::ceil(static_cast<double>(bits) * 0.30103)) + 1;
}

}  // namespace

PrecisionScope::PrecisionScope(long bits)
    : bits_(bits), saved_digits10_(Real::default_precision()) {
    if (bits < 16) throw std::invalid_argument("precision below 16 bits");
    Real::default_precision(bits_to_digits10(bits));
    saved_bits_ = current_bits;
    current_bits = bits;
}

PrecisionScope::~PrecisionScope() {
    Real::default_precision(saved_digits10_);
    current_bits = saved_bits_;
}

long working_bits() {
    if (current_bits > 0) return current_bits;
    return static_cast<long>(mpfr_get_default_prec());
}

Real pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Real abs(const Complex& z) {
    Real r;
    mpfr_hypot(r.backend().data(), z.re.backend().data(), z.im.backend().data(), MPFR_RNDN);
    return r;
}

Real arg(const Complex& z) {
    Real r;
    mpfr_atan2(r.backend().data(), z.im.backend().data(), z.re.backend().data(), MPFR_RNDN);
    return r;
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex unit(const Real& t) {
    Real s, c;
    mpfr_sin_cos(s.backend().data(), c.backend().data(), t.backend().data(), MPFR_RNDN);
    return {c, s};
}

Complex exp(const Complex& z) {
    Complex u = unit(z.im);
    Real m = boost::multiprecision::exp(z.re);
    return {u.re * m, u.im * m};
}

Complex log(const Complex& z) { return {boost::multiprecision::log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
    Real r = boost::multiprecision::sqrt(abs(z));
    Real half = arg(z) / 2;
    Complex u = unit(half);
    return {u.re * r, u.im * r};
}

Complex pow(const Complex& z, long n) {
    Complex base = z;
    if (n < 0) {
        base = Complex(Real(1)) / z;
        n = -n;
    }
    Complex result(Real(1));
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

Real to_real(const mpq_class& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real to_real(const mpz_class& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

mpz_class round_to_integer(const Real& x) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.backend().data(), MPFR_RNDN);
    return z;
}

mpz_class scaled_round(const Real& x, long shift) {
    Real y;
    mpfr_mul_2si(y.backend().data(), x.backend().data(), shift, MPFR_RNDN);
    return round_to_integer(y);
}

double log2_abs(const Real& x) {
    if (mpfr_zero_p(x.backend().data())) return -1e9;
    long e = 0;
    double m = mpfr_get_d_2exp(&e, x.backend().data(), MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string to_decimal(const Real& x, int digits) {
    return x.str(std::max(0, digits - 1), std::ios_base::scientific);
}

std::string to_decimal(const Complex& z, int digits) {
    std::string im = to_decimal(z.im, digits);
    if (!im.empty() && im[0] != '-') im = "+" + im;
    return to_decimal(z.re, digits) + im + "i";
}

Real parse_real(const std::string& text) {
    if (text.find('/') != std::string::npos) {
        mpq_class q(text);
        q.canonicalize();
        return to_real(q);
    }
    return Real(text);
}

}  // namespace mfzl
