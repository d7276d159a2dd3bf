#pragma once

// High-precision real and complex scalars.
//
// Real is MPFR through Boost.Multiprecision with variable precision; every
// computation runs inside a PrecisionScope so that temporaries and constants
// share one working precision.

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <string>

namespace mfzl {

using Real = boost::multiprecision::mpfr_float;

/// Sets the default MPFR precision (in bits) for the lifetime of the scope.
class PrecisionScope {
public:
    explicit PrecisionScope(long bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    long bits() const { return bits_; }

private:
    long bits_;
    long saved_bits_ = 0;
    unsigned saved_digits10_;
};

/// Current working precision in bits.
long working_bits();

template <typename T>
struct BasicComplex {
    T re{0};
    T im{0};

    BasicComplex() = default;
    BasicComplex(T r, T i = T(0)) : re(std::move(r)), im(std::move(i)) {}

    BasicComplex& operator+=(const BasicComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    BasicComplex& operator-=(const BasicComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    BasicComplex& operator*=(const BasicComplex& o) {
        T r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    BasicComplex& operator*=(const T& s) {
        re *= s;
        im *= s;
        return *this;
    }
    BasicComplex& operator/=(const BasicComplex& o) {
        T den = o.re * o.re + o.im * o.im;
        T r = (re * o.re + im * o.im) / den;
        im = (im * o.re - re * o.im) / den;
        re = std::move(r);
        return *this;
    }

    friend BasicComplex operator+(BasicComplex a, const BasicComplex& b) { return a += b; }
    friend BasicComplex operator-(BasicComplex a, const BasicComplex& b) { return a -= b; }
    friend BasicComplex operator*(BasicComplex a, const BasicComplex& b) { return a *= b; }
    friend BasicComplex operator*(BasicComplex a, const T& s) { return a *= s; }
    friend BasicComplex operator*(const T& s, BasicComplex a) { return a *= s; }
    friend BasicComplex operator/(BasicComplex a, const BasicComplex& b) { return a /= b; }
    friend BasicComplex operator-(const BasicComplex& a) { return {-a.re, -a.im}; }
};

using Complex = BasicComplex<Real>;

Real pi();
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, long n);
/// e^{i t}
Complex unit(const Real& t);

Real to_real(const mpq_class& q);
Real to_real(const mpz_class& z);
/// Nearest integer (ties to even).
mpz_class round_to_integer(const Real& x);
/// Scales by 2^shift and rounds to the nearest integer.
mpz_class scaled_round(const Real& x, long shift);
/// log2 |x|, or a large negative number for x = 0.
double log2_abs(const Real& x);

/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const Real& x, int digits);
std::string to_decimal(const Complex& z, int digits);
/// Parses a decimal or "p/q" string at the current precision.
Real parse_real(const std::string& text);

}  // namespace mfzl
