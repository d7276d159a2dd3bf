#pragma once

// Elements of the cyclotomic field Q(zeta_p), p prime, in the power basis
// 1, zeta, ..., zeta^{p-2}. Used as coefficients of slash expansions along the
// cosets S*T^n, where a shift z -> z + n multiplies q^{1/p} by zeta^n.

#include "mfzl/qseries.hpp"

#include <vector>

namespace mfzl {

class Cyclotomic {
public:
    /// The rational zero; compatible with every p.
    Cyclotomic() = default;
    /// A rational number viewed in Q(zeta_p); p = 0 means "any field".
    explicit Cyclotomic(Rational r, int p = 0);

    /// c * zeta_p^e.
    static Cyclotomic root_power(int p, long e, const Rational& c = Rational(1));

    int order() const { return p_; }
    bool is_zero() const;
    bool is_rational() const;
    /// Rational value; throws std::domain_error if the element is irrational.
    Rational rational_value() const;
    /// Coordinates in the power basis (size p - 1, or 1 for rationals with p = 0).
    const std::vector<Rational>& coords() const { return c_; }

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a);
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

private:
    int p_ = 0;
    std::vector<Rational> c_;

    Cyclotomic lifted(int p) const;
    static int common_order(const Cyclotomic& a, const Cyclotomic& b);
};

template <>
struct CoeffTraits<Cyclotomic> {
    static Cyclotomic zero() { return Cyclotomic(); }
    static Cyclotomic one() { return Cyclotomic(Rational(1)); }
    static bool is_zero(const Cyclotomic& c) { return c.is_zero(); }
};

using CycloSeries = Series<Cyclotomic>;

/// Rational series viewed with cyclotomic coefficients.
CycloSeries to_cyclo(const QSeries& s);

}  // namespace mfzl
