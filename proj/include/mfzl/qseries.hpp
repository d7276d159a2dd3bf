#pragma once

// Truncated Puiseux series in q^{1/r} with exact coefficients.
//
// A series stores a dense window of coefficients indexed in units of 1/r
// together with a truncation index T: every exponent e < T/r is known and
// exponents >= T/r are unknown. The sentinel kExact marks series that are
// known to all orders (finite sums such as constants and polynomials).

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mfzl {

using Integer = mpz_class;
using Rational = mpq_class;

struct NonInvertible : std::domain_error {
    using std::domain_error::domain_error;
};

struct DivisionByZeroSeries : std::domain_error {
    using std::domain_error::domain_error;
};

template <typename C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& c) { return sgn(c) == 0; }
};

namespace detail {

inline constexpr long kExactIndex = LONG_MAX / 8;

inline long add_index(long a, long b) {
    if (a >= kExactIndex || b >= kExactIndex) return kExactIndex;
    return a + b;
}

inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace detail

template <typename C>
class Series {
public:
    using Coeff = C;
    using Traits = CoeffTraits<C>;
    static constexpr long kExact = detail::kExactIndex;

    /// The exact zero series.
    Series() = default;

    /// Series with coefficients coeffs[i] at exponent (start + i) / ram, known below trunc / ram.
    Series(int ram, long start, std::vector<C> coeffs, long trunc)
        : ram_(ram), start_(start), coeffs_(std::move(coeffs)), trunc_(trunc) {
        if (ram < 1) throw std::invalid_argument("ramification must be positive");
        normalize();
    }

    static Series constant(C c) { return Series(1, 0, {std::move(c)}, kExact); }

    static Series monomial(C c, long index, int ram = 1) {
        return Series(ram, index, {std::move(c)}, kExact);
    }

    /// The zero series known below exponent trunc / ram.
    static Series zero_to(long trunc, int ram = 1) { return Series(ram, 0, {}, trunc); }

    int ramification() const { return ram_; }
    bool exact() const { return trunc_ >= kExact; }
    long truncation_index() const { return trunc_; }

    /// Truncation order as a rational exponent; throws for exact series.
    Rational truncation() const {
        if (exact()) throw std::logic_error("exact series has no truncation order");
        Rational t(trunc_, ram_);
        t.canonicalize();
        return t;
    }

    bool is_zero() const { return coeffs_.empty(); }

    /// Index of the first nonzero coefficient, or the truncation index for a zero series.
    long valuation_index() const { return is_zero() ? trunc_ : start_; }

    Rational valuation() const {
        if (is_zero() && exact()) throw std::logic_error("the exact zero series has no valuation");
        Rational v(valuation_index(), ram_);
        v.canonicalize();
        return v;
    }

    long start_index() const { return start_; }
    long end_index() const { return start_ + static_cast<long>(coeffs_.size()); }
    const std::vector<C>& coeffs() const { return coeffs_; }

    C coeff_index(long n) const {
        if (n >= trunc_) throw std::out_of_range("coefficient beyond truncation");
        if (n < start_ || n >= end_index()) return Traits::zero();
        return coeffs_[static_cast<size_t>(n - start_)];
    }

    /// Coefficient at a rational exponent; zero when e is not a multiple of 1/r.
    C coeff(const Rational& e) const {
        Rational scaled = e * ram_;
        scaled.canonicalize();
        if (scaled.get_den() != 1) {
            if (e >= Rational(trunc_, ram_) && !exact())
                throw std::out_of_range("coefficient beyond truncation");
            return Traits::zero();
        }
        return coeff_index(scaled.get_num().get_si());
    }

    C leading_coeff() const {
        if (is_zero()) throw NonInvertible("zero series has no leading coefficient");
        return coeffs_.front();
    }

    /// Drops all terms at index >= t (in units of 1/r).
    Series truncated_index(long t) const {
        return Series(ram_, start_, coeffs_, std::min(t, trunc_));
    }

    Series truncated(const Rational& order) const {
        Rational scaled = order * ram_;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        Rational exactness = scaled - Rational(fl);
        long t = fl.get_si() + (sgn(exactness) != 0 ? 1 : 0);
        return truncated_index(t);
    }

    /// Same series written over q^{1/R}; R must be a multiple of the current ramification.
    Series with_ramification(int R) const {
        if (R % ram_ != 0) throw std::invalid_argument("ramification must divide the target");
        const long m = R / ram_;
        if (m == 1) return *this;
        std::vector<C> out;
        if (!coeffs_.empty()) {
            out.assign((coeffs_.size() - 1) * static_cast<size_t>(m) + 1, Traits::zero());
            for (size_t i = 0; i < coeffs_.size(); ++i) out[i * static_cast<size_t>(m)] = coeffs_[i];
        }
        long t = exact() ? kExact : trunc_ * m;
        Series s;
        s.ram_ = R;
        s.start_ = start_ * m;
        s.coeffs_ = std::move(out);
        s.trunc_ = t;
        return s;
    }

    /// Collapses the ramification to the smallest value compatible with the nonzero
    /// exponents, rounding the truncation down so that no unknown term is asserted.
    Series collapsed() const {
        long g = ram_;
        for (size_t i = 0; i < coeffs_.size() && g > 1; ++i)
            if (!Traits::is_zero(coeffs_[i])) g = std::gcd(g, start_ + static_cast<long>(i));
        if (g <= 1) return *this;
        std::vector<C> out;
        for (size_t i = 0; i < coeffs_.size(); i += static_cast<size_t>(g)) out.push_back(coeffs_[i]);
        long t = exact() ? kExact : detail::floor_div(trunc_, g);
        return Series(static_cast<int>(ram_ / g), start_ / g, std::move(out), t);
    }

    /// True when every nonzero coefficient sits at an integral exponent.
    bool integral_exponents() const {
        for (size_t i = 0; i < coeffs_.size(); ++i)
            if (!Traits::is_zero(coeffs_[i]) && (start_ + static_cast<long>(i)) % ram_ != 0) return false;
        return true;
    }

    template <typename F>
    auto map_coeffs(F&& f) const -> Series<decltype(f(std::declval<const C&>()))> {
        using D = decltype(f(std::declval<const C&>()));
        std::vector<D> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(f(c));
        return Series<D>(ram_, start_, std::move(out), trunc_);
    }

    /// Applies f(index, coeff) to each stored coefficient.
    template <typename F>
    Series map_indexed(F&& f) const {
        std::vector<C> out;
        out.reserve(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i) out.push_back(f(start_ + static_cast<long>(i), coeffs_[i]));
        return Series(ram_, start_, std::move(out), trunc_);
    }

    Series operator-() const {
        return map_coeffs([](const C& c) -> C { return C(-c); });
    }

    friend Series operator+(const Series& a, const Series& b) { return combine(a, b, false); }
    friend Series operator-(const Series& a, const Series& b) { return combine(a, b, true); }

    friend Series operator*(const Series& a, const Series& b) {
        const int R = std::lcm(a.ram_, b.ram_);
        const Series x = a.with_ramification(R);
        const Series y = b.with_ramification(R);
        const long t = std::min(detail::add_index(x.trunc_, y.valuation_index()),
                                detail::add_index(y.trunc_, x.valuation_index()));
        if (x.is_zero() || y.is_zero()) return Series(R, 0, {}, t);
        const long lo = x.start_ + y.start_;
        long hi = x.end_index() + y.end_index() - 1;
        hi = std::min(hi, t);
        if (hi <= lo) return Series(R, lo, {}, t);
        std::vector<C> out(static_cast<size_t>(hi - lo), Traits::zero());
        const long nx = static_cast<long>(x.coeffs_.size());
        const long ny = static_cast<long>(y.coeffs_.size());
        for (long i = 0; i < nx; ++i) {
            if (Traits::is_zero(x.coeffs_[static_cast<size_t>(i)])) continue;
            const long jmax = std::min(ny, hi - lo - i);
            for (long j = 0; j < jmax; ++j)
                out[static_cast<size_t>(i + j)] += x.coeffs_[static_cast<size_t>(i)] * y.coeffs_[static_cast<size_t>(j)];
        }
        return Series(R, lo, std::move(out), t);
    }

    friend Series operator*(const C& s, const Series& a) {
        if (Traits::is_zero(s)) return Series(a.ram_, 0, {}, a.trunc_);
        return a.map_coeffs([&s](const C& c) -> C { return C(s * c); });
    }

    friend bool operator==(const Series& a, const Series& b) {
        if (a.trunc_ != b.trunc_ || a.ram_ != b.ram_ || a.start_ != b.start_) return false;
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
        return true;
    }

private:
    static Series combine(const Series& a, const Series& b, bool subtract) {
        const int R = std::lcm(a.ram_, b.ram_);
        const Series x = a.with_ramification(R);
        const Series y = b.with_ramification(R);
        const long t = std::min(x.trunc_, y.trunc_);
        if (x.is_zero() && y.is_zero()) return Series(R, 0, {}, t);
        long lo, hi;
        if (x.is_zero()) {
            lo = y.start_;
            hi = y.end_index();
        } else if (y.is_zero()) {
            lo = x.start_;
            hi = x.end_index();
        } else {
            lo = std::min(x.start_, y.start_);
            hi = std::max(x.end_index(), y.end_index());
        }
        hi = std::min(hi, t);
        if (hi <= lo) return Series(R, 0, {}, t);
        std::vector<C> out(static_cast<size_t>(hi - lo), Traits::zero());
        for (long n = std::max(lo, x.start_); n < std::min(hi, x.end_index()); ++n)
            out[static_cast<size_t>(n - lo)] += x.coeffs_[static_cast<size_t>(n - x.start_)];
        for (long n = std::max(lo, y.start_); n < std::min(hi, y.end_index()); ++n) {
            if (subtract)
                out[static_cast<size_t>(n - lo)] -= y.coeffs_[static_cast<size_t>(n - y.start_)];
            else
                out[static_cast<size_t>(n - lo)] += y.coeffs_[static_cast<size_t>(n - y.start_)];
        }
        return Series(R, lo, std::move(out), t);
    }

    void normalize() {
        // Drop terms at or beyond the truncation, then strip zeros at both ends.
        if (trunc_ < kExact && end_index() > trunc_) {
            long keep = std::max(0L, trunc_ - start_);
            coeffs_.resize(static_cast<size_t>(keep), Traits::zero());
        }
        size_t first = 0;
        while (first < coeffs_.size() && Traits::is_zero(coeffs_[first])) ++first;
        if (first == coeffs_.size()) {
            coeffs_.clear();
            start_ = 0;
            return;
        }
        size_t last = coeffs_.size();
        while (last > first && Traits::is_zero(coeffs_[last - 1])) --last;
        if (first > 0 || last < coeffs_.size())
            coeffs_ = std::vector<C>(coeffs_.begin() + static_cast<long>(first), coeffs_.begin() + static_cast<long>(last));
        start_ += static_cast<long>(first);
        // Lossless collapse of the ramification.
        if (ram_ > 1) {
            long g = ram_;
            for (size_t i = 0; i < coeffs_.size() && g > 1; ++i)
                if (!Traits::is_zero(coeffs_[i])) g = std::gcd(g, start_ + static_cast<long>(i));
            if (!exact()) g = std::gcd(g, trunc_);
            if (g > 1) {
                std::vector<C> out;
                for (size_t i = 0; i < coeffs_.size(); i += static_cast<size_t>(g)) out.push_back(coeffs_[i]);
                coeffs_ = std::move(out);
                start_ /= g;
                if (!exact()) trunc_ /= g;
                ram_ = static_cast<int>(ram_ / g);
            }
        }
    }

    int ram_ = 1;
    long start_ = 0;
    std::vector<C> coeffs_;
    long trunc_ = kExact;
};

using QSeries = Series<Rational>;

/// Multiplicative inverse of a series with nonzero leading coefficient.
QSeries inverse(const QSeries& a);
QSeries div(const QSeries& a, const QSeries& b);
QSeries operator/(const QSeries& a, const QSeries& b);

template <typename C>
Series<C> pow_nonnegative(const Series<C>& a, long m) {
    if (m < 0) throw std::invalid_argument("negative exponent");
    Series<C> result = Series<C>::constant(CoeffTraits<C>::one());
    Series<C> base = a;
    while (m > 0) {
        if (m & 1) result = result * base;
        m >>= 1;
        if (m > 0) base = base * base;
    }
    return result;
}

inline QSeries pow(const QSeries& a, long m) {
    if (m >= 0) return pow_nonnegative(a, m);
    return pow_nonnegative(inverse(a), -m);
}

/// q -> q^p: exponents scale by p.
template <typename C>
Series<C> substitute_power(const Series<C>& a, long p) {
    if (p < 1) throw std::invalid_argument("substitution power must be positive");
    std::vector<C> out;
    if (!a.is_zero()) {
        out.assign((a.coeffs().size() - 1) * static_cast<size_t>(p) + 1, CoeffTraits<C>::zero());
        for (size_t i = 0; i < a.coeffs().size(); ++i) out[i * static_cast<size_t>(p)] = a.coeffs()[i];
    }
    long t = a.exact() ? Series<C>::kExact : a.truncation_index() * p;
    return Series<C>(a.ramification(), a.start_index() * p, std::move(out), t);
}

/// q -> q^{1/p}: the ramification grows by p.
template <typename C>
Series<C> substitute_root(const Series<C>& a, int p) {
    if (p < 1) throw std::invalid_argument("substitution root must be positive");
    return Series<C>(a.ramification() * p, a.start_index(), a.coeffs(), a.truncation_index());
}

/// Sum of k-th powers of the divisors of n.
Integer sigma(long k, long n);
/// sigma(k, n) for n = 0 .. count-1 (entry 0 is zero).
std::vector<Integer> sigma_table(long k, long count);
/// Bernoulli number B_k for even k >= 2.
Rational bernoulli(long k);

/// Canonical string of a rational ("-691/2730", "5").
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace mfzl
