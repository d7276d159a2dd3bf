#include "mfzl/lattice.hpp"

#include <stdexcept>

namespace mfzl {

namespace {

Integer dot(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Nearest integer to num/den, den > 0.
Integer round_div(const Integer& num, const Integer& den) {
    Integer twice = 2 * num + den;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), Integer(2 * den).get_mpz_t());
    return q;
}

}  // namespace

std::vector<IntVector> lll_reduce(std::vector<IntVector> b, long delta_num, long delta_den) {
    const size_t n = b.size();
    if (n <= 1) return b;
    // d[0] = 1, d[i] = det of the Gram matrix of b_1..b_i; lam[k][j] = d_{j+1} mu_{k,j} (0-based).
    std::vector<Integer> d(n + 1, 0);
    std::vector<std::vector<Integer>> lam(n, std::vector<Integer>(n, 0));
    d[0] = 1;
    d[1] = dot(b[0], b[0]);
    if (d[1] == 0) throw std::invalid_argument("LLL needs linearly independent vectors");

    // Indices follow the 1-based presentation: vector k is b[k-1], lam(k, j) is lam[k-1][j-1].
    auto L = [&](size_t k, size_t j) -> Integer& { return lam[k - 1][j - 1]; };
    auto red = [&](size_t k, size_t l) {
        Integer twice = 2 * abs(L(k, l));
        if (twice <= d[l]) return;
        const Integer q = round_div(L(k, l), d[l]);
        for (size_t t = 0; t < b[k - 1].size(); ++t) b[k - 1][t] -= q * b[l - 1][t];
        L(k, l) -= q * d[l];
        for (size_t i = 1; i < l; ++i) L(k, i) -= q * L(l, i);
    };
    size_t k = 2, kmax = 1;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (size_t j = 1; j <= k; ++j) {
                Integer u = dot(b[k - 1], b[j - 1]);
                for (size_t i = 1; i < j; ++i) u = (d[i] * u - L(k, i) * L(j, i)) / d[i - 1];
                if (j < k)
                    L(k, j) = u;
                else {
                    d[k] = u;
                    if (u == 0) throw std::invalid_argument("LLL needs linearly independent vectors");
                }
            }
        }
        red(k, k - 1);
        // Lovasz test: d_k d_{k-2} < delta d_{k-1}^2 - lam^2
        const Integer lhs = delta_den * d[k] * d[k - 2];
        const Integer rhs = delta_num * d[k - 1] * d[k - 1] - delta_den * L(k, k - 1) * L(k, k - 1);
        if (lhs < rhs) {
            std::swap(b[k - 1], b[k - 2]);
            for (size_t j = 1; j + 1 < k; ++j) std::swap(L(k, j), L(k - 1, j));
            const Integer lm = L(k, k - 1);
            const Integer B = (d[k - 2] * d[k] + lm * lm) / d[k - 1];
            for (size_t i = k + 1; i <= kmax; ++i) {
                const Integer t = L(i, k);
                L(i, k) = (d[k] * L(i, k - 1) - lm * t) / d[k - 1];
                L(i, k - 1) = (B * t + lm * L(i, k)) / d[k];
            }
            d[k - 1] = B;
            if (k > 2) --k;
        } else {
            for (size_t l = k - 1; l-- > 1;) red(k, l);
            ++k;
        }
    }
    return b;
}

std::optional<Relation> integer_relation(const std::vector<Complex>& xs, long bits) {
    const size_t n = xs.size();
    if (n < 2) return std::nullopt;
    Real maxabs = 0;
    Real maxim = 0;
    for (const auto& x : xs) {
        maxabs = boost::multiprecision::max(maxabs, abs(x));
        maxim = boost::multiprecision::max(maxim, boost::multiprecision::abs(x.im));
    }
    if (maxabs == 0) return std::nullopt;
    const bool use_im = maxim > maxabs * boost::multiprecision::ldexp(Real(1), static_cast<int>(-bits / 2));
    // Scale so that the largest entry has about `bits` bits.
    const long shift = bits - static_cast<long>(std::ceil(log2_abs(maxabs)));
    std::vector<IntVector> basis(n);
    for (size_t i = 0; i < n; ++i) {
        IntVector row(n, 0);
        row[i] = 1;
        row.push_back(scaled_round(xs[i].re, shift));
        if (use_im) row.push_back(scaled_round(xs[i].im, shift));
        basis[i] = std::move(row);
    }
    const auto reduced = lll_reduce(basis);
    const IntVector& best = reduced.front();
    Relation rel;
    rel.coeffs.assign(best.begin(), best.begin() + static_cast<long>(n));
    bool nonzero = false;
    Complex s;
    Real total = 0;
    Integer h = 0;
    for (size_t i = 0; i < n; ++i) {
        if (rel.coeffs[i] != 0) nonzero = true;
        const Real c = to_real(rel.coeffs[i]);
        s += c * xs[i];
        total += boost::multiprecision::abs(c) * abs(xs[i]);
        if (abs(rel.coeffs[i]) > h) h = abs(rel.coeffs[i]);
    }
    if (!nonzero) return std::nullopt;
    rel.relative_residual = total == 0 ? Real(0) : abs(s) / total;
    rel.log2_height = log2_abs(to_real(h));
    return rel;
}

}  // namespace mfzl
