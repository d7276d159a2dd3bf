#pragma once

// q-expansions of Eisenstein series, the discriminant and the j-function,
// symbolic form expressions, and slash expansions along the cosets of
// Gamma_0(p) in SL_2(Z).

#include "mfzl/cyclotomic.hpp"
#include "mfzl/qseries.hpp"

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfzl {

struct UnknownTransform : std::domain_error {
    using std::domain_error::domain_error;
};

struct RamificationLeak : std::domain_error {
    using std::domain_error::domain_error;
};

struct IrrationalCoefficient : std::domain_error {
    using std::domain_error::domain_error;
};

// Expansions at i*infinity, exact and truncated at q^N.

/// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k even >= 4.
QSeries eisenstein(long k, long N);
/// E_2 = 1 - 24 sum sigma_1(n) q^n.
QSeries eisenstein2(long N);
/// Delta = q prod (1 - q^n)^24.
QSeries delta(long N);
/// j = 1728 E_4^3 / (E_4^3 - E_6^2).
QSeries jfunction(long N);
/// E_{k,p}(z) = (p^{k/2} E_k(pz) + E_k(z)) / (p^{k/2} + 1).
QSeries fricke_eisenstein(long k, long p, long N);

/// Generators of the expression language.
struct Generator {
    enum class Kind { Eisenstein, EisensteinScaled, Delta, DeltaScaled, J };
    Kind kind;
    long k = 0;  // Eisenstein weight
    long p = 1;  // scaling z -> p z

    long weight() const;
    long level() const { return p; }
    std::string to_string() const;
};

/// Immutable expression tree describing a (weakly holomorphic) form.
class FormExpr {
public:
    enum class Node { Leaf, Constant, Sum, Product, Power, Scale };

    static FormExpr eisenstein(long k);
    static FormExpr eisenstein_scaled(long k, long p);
    static FormExpr delta();
    static FormExpr delta_scaled(long p);
    static FormExpr j();
    static FormExpr constant(Rational c);
    /// (p^{k/2} E_k(pz) + E_k(z)) / (p^{k/2} + 1) as a tree.
    static FormExpr fricke_eisenstein(long k, long p);

    friend FormExpr operator+(const FormExpr& a, const FormExpr& b);
    friend FormExpr operator-(const FormExpr& a, const FormExpr& b);
    friend FormExpr operator*(const FormExpr& a, const FormExpr& b);
    friend FormExpr pow(const FormExpr& a, long n);
    friend FormExpr scale(const Rational& c, const FormExpr& a);

    long weight() const { return impl_->weight; }
    /// 1 for level-one expressions, otherwise the single prime p of the scaled generators.
    long level() const { return impl_->level; }
    Node node() const { return impl_->node; }
    std::string to_string() const;

    const Generator& generator() const { return impl_->gen; }
    const Rational& value() const { return impl_->value; }
    long exponent() const { return impl_->exponent; }
    /// True for a Sum node built by subtraction.
    bool subtracts() const { return impl_->negate_second; }
    const std::vector<FormExpr>& children() const { return impl_->children; }

private:
    struct Impl {
        Node node = Node::Constant;
        Generator gen{Generator::Kind::J};
        Rational value;
        long exponent = 1;
        bool negate_second = false;
        std::vector<FormExpr> children;
        long weight = 0;
        long level = 1;
    };
    std::shared_ptr<const Impl> impl_;

    explicit FormExpr(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static FormExpr make(Impl impl);
    static FormExpr combine_sum(const FormExpr& a, const FormExpr& b, bool subtract);
};

/// Exact q-expansion of an expression truncated at q^N.
QSeries expand(const FormExpr& expr, long N);

/// c * Delta^{k/12} * prod (J - r_i); rejects weights not divisible by 12.
FormExpr cm_product_form(const Rational& c, long k, const std::vector<Rational>& j_roots);

/// Coset representative of Gamma_0(p) in SL_2(Z): identity or S*T^n.
struct CosetRep {
    enum class Kind { Identity, ST };
    Kind kind = Kind::Identity;
    long n = 0;
    long p = 1;

    /// The integer matrix (a, b, c, d).
    std::array<long, 4> matrix() const;
    std::string to_string() const;
};

/// The p + 1 representatives I, S T^n (0 <= n < p).
std::vector<CosetRep> coset_reps(long p);

/// Expansion of expr|S in powers of q^{1/p} with rational coefficients.
QSeries slash_expand_S(const FormExpr& expr, long N);
/// Expansion of expr|rep; coefficients lie in Q(zeta_p).
CycloSeries slash_expand(const FormExpr& expr, const CosetRep& rep, long N);
/// Product of expr|gamma over all p + 1 cosets: a level-one series of weight (p+1)k.
QSeries coset_product(const FormExpr& expr, long N);

}  // namespace mfzl
