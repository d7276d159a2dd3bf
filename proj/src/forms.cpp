#include "mfzl/forms.hpp"

#include <functional>
#include <sstream>

namespace mfzl {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void check_eisenstein_weight(long k) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("Eisenstein weight must be even and >= 4");
}

void check_prime(long p) {
    if (!is_prime(p)) throw std::invalid_argument("level must be a prime, got " + std::to_string(p));
}

Integer ipow(long base, long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return r;
}

long merge_level(long a, long b) {
    if (a == 1) return b;
    if (b == 1 || a == b) return a;
    throw std::invalid_argument("expression mixes levels " + std::to_string(a) + " and " + std::to_string(b));
}

// Product of (1 - q^n) for n >= 1 via the pentagonal number theorem, exact below q^N.
QSeries euler_product(long N) {
    std::vector<Rational> c(static_cast<size_t>(std::max(1L, N)), Rational(0));
    for (long m = 0;; ++m) {
        bool any = false;
        for (long s : {m, -m - 1}) {
            if (m == 0 && s == 0) {
                c[0] += 1;
                any = true;
                continue;
            }
            if (s == 0) continue;
            const long e = s * (3 * s - 1) / 2;
            if (e < N) {
                c[static_cast<size_t>(e)] += (s % 2 == 0) ? 1 : -1;
                any = true;
            }
        }
        if (!any && m > 0) break;
    }
    return QSeries(1, 0, std::move(c), N);
}

}  // namespace

QSeries eisenstein(long k, long N) {
    check_eisenstein_weight(k);
    const Rational factor = Rational(-2 * k) / bernoulli(k);
    const std::vector<Integer> sig = sigma_table(k - 1, std::max(1L, N));
    std::vector<Rational> c(static_cast<size_t>(std::max(0L, N)));
    if (N > 0) c[0] = 1;
    for (long n = 1; n < N; ++n) c[static_cast<size_t>(n)] = factor * sig[static_cast<size_t>(n)];
    return QSeries(1, 0, std::move(c), N);
}

QSeries eisenstein2(long N) {
    const std::vector<Integer> sig = sigma_table(1, std::max(1L, N));
    std::vector<Rational> c(static_cast<size_t>(std::max(0L, N)));
    if (N > 0) c[0] = 1;
    for (long n = 1; n < N; ++n) c[static_cast<size_t>(n)] = -24 * sig[static_cast<size_t>(n)];
    return QSeries(1, 0, std::move(c), N);
}

QSeries delta(long N) {
    // q * E(q)^24 with E known below q^{N-1}.
    const QSeries e = euler_product(N - 1);
    return QSeries::monomial(Rational(1), 1) * pow(e, 24);
}

QSeries jfunction(long N) {
    const QSeries e4 = eisenstein(4, N + 2);
    const QSeries e6 = eisenstein(6, N + 2);
    const QSeries e4cubed = pow(e4, 3);
    return (Rational(1728) * e4cubed / (e4cubed - pow(e6, 2))).truncated_index(N);
}

QSeries fricke_eisenstein(long k, long p, long N) {
    check_eisenstein_weight(k);
    check_prime(p);
    const Integer pk2 = ipow(p, k / 2);
    const QSeries scaled = substitute_power(eisenstein(k, (N + p - 1) / p), p).truncated_index(N);
    const QSeries base = eisenstein(k, N);
    const Rational denom = Rational(pk2 + 1);
    return Rational(1 / denom) * (Rational(pk2) * scaled + base);
}

long Generator::weight() const {
    switch (kind) {
        case Kind::Eisenstein:
        case Kind::EisensteinScaled: return k;
        case Kind::Delta:
        case Kind::DeltaScaled: return 12;
        case Kind::J: return 0;
    }
    return 0;
}

std::string Generator::to_string() const {
    switch (kind) {
        case Kind::Eisenstein: return "Ek(" + std::to_string(k) + ")";
        case Kind::EisensteinScaled: return "Eks(" + std::to_string(k) + "," + std::to_string(p) + ")";
        case Kind::Delta: return "Delta";
        case Kind::DeltaScaled: return "Deltas(" + std::to_string(p) + ")";
        case Kind::J: return "J";
    }
    return "?";
}

FormExpr FormExpr::make(Impl impl) { return FormExpr(std::make_shared<const Impl>(std::move(impl))); }

FormExpr FormExpr::eisenstein(long k) {
    check_eisenstein_weight(k);
    Impl i;
    i.node = Node::Leaf;
    i.gen = {Generator::Kind::Eisenstein, k, 1};
    i.weight = k;
    return make(std::move(i));
}

FormExpr FormExpr::eisenstein_scaled(long k, long p) {
    check_eisenstein_weight(k);
    check_prime(p);
    Impl i;
    i.node = Node::Leaf;
    i.gen = {Generator::Kind::EisensteinScaled, k, p};
    i.weight = k;
    i.level = p;
    return make(std::move(i));
}

FormExpr FormExpr::delta() {
    Impl i;
    i.node = Node::Leaf;
    i.gen = {Generator::Kind::Delta, 0, 1};
    i.weight = 12;
    return make(std::move(i));
}

FormExpr FormExpr::delta_scaled(long p) {
    check_prime(p);
    Impl i;
    i.node = Node::Leaf;
    i.gen = {Generator::Kind::DeltaScaled, 0, p};
    i.weight = 12;
    i.level = p;
    return make(std::move(i));
}

FormExpr FormExpr::j() {
    Impl i;
    i.node = Node::Leaf;
    i.gen = {Generator::Kind::J, 0, 1};
    return make(std::move(i));
}

FormExpr FormExpr::constant(Rational c) {
    Impl i;
    i.node = Node::Constant;
    i.value = std::move(c);
    return make(std::move(i));
}

FormExpr FormExpr::fricke_eisenstein(long k, long p) {
    const Integer pk2 = ipow(p, k / 2);
    const FormExpr inner = scale(Rational(pk2), eisenstein_scaled(k, p)) + eisenstein(k);
    return scale(Rational(1) / Rational(pk2 + 1), inner);
}

FormExpr FormExpr::combine_sum(const FormExpr& a, const FormExpr& b, bool subtract) {
    if (a.weight() != b.weight())
        throw std::invalid_argument("sum of expressions of weights " + std::to_string(a.weight()) + " and " +
                                    std::to_string(b.weight()));
    Impl i;
    i.node = Node::Sum;
    i.negate_second = subtract;
    i.children = {a, b};
    i.weight = a.weight();
    i.level = merge_level(a.level(), b.level());
    return make(std::move(i));
}

FormExpr operator+(const FormExpr& a, const FormExpr& b) { return FormExpr::combine_sum(a, b, false); }
FormExpr operator-(const FormExpr& a, const FormExpr& b) { return FormExpr::combine_sum(a, b, true); }

FormExpr operator*(const FormExpr& a, const FormExpr& b) {
    FormExpr::Impl i;
    i.node = FormExpr::Node::Product;
    i.children = {a, b};
    i.weight = a.weight() + b.weight();
    i.level = merge_level(a.level(), b.level());
    return FormExpr::make(std::move(i));
}

FormExpr pow(const FormExpr& a, long n) {
    if (n < 0) {
        const bool invertible_leaf = a.node() == FormExpr::Node::Leaf &&
                                     (a.generator().kind == Generator::Kind::Delta ||
                                      a.generator().kind == Generator::Kind::DeltaScaled);
        const bool nonzero_constant = a.node() == FormExpr::Node::Constant && sgn(a.value()) != 0;
        if (!invertible_leaf && !nonzero_constant)
            throw std::invalid_argument("negative powers are only allowed for Delta, Deltas(p) and constants");
    }
    FormExpr::Impl i;
    i.node = FormExpr::Node::Power;
    i.children = {a};
    i.exponent = n;
    i.weight = a.weight() * n;
    i.level = a.level();
    return FormExpr::make(std::move(i));
}

FormExpr scale(const Rational& c, const FormExpr& a) {
    FormExpr::Impl i;
    i.node = FormExpr::Node::Scale;
    i.value = c;
    i.children = {a};
    i.weight = a.weight();
    i.level = a.level();
    return FormExpr::make(std::move(i));
}

std::string FormExpr::to_string() const {
    switch (node()) {
        case Node::Leaf: return generator().to_string();
        case Node::Constant: return "const(" + value().get_str() + ")";
        case Node::Sum:
            return std::string(subtracts() ? "sub(" : "add(") + children()[0].to_string() + "," +
                   children()[1].to_string() + ")";
        case Node::Product: return "mul(" + children()[0].to_string() + "," + children()[1].to_string() + ")";
        case Node::Power: return "pow(" + children()[0].to_string() + "," + std::to_string(exponent()) + ")";
        case Node::Scale: return "scale(" + value().get_str() + "," + children()[0].to_string() + ")";
    }
    return "?";
}

namespace {

using LeafExpander = std::function<QSeries(const Generator&, long)>;

QSeries evaluate(const FormExpr& e, long M, const LeafExpander& leaf) {
    switch (e.node()) {
        case FormExpr::Node::Leaf: return leaf(e.generator(), M);
        case FormExpr::Node::Constant: return QSeries::constant(e.value());
        case FormExpr::Node::Sum: {
            const QSeries a = evaluate(e.children()[0], M, leaf);
            const QSeries b = evaluate(e.children()[1], M, leaf);
            return e.subtracts() ? a - b : a + b;
        }
        case FormExpr::Node::Product:
            return evaluate(e.children()[0], M, leaf) * evaluate(e.children()[1], M, leaf);
        case FormExpr::Node::Power: return pow(evaluate(e.children()[0], M, leaf), e.exponent());
        case FormExpr::Node::Scale: return e.value() * evaluate(e.children()[0], M, leaf);
    }
    throw std::logic_error("unknown expression node");
}

QSeries level_one_leaf(const Generator& g, long M) {
    switch (g.kind) {
        case Generator::Kind::Eisenstein: return eisenstein(g.k, M);
        case Generator::Kind::EisensteinScaled:
            return substitute_power(eisenstein(g.k, (M + g.p - 1) / g.p), g.p).truncated_index(M);
        case Generator::Kind::Delta: return delta(M);
        case Generator::Kind::DeltaScaled:
            return substitute_power(delta((M + g.p - 1) / g.p), g.p).truncated_index(M);
        case Generator::Kind::J: return jfunction(M);
    }
    throw std::logic_error("unknown generator");
}

// Evaluates at growing leaf truncation until the result is known below q^N.
template <typename Eval>
QSeries expand_to(long N, Eval&& eval) {
    long margin = 0;
    for (int attempt = 0; attempt < 64; ++attempt) {
        QSeries s = eval(N + margin);
        if (s.exact() || s.truncation() >= Rational(N)) return s.truncated(Rational(N));
        const Rational deficit = Rational(N) - s.truncation();
        mpz_class up;
        mpz_cdiv_q(up.get_mpz_t(), deficit.get_num_mpz_t(), deficit.get_den_mpz_t());
        margin += std::max(1L, up.get_si());
    }
    throw std::runtime_error("expansion did not reach the requested truncation");
}

}  // namespace

QSeries expand(const FormExpr& expr, long N) {
    return expand_to(N, [&](long M) { return evaluate(expr, M, level_one_leaf); });
}

FormExpr cm_product_form(const Rational& c, long k, const std::vector<Rational>& j_roots) {
    if (k < 0 || k % 12 != 0)
        throw std::invalid_argument("Delta^{k/12} needs 12 | k; fractional powers of Delta are not supported");
    FormExpr f = pow(FormExpr::delta(), k / 12);
    for (const auto& r : j_roots) f = f * (FormExpr::j() - FormExpr::constant(r));
    return scale(c, f);
}

std::array<long, 4> CosetRep::matrix() const {
    if (kind == Kind::Identity) return {1, 0, 0, 1};
    // S * T^n = [[0, -1], [1, 0]] * [[1, n], [0, 1]]
    return {0, -1, 1, n};
}

std::string CosetRep::to_string() const {
    if (kind == Kind::Identity) return "I";
    if (n == 0) return "S";
    return "ST^" + std::to_string(n);
}

std::vector<CosetRep> coset_reps(long p) {
    check_prime(p);
    std::vector<CosetRep> reps{{CosetRep::Kind::Identity, 0, p}};
    for (long n = 0; n < p; ++n) reps.push_back({CosetRep::Kind::ST, n, p});
    return reps;
}

QSeries slash_expand_S(const FormExpr& expr, long N) {
    const long p = expr.level();
    if (p == 1) return expand(expr, N);
    const auto leaf = [p](const Generator& g, long M) -> QSeries {
        if (g.p != 1 && g.p != p)
            throw UnknownTransform("generator " + g.to_string() + " has no S-transform at level " + std::to_string(p));
        switch (g.kind) {
            case Generator::Kind::Eisenstein:
            case Generator::Kind::Delta:
            case Generator::Kind::J: return level_one_leaf(g, M);
            case Generator::Kind::EisensteinScaled: {
                // E_k(pz)|S = p^{-k} E_k(z/p)
                const Rational f = Rational(1) / Rational(ipow(p, g.k));
                return f * substitute_root(eisenstein(g.k, M * p), static_cast<int>(p));
            }
            case Generator::Kind::DeltaScaled: {
                // Delta(pz)|S = p^{-12} Delta(z/p)
                const Rational f = Rational(1) / Rational(ipow(p, 12));
                return f * substitute_root(delta(M * p), static_cast<int>(p));
            }
        }
        throw std::logic_error("unknown generator");
    };
    return expand_to(N, [&](long M) { return evaluate(expr, M, leaf); });
}

namespace {

// (f|S)(z + n): the coefficient of q^{m/r} picks up zeta_p^{n m p / r}.
CycloSeries twist(const QSeries& fs, long n, long p) {
    const long r = fs.ramification();
    const long step = p / r;
    CycloSeries c = to_cyclo(fs);
    return c.map_indexed([&](long m, const Cyclotomic& x) {
        return Cyclotomic::root_power(static_cast<int>(p), n * m * step) * x;
    });
}

}  // namespace

CycloSeries slash_expand(const FormExpr& expr, const CosetRep& rep, long N) {
    if (rep.kind == CosetRep::Kind::Identity) return to_cyclo(expand(expr, N));
    const long p = expr.level() == 1 ? rep.p : expr.level();
    if (rep.p != p) throw std::invalid_argument("coset representative belongs to a different level");
    const QSeries fs = slash_expand_S(expr, N);
    if (rep.n == 0) return to_cyclo(fs);
    return twist(fs, rep.n, p);
}

QSeries coset_product(const FormExpr& expr, long N) {
    const long p = expr.level();
    if (p == 1) throw std::invalid_argument("coset_product needs an expression of prime level p > 1");
    return expand_to(N, [&](long M) {
        const QSeries fs = slash_expand_S(expr, M);
        CycloSeries prod = to_cyclo(expand(expr, M));
        for (long n = 0; n < p; ++n) prod = prod * twist(fs, n, p);
        const long r = prod.ramification();
        std::vector<Rational> coeffs;
        coeffs.reserve(prod.coeffs().size());
        for (size_t i = 0; i < prod.coeffs().size(); ++i) {
            const long idx = prod.start_index() + static_cast<long>(i);
            const Cyclotomic& c = prod.coeffs()[i];
            if (c.is_zero()) {
                coeffs.emplace_back(0);
                continue;
            }
            if (idx % r != 0) {
                std::ostringstream os;
                os << "nonzero coefficient at fractional exponent " << idx << "/" << r;
                throw RamificationLeak(os.str());
            }
            if (!c.is_rational()) throw IrrationalCoefficient("coset product has an irrational coefficient");
            coeffs.push_back(c.rational_value());
        }
        const QSeries rational(static_cast<int>(r), prod.start_index(), std::move(coeffs), prod.truncation_index());
        const QSeries out = rational.collapsed();
        if (out.ramification() != 1) throw RamificationLeak("coset product did not collapse to integral exponents");
        return out;
    });
}

}  // namespace mfzl
