#pragma once

// Numerical evaluation of q-series on the upper half-plane and location of
// zeros on the arcs A, A_2, A_3 and on the vertical lines L and R.

#include "mfzl/cm.hpp"
#include "mfzl/forms.hpp"
#include "mfzl/numeric.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfzl {

struct TailBoundUnsatisfiable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotRealOnArc : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotRealOnLine : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContourTooClose : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvalContext {
    /// Target precision P in bits.
    long precision = 256;
    /// Initial number of q-terms; 0 picks a default and grows it on demand.
    long truncation = 0;
    /// Extra working bits used while refining zeros.
    long guard_bits = 64;
    /// Upper limit for adaptive truncation.
    long max_truncation = 8192;
};

/// Evaluates a form given by its q-expansion. Level-one forms are first moved
/// into the fundamental domain and the automorphy factor is divided out.
class FormEvaluator {
public:
    using Provider = std::function<QSeries(long)>;

    explicit FormEvaluator(const FormExpr& expr, EvalContext ctx = {});
    /// A fixed series; evaluation fails if its truncation is too short.
    FormEvaluator(QSeries series, long weight, long level, std::string id, EvalContext ctx = {});
    FormEvaluator(Provider provider, long weight, long level, std::string id, EvalContext ctx = {});

    struct Value {
        Complex value;
        /// Sum of the absolute values of the terms.
        Real scale;
    };

    /// Direct summation of the q-series at z, without reduction.
    Value sum(const Complex& z) const;
    /// f(z) at the current working precision, with the term scale carried through the automorphy factor.
    Value evaluate(const Complex& z) const;
    Complex operator()(const Complex& z) const { return evaluate(z).value; }

    long weight() const { return weight_; }
    long level() const { return level_; }
    const std::string& id() const { return id_; }
    const EvalContext& context() const { return ctx_; }
    /// Number of q-terms currently in use.
    long truncation() const { return n_; }

private:
    Provider provider_;
    bool extendable_ = true;
    long weight_ = 0;
    long level_ = 1;
    std::string id_;
    EvalContext ctx_;

    mutable long n_ = 0;
    mutable QSeries series_;
    mutable std::vector<Real> coeffs_;
    mutable std::vector<Real> abs_coeffs_;
    mutable long coeff_bits_ = 0;

    void load(long n) const;
    void refresh_coefficients() const;
    std::optional<Value> try_sum(const Complex& z, long target_bits) const;
};

/// j(z) = 1728 E4^3 / (E4^3 - E6^2), evaluated after reduction into the fundamental domain.
Complex eval_j(const Complex& z, const EvalContext& ctx = {});

enum class Locus { A, A2, A3, L, R };

Locus parse_locus(const std::string& name);
std::string locus_name(Locus l);
/// 1 for A, L, R; p for A_p.
long locus_level(Locus l);
/// Radius of the arc: 1, 1/sqrt 2 or 1/sqrt 3.
Real arc_radius(Locus l);
/// Parameter interval: [pi/2, 2pi/3], [pi/2, 3pi/4], [pi/2, 5pi/6] for arcs;
/// [sqrt(3)/2, t_max] on L and [1, t_max] on R.
std::pair<Real, Real> locus_interval(Locus l, const Real& t_max = Real(0));
/// The point of the locus at parameter theta or t.
Complex locus_point(Locus l, const Real& param);

/// The matrices gamma_L = (-2 -1; 1 -1) and gamma_R = (1 -1; 1 1).
enum class LineTransport { GammaL, GammaR };
enum class Direction { Forward, Inverse };
Complex transport(const Complex& z, LineTransport which, Direction dir);
LineTransport transport_for(Locus l);

struct ZeroRecord {
    std::string locus;
    /// theta on arcs, t on lines.
    Real param;
    Complex z;
    /// |f(z)|
    Real residual;
    /// Width of the final bracketing interval in the parameter.
    Real width;
    long weight = 0;
    std::string form_id;
    /// Order of vanishing from a small-circle winding number.
    long multiplicity = 1;
    /// The profile touches zero without changing sign.
    bool even_order_flag = false;
    bool endpoint = false;
};

/// theta -> Re(e^{i k theta / 2} f(r e^{i theta})); throws NotRealOnArc if the rotated value is not real.
Real arc_profile(const FormEvaluator& f, Locus arc, const Real& theta);
/// t -> f(z(t)) on L or R (real for real coefficients); throws NotRealOnLine otherwise.
Real line_profile(const FormEvaluator& f, Locus line, const Real& t);
/// Profile of z -> g(gamma^{-1} z) on the line: Re(w^{k/2} g(w)) with w = gamma^{-1} z on the unit circle.
Real transported_profile(const FormEvaluator& g, Locus line, const Real& t);

std::vector<std::pair<Real, Real>> sample_profile(const std::function<Real(const Real&)>& profile, const Real& lo,
                                                  const Real& hi, long samples);

std::vector<ZeroRecord> find_zeros_on_arc(const FormEvaluator& f, Locus arc, long samples = 64);
std::vector<ZeroRecord> find_zeros_on_line(const FormEvaluator& f, Locus line, const Real& t_max, long samples = 64);
/// Zeros of z -> g(gamma^{-1} z) on L or R, for a level-one form g.
std::vector<ZeroRecord> find_zeros_transported(const FormEvaluator& g, Locus line, const Real& t_max,
                                               long samples = 64);

/// Total change of arg f along s -> path(s), s in [0, 1], with adaptive steps.
Real argument_change(const std::function<Complex(const Real&)>& path,
                     const std::function<Complex(const Complex&)>& f, long initial_steps = 64);

/// Winding number of f around the circle |z - z0| = radius.
long winding_number(const std::function<Complex(const Complex&)>& f, const Complex& z0, const Real& radius);

/// Number of zeros of f in the left half of the fundamental domain of level p (1, 2 or 3)
/// below height Y, widened by eps on the vertical sides and by the factor (1 - delta) on the arc.
long count_zeros_contour(const FormEvaluator& f, long p, const Real& Y, double eps = 1e-3, double delta = 1e-3,
                         long bits = 128);

}  // namespace mfzl
