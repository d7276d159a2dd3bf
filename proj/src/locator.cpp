#include "mfzl/locator.hpp"

#include <algorithm>
#include <cmath>

namespace mfzl {

namespace bmp = boost::multiprecision;

namespace {

Real two_pow(long e) { return bmp::ldexp(Real(1), static_cast<int>(e)); }

long tail_target_bits(const EvalContext& ctx) { return std::min(ctx.precision, working_bits() - 8); }

}  // namespace

FormEvaluator::FormEvaluator(const FormExpr& expr, EvalContext ctx)
    : provider_([expr](long n) { return expand(expr, n); }),
      weight_(expr.weight()),
      level_(expr.level()),
      id_(expr.to_string()),
      ctx_(ctx) {}

FormEvaluator::FormEvaluator(QSeries series, long weight, long level, std::string id, EvalContext ctx)
    : provider_([series](long) { return series; }),
      extendable_(false),
      weight_(weight),
      level_(level),
      id_(std::move(id)),
      ctx_(ctx) {}

FormEvaluator::FormEvaluator(Provider provider, long weight, long level, std::string id, EvalContext ctx)
    : provider_(std::move(provider)), weight_(weight), level_(level), id_(std::move(id)), ctx_(ctx) {}

void FormEvaluator::load(long n) const {
    series_ = provider_(n);
    n_ = n;
    coeff_bits_ = 0;
}

void FormEvaluator::refresh_coefficients() const {
    if (coeff_bits_ >= working_bits()) return;
    coeffs_.clear();
    abs_coeffs_.clear();
    for (const auto& c : series_.coeffs()) {
        coeffs_.push_back(to_real(c));
        abs_coeffs_.push_back(bmp::abs(coeffs_.back()));
    }
    coeff_bits_ = working_bits();
}

std::optional<FormEvaluator::Value> FormEvaluator::try_sum(const Complex& z, long target_bits) const {
    refresh_coefficients();
    const long r = series_.ramification();
    const Real two_pi = 2 * pi();
    // t = exp(2 pi i z / r)
    const Complex t = exp(Complex(-two_pi * z.im / r, two_pi * z.re / r));
    const Real abs_t = abs(t);
    const long s = series_.start_index();
    Complex w = pow(t, s);
    Real abs_w = bmp::pow(abs_t, s);
    Value v{Complex(), Real(0)};
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (!mpfr_zero_p(coeffs_[i].backend().data())) {
            v.value += coeffs_[i] * w;
            v.scale += abs_coeffs_[i] * abs_w;
        }
        w *= t;
        abs_w *= abs_t;
    }
    if (series_.exact()) return v;
    if (coeffs_.empty()) return std::nullopt;
    // Tail estimate |c_last| g^{T - last} |t|^T / (1 - g |t|), g the observed coefficient growth per index.
    const long T = series_.truncation_index();
    const long last = series_.end_index() - 1;
    const long mid_target = s + (last - s) / 2;
    long mid = last;
    for (long m = mid_target; m < last; ++m)
        if (!mpfr_zero_p(coeffs_[static_cast<size_t>(m - s)].backend().data())) {
            mid = m;
            break;
        }
    const Real& c_last = abs_coeffs_.back();
    Real g = 1;
    if (mid < last) {
        const Real& c_mid = abs_coeffs_[static_cast<size_t>(mid - s)];
        g = bmp::pow(c_last / c_mid, Real(1) / Real(last - mid));
        if (g < 1) g = 1;
    }
    const Real ratio = g * abs_t;
    if (ratio >= Real(0.9)) return std::nullopt;
    const Real tail = 16 * c_last * bmp::pow(g, T - last) * bmp::pow(abs_t, T) / (1 - ratio);
    if (tail > two_pow(-target_bits) * v.scale) return std::nullopt;
    return v;
}

FormEvaluator::Value FormEvaluator::sum(const Complex& z) const {
    if (z.im <= 0) throw std::invalid_argument("evaluation point must lie in the upper half-plane");
    if (n_ == 0) load(ctx_.truncation > 0 ? ctx_.truncation : 32);
    const long target = tail_target_bits(ctx_);
    for (;;) {
        if (auto v = try_sum(z, target)) return *v;
        if (!extendable_ || n_ * 2 > ctx_.max_truncation)
            throw TailBoundUnsatisfiable("q-series tail too large at Im z = " + to_decimal(z.im, 12) +
                                         " with " + std::to_string(n_) + " terms");
        load(n_ * 2);
    }
}

FormEvaluator::Value FormEvaluator::evaluate(const Complex& z) const {
    if (level_ != 1) return sum(z);
    const Reduction red = reduce_to_fundamental_domain(z);
    Value v = sum(red.z);
    if (red.gamma.c == 0 && red.gamma.d == 1) return v;
    // f(gamma z) = (c z + d)^k f(z)
    const Complex factor = pow(red.gamma.automorphy(z), weight_);
    v.value = v.value / factor;
    v.scale = v.scale / abs(factor);
    return v;
}

Complex eval_j(const Complex& z, const EvalContext& ctx) {
    const Reduction red = reduce_to_fundamental_domain(z);
    static thread_local std::unique_ptr<FormEvaluator> e4, e6;
    if (!e4 || e4->context().precision != ctx.precision) {
        e4 = std::make_unique<FormEvaluator>(FormExpr::eisenstein(4), ctx);
        e6 = std::make_unique<FormEvaluator>(FormExpr::eisenstein(6), ctx);
    }
    const Complex a = e4->sum(red.z).value;
    const Complex b = e6->sum(red.z).value;
    const Complex a3 = a * a * a;
    return Complex(Real(1728)) * a3 / (a3 - b * b);
}

Locus parse_locus(const std::string& name) {
    if (name == "A") return Locus::A;
    if (name == "A2") return Locus::A2;
    if (name == "A3") return Locus::A3;
    if (name == "L") return Locus::L;
    if (name == "R") return Locus::R;
    throw std::invalid_argument("unknown locus '" + name + "' (expected A, A2, A3, L or R)");
}

std::string locus_name(Locus l) {
    switch (l) {
        case Locus::A: return "A";
        case Locus::A2: return "A2";
        case Locus::A3: return "A3";
        case Locus::L: return "L";
        case Locus::R: return "R";
    }
    return "?";
}

long locus_level(Locus l) {
    switch (l) {
        case Locus::A2: return 2;
        case Locus::A3: return 3;
        default: return 1;
    }
}

Real arc_radius(Locus l) { return 1 / bmp::sqrt(Real(locus_level(l))); }

std::pair<Real, Real> locus_interval(Locus l, const Real& t_max) {
    const Real p = pi();
    switch (l) {
        case Locus::A: return {p / 2, 2 * p / 3};
        case Locus::A2: return {p / 2, 3 * p / 4};
        case Locus::A3: return {p / 2, 5 * p / 6};
        case Locus::L: {
            const Real lo = bmp::sqrt(Real(3)) / 2;
            if (t_max <= lo) throw std::invalid_argument("t_max must exceed sqrt(3)/2 on L");
            return {lo, t_max};
        }
        case Locus::R:
            if (t_max <= 1) throw std::invalid_argument("t_max must exceed 1 on R");
            return {Real(1), t_max};
    }
    throw std::logic_error("unknown locus");
}

Complex locus_point(Locus l, const Real& param) {
    switch (l) {
        case Locus::L: return {Real(-0.5), param};
        case Locus::R: return {Real(0), param};
        default: {
            const Complex u = unit(param);
            const Real r = arc_radius(l);
            return {u.re * r, u.im * r};
        }
    }
}

Complex transport(const Complex& z, LineTransport which, Direction dir) {
    // Mobius action; the inverse uses the adjugate matrix.
    long a, b, c, d;
    if (which == LineTransport::GammaL) {
        a = -2, b = -1, c = 1, d = -1;
    } else {
        a = 1, b = -1, c = 1, d = 1;
    }
    if (dir == Direction::Inverse) {
        std::swap(a, d);
        b = -b;
        c = -c;
    }
    const Complex num = Complex(Real(a)) * z + Complex(Real(b));
    const Complex den = Complex(Real(c)) * z + Complex(Real(d));
    return num / den;
}

LineTransport transport_for(Locus l) {
    if (l == Locus::L) return LineTransport::GammaL;
    if (l == Locus::R) return LineTransport::GammaR;
    throw std::invalid_argument("transport is defined for the lines L and R");
}

namespace {

Real realness_tolerance(const FormEvaluator::Value& v, long bits) {
    const Real abs_v = abs(v.value);
    return bmp::pow(Real(10), Real(-bits) / 4) * bmp::max(Real(1), abs_v) + two_pow(-(working_bits() - 8)) * v.scale;
}

bool is_arc(Locus l) { return l == Locus::A || l == Locus::A2 || l == Locus::A3; }

}  // namespace

Real arc_profile(const FormEvaluator& f, Locus arc, const Real& theta) {
    if (!is_arc(arc)) throw std::invalid_argument("arc profile needs A, A2 or A3");
    FormEvaluator::Value v = f.evaluate(locus_point(arc, theta));
    v.value = unit(theta * f.weight() / 2) * v.value;
    if (bmp::abs(v.value.im) > realness_tolerance(v, f.context().precision))
        throw NotRealOnArc("rotated value is not real at theta = " + to_decimal(theta, 20) +
                           " (imaginary part " + to_decimal(v.value.im, 6) + ")");
    return v.value.re;
}

Real line_profile(const FormEvaluator& f, Locus line, const Real& t) {
    if (is_arc(line)) throw std::invalid_argument("line profile needs L or R");
    const FormEvaluator::Value v = f.evaluate(locus_point(line, t));
    if (bmp::abs(v.value.im) > realness_tolerance(v, f.context().precision))
        throw NotRealOnLine("value is not real at t = " + to_decimal(t, 20));
    return v.value.re;
}

Real transported_profile(const FormEvaluator& g, Locus line, const Real& t) {
    const Complex w = transport(locus_point(line, t), transport_for(line), Direction::Inverse);
    FormEvaluator::Value v = g.evaluate(w);
    v.value = unit(arg(w) * g.weight() / 2) * v.value;
    if (bmp::abs(v.value.im) > realness_tolerance(v, g.context().precision))
        throw NotRealOnLine("transported value is not real at t = " + to_decimal(t, 20));
    return v.value.re;
}

std::vector<std::pair<Real, Real>> sample_profile(const std::function<Real(const Real&)>& profile, const Real& lo,
                                                  const Real& hi, long samples) {
    std::vector<std::pair<Real, Real>> out;
    for (long i = 0; i <= samples; ++i) {
        const Real s = lo + (hi - lo) * i / samples;
        out.emplace_back(s, profile(s));
    }
    return out;
}

Real argument_change(const std::function<Complex(const Real&)>& path, const std::function<Complex(const Complex&)>& f,
                     long initial_steps) {
    const Real min_step = two_pow(-60);
    const Real half(0.5);
    auto value_at = [&](const Real& s) {
        const Complex v = f(path(s));
        if (v.re == 0 && v.im == 0) throw ContourTooClose("function vanishes on the contour");
        return v;
    };
    // A step is accepted when f moves by less than half its size on both halves, which
    // rules out a full turn of the argument hiding between two samples.
    const auto close = [&](const Complex& a, const Complex& b) { return abs(b / a - Complex(Real(1))) <= half; };

    Real total = 0;
    Real s0 = 0;
    Complex f0 = value_at(s0);
    for (long i = 1; i <= initial_steps; ++i) {
        std::vector<std::pair<Real, Complex>> stack{{Real(i) / initial_steps, Complex()}};
        stack.back().second = value_at(stack.back().first);
        while (!stack.empty()) {
            const Real sb = stack.back().first;
            const Complex fb = stack.back().second;
            const Real sm = (s0 + sb) / 2;
            const Complex fm = value_at(sm);
            if (!close(f0, fm) || !close(fm, fb)) {
                if (sb - s0 < min_step) throw ContourTooClose("argument steps collapsed near a zero on the contour");
                stack.emplace_back(sm, fm);
                continue;
            }
            total += arg(fm / f0) + arg(fb / fm);
            s0 = sb;
            f0 = fb;
            stack.pop_back();
        }
    }
    return total;
}

namespace {

long round_winding(const Real& total) {
    const Real turns = total / (2 * pi());
    const Real nearest = bmp::round(turns);
    if (bmp::abs(turns - nearest) > Real(0.1)) throw ContourTooClose("winding number is not close to an integer");
    return nearest.convert_to<long>();
}

}  // namespace

long winding_number(const std::function<Complex(const Complex&)>& f, const Complex& z0, const Real& radius) {
    const Real two_pi = 2 * pi();
    const auto path = [&](const Real& s) {
        const Complex u = unit(two_pi * s);
        return Complex(z0.re + radius * u.re, z0.im + radius * u.im);
    };
    return round_winding(argument_change(path, f, 32));
}

long count_zeros_contour(const FormEvaluator& f, long p, const Real& Y, double eps_d, double delta_d, long bits) {
    if (p != 1 && p != 2 && p != 3) throw std::invalid_argument("contour count supports p = 1, 2, 3");
    PrecisionScope scope(bits);
    const Real eps(eps_d), R = (1 - Real(delta_d)) / bmp::sqrt(Real(p));
    const Real x_left = Real(-0.5) - eps;
    if (R <= -x_left) throw std::invalid_argument("contour widening too large for the arc");
    const Real y_right = bmp::sqrt(R * R - eps * eps);
    const Real y_left = bmp::sqrt(R * R - x_left * x_left);
    if (Y <= y_left || Y <= y_right) throw std::invalid_argument("height must lie above the arc");
    const Real th_left = atan2(y_left, x_left);
    const Real th_right = atan2(y_right, eps);
    const auto fn = [&f](const Complex& z) { return f(z); };

    Real total = 0;
    total += argument_change([&](const Real& s) { return Complex(eps, y_right + (Y - y_right) * s); }, fn);
    total += argument_change([&](const Real& s) { return Complex(eps + (x_left - eps) * s, Y); }, fn);
    total += argument_change([&](const Real& s) { return Complex(x_left, Y + (y_left - Y) * s); }, fn);
    total += argument_change(
        [&](const Real& s) {
            const Complex u = unit(th_left + (th_right - th_left) * s);
            return Complex(R * u.re, R * u.im);
        },
        fn);
    return round_winding(total);
}

namespace {

struct ProfileZero {
    Real param;
    Real width;
    bool even_order = false;
    bool endpoint = false;
};

int sign_of(const Real& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

ProfileZero bisect(const std::function<Real(const Real&)>& prof, Real a, Real b, Real fa, long bits) {
    const int sa = sign_of(fa);
    for (int it = 0; it < 4 * bits; ++it) {
        if (b - a <= two_pow(-bits) * bmp::max(Real(1), bmp::abs(a))) break;
        const Real m = (a + b) / 2;
        const Real fm = prof(m);
        if (fm == 0) return {m, Real(0)};
        if (sign_of(fm) == sa)
            a = m;
        else
            b = m;
    }
    return {(a + b) / 2, b - a};
}

std::vector<ProfileZero> scan_profile(const std::function<Real(const Real&)>& prof, const Real& lo, const Real& hi,
                                      long samples, long bits) {
    if (samples < 16) throw std::invalid_argument("at least 16 samples are required");
    const auto pts = sample_profile(prof, lo, hi, samples);
    Real maxabs = 0;
    for (const auto& [s, v] : pts) maxabs = bmp::max(maxabs, bmp::abs(v));
    if (maxabs == 0) throw std::runtime_error("profile vanishes identically on the sample grid");
    const Real zero_thr = maxabs * two_pow(-bits / 2);
    const auto is_zero = [&](size_t i) { return bmp::abs(pts[i].second) <= zero_thr; };

    std::vector<ProfileZero> out;
    const size_t n = pts.size();
    for (size_t i = 0; i < n; ++i)
        if (is_zero(i)) {
            ProfileZero z{pts[i].first, Real(0)};
            z.endpoint = (i == 0 || i + 1 == n);
            out.push_back(z);
        }
    for (size_t i = 0; i + 1 < n; ++i) {
        if (is_zero(i) || is_zero(i + 1)) continue;
        if (sign_of(pts[i].second) != sign_of(pts[i + 1].second))
            out.push_back(bisect(prof, pts[i].first, pts[i + 1].first, pts[i].second, bits));
    }
    // Local minima of |profile| without a sign change: look for a touching zero.
    const Real phi = (bmp::sqrt(Real(5)) - 1) / 2;
    for (size_t i = 1; i + 1 < n; ++i) {
        if (is_zero(i - 1) || is_zero(i) || is_zero(i + 1)) continue;
        const int sg = sign_of(pts[i].second);
        if (sign_of(pts[i - 1].second) != sg || sign_of(pts[i + 1].second) != sg) continue;
        const Real ai = bmp::abs(pts[i].second);
        if (ai > bmp::abs(pts[i - 1].second) || ai > bmp::abs(pts[i + 1].second)) continue;
        if (ai > maxabs * Real(1e-3)) continue;
        Real a = pts[i - 1].first, b = pts[i + 1].first;
        Real x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        Real f1 = prof(x1), f2 = prof(x2);
        bool split = false;
        for (int it = 0; it < 2 * bits; ++it) {
            if (sign_of(f1) != sg || sign_of(f2) != sg) {
                // Two nearby simple zeros.
                const Real xm = sign_of(f1) != sg ? x1 : x2;
                const Real fm = sign_of(f1) != sg ? f1 : f2;
                if (fm != 0) {
                    out.push_back(bisect(prof, pts[i - 1].first, xm, pts[i - 1].second, bits));
                    out.push_back(bisect(prof, xm, pts[i + 1].first, fm, bits));
                } else {
                    out.push_back({xm, Real(0)});
                }
                split = true;
                break;
            }
            if (b - a <= two_pow(-bits / 2) * (hi - lo)) break;
            if (bmp::abs(f1) < bmp::abs(f2)) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = prof(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = prof(x2);
            }
        }
        if (split) continue;
        const Real xm = (a + b) / 2;
        if (bmp::abs(prof(xm)) <= zero_thr) {
            ProfileZero z{xm, b - a};
            z.even_order = true;
            out.push_back(z);
        }
    }
    std::sort(out.begin(), out.end(), [](const ProfileZero& x, const ProfileZero& y) { return x.param < y.param; });
    return out;
}

std::vector<ZeroRecord> build_records(const std::vector<ProfileZero>& zeros, const std::string& locus,
                                      const std::function<Complex(const Real&)>& point,
                                      const std::function<Complex(const Complex&)>& fn, long weight,
                                      const std::string& id, long bits) {
    std::vector<ZeroRecord> out;
    const Real radius = bmp::min(Real(1e-6), two_pow(-bits / 8));
    for (const auto& pz : zeros) {
        ZeroRecord r;
        r.locus = locus;
        r.param = pz.param;
        r.z = point(pz.param);
        r.residual = abs(fn(r.z));
        r.width = pz.width;
        r.weight = weight;
        r.form_id = id;
        r.even_order_flag = pz.even_order;
        r.endpoint = pz.endpoint;
        r.multiplicity = winding_number(fn, r.z, radius);
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<ZeroRecord> find_zeros_on_arc(const FormEvaluator& f, Locus arc, long samples) {
    if (!is_arc(arc)) throw std::invalid_argument("arc search needs A, A2 or A3");
    if (f.level() != 1 && f.level() != locus_level(arc))
        throw std::invalid_argument("form level does not match the arc");
    const long P = f.context().precision;
    PrecisionScope scope(P + f.context().guard_bits);
    const auto [lo, hi] = locus_interval(arc);
    const auto prof = [&](const Real& th) { return arc_profile(f, arc, th); };
    const auto zeros = scan_profile(prof, lo, hi, samples, P);
    return build_records(
        zeros, locus_name(arc), [&](const Real& th) { return locus_point(arc, th); },
        [&](const Complex& z) { return f(z); }, f.weight(), f.id(), P);
}

std::vector<ZeroRecord> find_zeros_on_line(const FormEvaluator& f, Locus line, const Real& t_max, long samples) {
    const long P = f.context().precision;
    PrecisionScope scope(P + f.context().guard_bits);
    const auto [lo, hi] = locus_interval(line, t_max);
    const auto prof = [&](const Real& t) { return line_profile(f, line, t); };
    const auto zeros = scan_profile(prof, lo, hi, samples, P);
    return build_records(
        zeros, locus_name(line), [&](const Real& t) { return locus_point(line, t); },
        [&](const Complex& z) { return f(z); }, f.weight(), f.id(), P);
}

std::vector<ZeroRecord> find_zeros_transported(const FormEvaluator& g, Locus line, const Real& t_max, long samples) {
    if (g.level() != 1) throw std::invalid_argument("transport needs a level-one form");
    const long P = g.context().precision;
    PrecisionScope scope(P + g.context().guard_bits);
    const auto [lo, hi] = locus_interval(line, t_max);
    const LineTransport which = transport_for(line);
    const auto prof = [&](const Real& t) { return transported_profile(g, line, t); };
    const auto zeros = scan_profile(prof, lo, hi, samples, P);
    return build_records(
        zeros, locus_name(line), [&](const Real& t) { return locus_point(line, t); },
        [&](const Complex& z) { return g(transport(z, which, Direction::Inverse)); }, g.weight(),
        "transport(" + g.id() + ")", P);
}

}  // namespace mfzl
