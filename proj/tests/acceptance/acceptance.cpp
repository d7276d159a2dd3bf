// End-to-end acceptance checks. Each check prints one PASS/FAIL line with its
// wall time; the process exits non-zero if any check fails or overruns its budget.

#include "mfzl/classify.hpp"
#include "mfzl/cli.hpp"
#include "mfzl/cm.hpp"
#include "mfzl/forms.hpp"
#include "mfzl/jpoly.hpp"
#include "mfzl/locator.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace mfzl;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail.clear();
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

const std::string kGoldenDir = std::string(MFZL_SOURCE_DIR) + "/golden";

std::set<std::string> golden_file(const std::string& name) {
    std::ifstream in(kGoldenDir + "/" + name + ".txt");
    std::set<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') lines.insert(line);
    return lines;
}

std::vector<std::string> cli_lines(std::vector<std::string> args) {
    args.insert(args.begin(), "mfzl");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    if (cli::run(static_cast<int>(argv.size()), argv.data(), out, err) != 0)
        throw std::runtime_error("mfzl failed: " + err.str());
    std::vector<std::string> lines;
    std::istringstream in(out.str());
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// Compares the cm subcommand output with the golden file and with the expected surds.
Outcome fricke_list(long p, const std::set<std::string>& expected) {
    Outcome o;
    const auto lines = cli_lines({"cm", "--locus", "Ap", "--p", std::to_string(p)});
    const std::set<std::string> got(lines.begin(), lines.end());
    if (got.size() != lines.size()) o.fail("repeated entries");
    if (got != golden_file("fricke-arc-" + std::to_string(p))) o.fail("differs from golden file");
    std::set<std::string> surds;
    for (const auto& l : lines) surds.insert(l.substr(0, l.find(' ')));
    if (surds != expected) o.fail("surds differ from the expected points");
    if (o.ok) o.detail = std::to_string(lines.size()) + " points";
    return o;
}

Outcome check_fricke_2() { return fricke_list(2, {"i*sqrt(2)/2", "(-1+i*sqrt(7))/4", "(-1+i)/2"}); }

Outcome check_fricke_3() {
    return fricke_list(3, {"i*sqrt(3)/3", "(-1+i*sqrt(11))/6", "(-1+i*sqrt(2))/3", "(-3+i*sqrt(3))/6"});
}

// Brute force over forms (a, b, c) with entries <= 1000 whose root lies on the line (b = a on L,
// b = 0 on R) inside the closed fundamental domain and equals -1/2 + i sqrt|D|/(2a') resp.
// i sqrt|D|/(2a') for an admissible pair (D, a') with sqrt|D|/2 < 2.
std::set<std::pair<long, long>> brute_force_line(bool left) {
    std::vector<long> discs;
    for (long d = 3; d < 16; ++d)
        if ((left && d % 4 == 3) || (!left && d % 4 == 0)) discs.push_back(d);
    std::set<std::pair<long, long>> points;  // (|Df|, a) reduced so that the point is |Df|/(4a^2) in lowest terms
    for (long a = 1; a <= 1000; ++a) {
        const long b = left ? a : 0;
        for (long c = 1; c <= 1000; ++c) {
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            const long df = 4 * a * c - b * b;
            if (df <= 0) continue;
            // Im^2 = df / (4 a^2); inside the domain: Im^2 >= 3/4 on L, >= 1 on R.
            if (left ? df < 3 * a * a : df < 4 * a * a) continue;
            bool admissible = false;
            for (long d : discs) {
                const long amax = left ? static_cast<long>(std::sqrt(d / 3.0)) : static_cast<long>(std::sqrt(d) / 2);
                for (long ap = 1; ap <= amax; ++ap)
                    if (d * a * a == df * ap * ap) admissible = true;
            }
            if (!admissible) continue;
            const long g = std::gcd(df, 4 * a * a);
            points.insert({df / g, 4 * a * a / g});
        }
    }
    return points;
}

std::set<std::pair<long, long>> as_height_squares(const std::vector<CMPoint>& pts) {
    std::set<std::pair<long, long>> out;
    for (const auto& p : pts) {
        const long df = p.abs_disc(), den = 4 * p.form.a * p.form.a;
        const long g = std::gcd(df, den);
        out.insert({df / g, den / g});
    }
    return out;
}

Outcome check_lines() {
    Outcome o;
    const auto l = cli_lines({"cm", "--locus", "L", "--height", "2"});
    const auto r = cli_lines({"cm", "--locus", "R", "--height", "2"});
    if (std::set<std::string>(l.begin(), l.end()) != golden_file("line-L")) o.fail("L list differs from golden file");
    if (std::set<std::string>(r.begin(), r.end()) != golden_file("line-R")) o.fail("R list differs from golden file");
    if (l.size() != 5) o.fail("L list has " + std::to_string(l.size()) + " points");
    if (r.size() != 3) o.fail("R list has " + std::to_string(r.size()) + " points");

    const auto lpts = enumerate_line_L(100000, Rational(2));
    const auto rpts = enumerate_line_R(100000, Rational(2));
    for (const auto& p : lpts)
        if (p.real_part() != Rational(-1, 2)) o.fail("L point off the line");
    for (const auto& p : rpts)
        if (p.real_part() != 0) o.fail("R point off the line");
    if (as_height_squares(lpts) != brute_force_line(true)) o.fail("L list disagrees with brute force");
    if (as_height_squares(rpts) != brute_force_line(false)) o.fail("R list disagrees with brute force");
    if (o.ok) o.detail = "5 points on L, 3 on R, brute force agrees";
    return o;
}

bool is_corner(const Complex& z, long D) {
    const Complex target = CMPoint{principal_form(D), "", 0, 0}.value();
    return abs(z - target) < Real("1e-30");
}

Outcome check_eisenstein_arc() {
    Outcome o;
    PrecisionScope scope(320);
    const Real tol("1e-20");
    long zeros_total = 0, interior = 0;
    for (long k = 12; k <= 40; k += 2) {
        const FormEvaluator f(FormExpr::eisenstein(k));
        const auto zs = find_zeros_on_arc(f, Locus::A);
        long with_mult = 0;
        for (const auto& z : zs) {
            with_mult += z.multiplicity;
            if (!(z.residual < tol)) o.fail("E" + std::to_string(k) + " residual too large");
            const Verdict v = classify_zero(z);
            if (z.endpoint) {
                const bool at_i = is_corner(z.z, -4), at_rho = is_corner(z.z, -3);
                const bool ok = (at_i && v.kind == Verdict::Kind::CM && v.D == -4) ||
                                (at_rho && v.kind == Verdict::Kind::CM && v.D == -3);
                if (!ok) o.fail("E" + std::to_string(k) + " endpoint zero verdict " + v.label());
            } else {
                ++interior;
                if (v.kind != Verdict::Kind::TranscendentalCandidate)
                    o.fail("E" + std::to_string(k) + " interior zero verdict " + v.label());
            }
        }
        const long counted = count_zeros_contour(f, 1, Real(10));
        if (counted != with_mult)
            o.fail("E" + std::to_string(k) + ": contour " + std::to_string(counted) + " vs arc " +
                   std::to_string(with_mult));
        zeros_total += with_mult;
    }
    if (o.ok)
        o.detail = std::to_string(zeros_total) + " zeros with multiplicity, " + std::to_string(interior) +
                   " interior candidates";
    return o;
}

Outcome check_fricke_arcs() {
    Outcome o;
    PrecisionScope scope(320);
    const Real tol("1e-20");
    const std::map<long, std::set<long>> allowed{{2, {-4, -7, -8}}, {3, {-3, -8, -11, -12}}};
    long total = 0;
    std::map<std::string, long> tally;
    for (long p : {2L, 3L}) {
        const Locus arc = p == 2 ? Locus::A2 : Locus::A3;
        const Real radius = 1 / sqrt(Real(p));
        for (long k = 4; k <= 20; k += 2) {
            const std::string tag = "E" + std::to_string(k) + "," + std::to_string(p);
            const FormEvaluator f(FormExpr::fricke_eisenstein(k, p));
            const auto zs = find_zeros_on_arc(f, arc);
            long with_mult = 0;
            for (const auto& z : zs) {
                with_mult += z.multiplicity;
                if (!(abs(abs(z.z) - radius) < tol)) o.fail(tag + " zero off the arc");
                if (!(z.residual < tol)) o.fail(tag + " residual too large");
                const Verdict v = classify_zero(z);
                ++tally[v.label()];
                if (v.kind == Verdict::Kind::CM && !allowed.at(p).count(v.D)) o.fail(tag + " verdict " + v.label());
                if (v.kind == Verdict::Kind::Unresolved) o.fail(tag + " unresolved zero");
            }
            const long counted = count_zeros_contour(f, p, Real(10));
            if (counted != with_mult)
                o.fail(tag + ": contour " + std::to_string(counted) + " vs arc " + std::to_string(with_mult));
            total += with_mult;
        }
    }
    if (o.ok) {
        o.detail = std::to_string(total) + " zeros;";
        for (const auto& [label, n] : tally) o.detail += " " + label + " x" + std::to_string(n);
    }
    return o;
}

Outcome check_jpoly_round_trip() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<long> coeff(-1000, 1000), degree(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const long d = degree(rng);
        std::vector<Rational> P(static_cast<size_t>(d + 1));
        for (auto& c : P) c = coeff(rng);
        while (sgn(P.back()) == 0) P.back() = coeff(rng);
        const long k = 12 * d;
        const long N = required_truncation(k, 0) + 1;
        const QSeries j = jfunction(N + d);
        QSeries pj = QSeries::constant(P[0]);
        QSeries jpow = QSeries::constant(Rational(1));
        for (long i = 1; i <= d; ++i) {
            jpow = jpow * j;
            pj = pj + P[static_cast<size_t>(i)] * jpow;
        }
        const QSeries f = pj * pow(delta(N + d), d);
        JPolynomial expected{P, k, 0};
        const JPolynomial q = reduced_jpoly(f, k);
        const JPolynomial full = extract_pf(f, k);
        if (!(q == expected)) o.fail("reduced polynomial mismatch at trial " + std::to_string(trial));
        if (full.coeffs != poly_pow(P, 12)) o.fail("twelfth-power mismatch at trial " + std::to_string(trial));
        if (!o.ok) break;
    }
    if (o.ok) o.detail = "200 polynomials, degree <= 4, height <= 1000";
    return o;
}

Outcome check_series_identities() {
    Outcome o;
    const long N = 64;
    const QSeries e4c = pow(eisenstein(4, N), 3);
    const QSeries e6s = pow(eisenstein(6, N), 2);
    const QSeries lhs = e4c - e6s;
    const QSeries rhs = Rational(1728) * delta(N);
    const QSeries jd = jfunction(N + 1) * delta(N + 1);
    if (lhs.truncation_index() < N || jd.truncation_index() < N) o.fail("truncation below 64");
    for (long n = 0; n < N; ++n) {
        if (lhs.coeff_index(n) != rhs.coeff_index(n)) o.fail("E4^3 - E6^2 differs at q^" + std::to_string(n));
        if (jd.coeff_index(n) != e4c.coeff_index(n)) o.fail("j Delta differs at q^" + std::to_string(n));
        if (!o.ok) break;
    }
    if (o.ok) o.detail = "64 coefficients each";
    return o;
}

Outcome check_certificates() {
    Outcome o;
    const FormExpr guaranteed =
        FormExpr::delta() * (FormExpr::j() - FormExpr::constant(Rational(1, 2)));
    const FormExpr not_met = scale(Rational(1, 2), FormExpr::delta() * (FormExpr::j() - FormExpr::constant(1728)));
    const long n = required_truncation(12, 0);
    const auto c1 = integrality_certificate(expand(guaranteed, n), 12);
    const auto c2 = integrality_certificate(expand(not_met, n), 12);
    if (c1.report.verdict != IntegralityReport::Verdict::Guaranteed) o.fail("first example: " + c1.report.verdict_text());
    if (c2.report.verdict != IntegralityReport::Verdict::HypothesesNotMet)
        o.fail("second example: " + c2.report.verdict_text());

    PrecisionScope scope(320);
    const FormEvaluator f(guaranteed);
    const auto zs = find_zeros_on_arc(f, Locus::A);
    long candidates = 0;
    for (const auto& z : zs)
        if (classify_zero(z).kind == Verdict::Kind::TranscendentalCandidate) ++candidates;
    if (candidates < 1) o.fail("no transcendental candidate among " + std::to_string(zs.size()) + " zeros");
    if (o.ok) o.detail = "verdicts as expected, " + std::to_string(candidates) + " candidate zero(s)";
    return o;
}

Outcome check_coset_products() {
    Outcome o;
    long count = 0;
    for (long p : {2L, 3L})
        for (long k = 4; k <= 12; k += 2) {
            const std::string tag = "E" + std::to_string(k) + "," + std::to_string(p);
            try {
                const QSeries s = coset_product(FormExpr::fricke_eisenstein(k, p), 8);
                if (s.ramification() != 1) o.fail(tag + " ramified");
                if (s.truncation_index() < 8) o.fail(tag + " truncated below 8");
                if (s.is_zero()) o.fail(tag + " vanished");
                ++count;
            } catch (const RamificationLeak& e) {
                o.fail(tag + " ramification leak: " + e.what());
            } catch (const IrrationalCoefficient& e) {
                o.fail(tag + " irrational coefficient: " + e.what());
            }
        }
    if (o.ok) o.detail = std::to_string(count) + " products, all rational with integral exponents";
    return o;
}

Outcome check_transport() {
    Outcome o;
    PrecisionScope scope(320);
    const FormEvaluator g(FormExpr::eisenstein(12));
    const auto arc = find_zeros_on_arc(g, Locus::A);
    const auto moved = find_zeros_transported(g, Locus::R, sqrt(Real(3)));
    if (arc.size() != moved.size())
        o.fail(std::to_string(arc.size()) + " arc zeros vs " + std::to_string(moved.size()) + " on R");
    Real worst = 0;
    for (const auto& a : arc) {
        const Complex image = transport(a.z, LineTransport::GammaR, Direction::Forward);
        Real best = -1;
        for (const auto& m : moved) {
            const Real d = abs(image - m.z);
            if (best < 0 || d < best) best = d;
        }
        if (best < 0 || !(best < Real("1e-20"))) o.fail("image of an arc zero not matched");
        if (best > worst) worst = best;
    }
    if (o.ok) o.detail = std::to_string(moved.size()) + " zero(s), max distance " + to_decimal(worst, 3);
    return o;
}

struct Check {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Check> checks = {
        {1, "CM candidates on |z| = 1/sqrt(2)", 1, check_fricke_2},
        {2, "CM candidates on |z| = 1/sqrt(3)", 1, check_fricke_3},
        {3, "CM candidates on L and R below height 2", 5, check_lines},
        {4, "zeros of E_k, k = 12..40, on the unit arc", 120, check_eisenstein_arc},
        {5, "zeros of E_{k,p} on |z| = 1/sqrt(p), p = 2, 3", 180, check_fricke_arcs},
        {6, "polynomial in j round trip", 60, check_jpoly_round_trip},
        {7, "E4^3 - E6^2 = 1728 Delta and j Delta = E4^3", 10, check_series_identities},
        {8, "integrality certificates", 30, check_certificates},
        {9, "coset products are rational level-one series", 30, check_coset_products},
        {10, "transport of E12 zeros from the arc to R", 10, check_transport},
    };
    int failures = 0;
    for (const auto& c : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_seconds)
            o.fail("took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget_seconds) + " s");
        if (!o.ok) ++failures;
        std::cout << (o.ok ? "PASS" : "FAIL") << " [" << std::setw(2) << c.id << "] " << c.name << " ("
                  << std::fixed << std::setprecision(2) << secs << " s)";
        if (!o.detail.empty()) std::cout << ": " << o.detail;
        std::cout << std::endl;
    }
    std::cout << (failures ? std::to_string(failures) + " of 10 checks failed" : std::string("all 10 checks passed"))
              << std::endl;
    return failures ? 1 : 0;
}
