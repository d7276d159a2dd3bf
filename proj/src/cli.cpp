#include "mfzl/cli.hpp"

#include "mfzl/classify.hpp"
#include "mfzl/io.hpp"
#include "mfzl/parse.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

namespace mfzl::cli {

long default_precision() {
    if (const char* env = std::getenv("MFZL_PRECISION")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 64) return v;
    }
    return 256;
}

void validate(const RunConfig& cfg, bool expansion_only) {
    if (cfg.precision < 64) throw std::invalid_argument("precision must be at least 64 bits");
    if (expansion_only ? cfg.truncation < 0 : (cfg.truncation != 0 && cfg.truncation < 8))
        throw std::invalid_argument(expansion_only ? "truncation must be non-negative" : "truncation must be at least 8");
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "table")
        throw std::invalid_argument("format must be json, csv or table");
    if (cfg.samples < 4) throw std::invalid_argument("samples must be at least 4");
    if (cfg.d_bound < 3) throw std::invalid_argument("dbound must be at least 3");
}

namespace {

std::string cm_line(const CMPoint& pt) {
    std::ostringstream os;
    os << pt.surd() << " D=" << pt.D() << " (" << pt.form.a << "," << pt.form.b << "," << pt.form.c << ")";
    return os.str();
}

struct CertificateExample {
    const char* expr;
};
constexpr CertificateExample kCertificateExamples[] = {
    {"mul(Delta,sub(J,const(1/2)))"},
    {"scale(1/2,mul(Delta,sub(J,const(1728))))"},
    {"Delta"},
};

/// Expands far enough to see the valuation, then to the truncation P_f needs.
QSeries expand_for_jpoly(const FormExpr& expr, long k, long truncation) {
    long n = 8;
    QSeries probe = expand(expr, n);
    while (probe.is_zero() && n < 4096) probe = expand(expr, n *= 2);
    if (probe.is_zero()) throw std::invalid_argument("form vanishes to the largest probed truncation");
    const long need = required_truncation(k, probe.valuation_index());
    return expand(expr, std::max(need, truncation));
}

std::string certificate_line(const std::string& text) {
    const FormExpr expr = parse_form(text);
    const long k = expr.weight();
    const QSeries f = expand_for_jpoly(expr, k, 0);
    const IntegralityCertificate cert = integrality_certificate(f, k);
    return text + " | " + reduced_jpoly(f, k).to_string() + " | " + cert.report.verdict_text();
}

std::vector<std::string> cm_lines(const std::vector<CMPoint>& pts) {
    std::vector<std::string> out;
    for (const auto& p : pts) out.push_back(cm_line(p));
    return out;
}

}  // namespace

const std::vector<GoldenTarget>& golden_targets() {
    static const std::vector<GoldenTarget> targets = {
        {"arc-A", "CM points on the arc |z| = 1"},
        {"fricke-arc-2", "possible CM zeros of E_{k,2} on |z| = 1/sqrt(2)"},
        {"fricke-arc-3", "possible CM zeros of E_{k,3} on |z| = 1/sqrt(3)"},
        {"line-L", "CM points on Re z = -1/2 below height 2"},
        {"line-R", "CM points on Re z = 0 below height 2"},
        {"coset-exceptions-2", "exceptional coset points for p = 2"},
        {"coset-exceptions-3", "exceptional coset points for p = 3"},
        {"coset-exceptions-5", "exceptional coset points for p = 5"},
        {"integrality-certificates", "integrality verdicts of the example forms"},
    };
    return targets;
}

std::vector<std::string> golden_lines(const std::string& target) {
    if (target == "arc-A") return cm_lines(enumerate_arc_A());
    if (target == "fricke-arc-2") return cm_lines(enumerate_fricke_arc(2));
    if (target == "fricke-arc-3") return cm_lines(enumerate_fricke_arc(3));
    if (target == "line-L") return cm_lines(enumerate_line_L(100000, Rational(2)));
    if (target == "line-R") return cm_lines(enumerate_line_R(100000, Rational(2)));
    if (target == "coset-exceptions-2") return cm_lines(coset_exception_set(2));
    if (target == "coset-exceptions-3") return cm_lines(coset_exception_set(3));
    if (target == "coset-exceptions-5") return cm_lines(coset_exception_set(5));
    if (target == "integrality-certificates") {
        std::vector<std::string> out;
        for (const auto& ex : kCertificateExamples) out.push_back(certificate_line(ex.expr));
        return out;
    }
    throw std::invalid_argument("unknown golden target '" + target + "'");
}

namespace {

std::set<std::string> read_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file " + path);
    std::set<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lines.insert(line);
    }
    return lines;
}

}  // namespace

int verify_paper(const std::string& golden_dir, const std::string& only, std::ostream& out) {
    bool selected = only.empty();
    for (const auto& t : golden_targets()) selected = selected || t.name == only;
    if (!selected) throw std::invalid_argument("unknown golden target '" + only + "'");

    int failures = 0;
    for (const auto& t : golden_targets()) {
        if (!only.empty() && t.name != only) continue;
        const std::vector<std::string> computed_list = golden_lines(t.name);
        const std::set<std::string> computed(computed_list.begin(), computed_list.end());
        std::set<std::string> expected;
        try {
            expected = read_golden(golden_dir + "/" + t.name + ".txt");
        } catch (const std::runtime_error& e) {
            out << "FAIL " << t.name << ": " << e.what() << "\n";
            ++failures;
            continue;
        }
        std::vector<std::string> missing, extra;
        std::set_difference(expected.begin(), expected.end(), computed.begin(), computed.end(),
                            std::back_inserter(missing));
        std::set_difference(computed.begin(), computed.end(), expected.begin(), expected.end(),
                            std::back_inserter(extra));
        const bool duplicates = computed.size() != computed_list.size();
        if (missing.empty() && extra.empty()) {
            out << "PASS " << t.name << " (" << expected.size() << " entries)";
            if (duplicates) out << " [computed list repeats entries]";
            out << "\n";
            continue;
        }
        ++failures;
        out << "FAIL " << t.name << "\n";
        for (const auto& m : missing) out << "  missing:    " << m << "\n";
        for (const auto& x : extra) out << "  unexpected: " << x << "\n";
    }
    out << (failures ? "verify-paper: " + std::to_string(failures) + " target(s) failed\n"
                     : std::string("verify-paper: all targets passed\n"));
    return failures ? kGoldenMismatch : kOk;
}

namespace {

int table_digits(long precision) { return std::min(30, decimal_digits(precision) - 4); }

void emit_json(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

// ---- expand ----

void cmd_expand(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    const FormExpr expr = parse_form(text);
    const long n = cfg.truncation ? cfg.truncation : 10;  // 0 means the default of 10 terms
    const QSeries s = expand(expr, n);
    if (cfg.format == "json") {
        Json j = to_json(s);
        j["form"] = expr.to_string();
        j["weight"] = expr.weight();
        emit_json(out, j);
        return;
    }
    const Json terms = to_json(s)["terms"];
    if (cfg.format == "csv") {
        out << csv_record({"exponent", "coefficient"});
        for (const auto& t : terms) out << csv_record({t[0].get<std::string>(), t[1].get<std::string>()});
        return;
    }
    out << expr.to_string() << "  weight " << expr.weight() << "  truncated at q^" << s.truncation().get_str()
        << "\n";
    for (const auto& t : terms)
        out << std::setw(10) << t[0].get<std::string>() << "  " << t[1].get<std::string>() << "\n";
}

// ---- jpoly ----

void cmd_jpoly(const std::string& text, bool reduced, const RunConfig& cfg, std::ostream& out) {
    const FormExpr expr = parse_form(text);
    if (expr.level() != 1) throw std::invalid_argument("jpoly needs a level-one form");
    const long k = cfg.weight ? cfg.weight : expr.weight();
    const QSeries f = expand_for_jpoly(expr, k, cfg.truncation);
    const JPolynomial P = reduced ? reduced_jpoly(f, k) : extract_pf(f, k);
    const IntegralityReport report = integrality_report(reduced ? extract_pf(f, k) : P);
    if (cfg.format == "json") {
        Json j;
        j["form"] = expr.to_string();
        j["weight"] = k;
        j["valuation"] = P.valuation;
        j["kind"] = reduced ? "f/Delta^(k/12)" : "f^12/Delta^k";
        j["polynomial"] = to_json(P);
        j["text"] = P.to_string();
        j["integrality"] = to_json(report);
        emit_json(out, j);
        return;
    }
    if (cfg.format == "csv") {
        out << csv_record({"degree", "coefficient"});
        for (size_t i = 0; i < P.coeffs.size(); ++i) out << csv_record({std::to_string(i), P.coeffs[i].get_str()});
        return;
    }
    out << (reduced ? "f/Delta^(k/12) = " : "f^12/Delta^k = ") << P.to_string() << "  (X = j)\n";
    out << "weight " << k << ", valuation " << P.valuation << ", degree " << P.degree() << "\n";
    out << "integrality: " << report.verdict_text() << "\n";
}

// ---- zeros ----

std::vector<ZeroRecord> locate(const FormEvaluator& f, Locus locus, const RunConfig& cfg) {
    if (locus == Locus::L || locus == Locus::R) {
        PrecisionScope scope(cfg.precision);
        const Real t_max = parse_real(cfg.height.empty() ? "2" : cfg.height);
        return find_zeros_on_line(f, locus, t_max, cfg.samples);
    }
    return find_zeros_on_arc(f, locus, cfg.samples);
}

void print_zero_rows(const std::vector<ZeroRecord>& zeros, const std::vector<Verdict>& verdicts,
                     const RunConfig& cfg, std::ostream& out) {
    const int full = decimal_digits(cfg.precision);
    if (cfg.format == "json") {
        Json arr = Json::array();
        for (size_t i = 0; i < zeros.size(); ++i) {
            Json row = to_json(zeros[i], full);
            row["classification"] = to_json(verdicts[i], full);
            arr.push_back(std::move(row));
        }
        emit_json(out, arr);
        return;
    }
    if (cfg.format == "csv") {
        out << csv_record({"locus", "param", "re", "im", "residual", "verdict"});
        for (size_t i = 0; i < zeros.size(); ++i) {
            const auto& z = zeros[i];
            out << csv_record({z.locus, to_decimal(z.param, full), to_decimal(z.z.re, full), to_decimal(z.z.im, full),
                               to_decimal(z.residual, 6), verdicts[i].label()});
        }
        return;
    }
    const int d = table_digits(cfg.precision);
    out << std::left << std::setw(d + 8) << "param" << std::setw(2 * d + 20) << "z" << std::setw(14) << "residual"
        << "verdict\n";
    for (size_t i = 0; i < zeros.size(); ++i) {
        const auto& z = zeros[i];
        std::string label = verdicts[i].label();
        if (z.multiplicity > 1) label += "  multiplicity " + std::to_string(z.multiplicity);
        if (z.even_order_flag) label += "  even-order";
        out << std::setw(d + 8) << to_decimal(z.param, d) << std::setw(2 * d + 20) << to_decimal(z.z, d)
            << std::setw(14) << to_decimal(z.residual, 3) << label << "\n";
    }
}

void cmd_zeros(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    const FormExpr expr = parse_form(text);
    EvalContext ctx;
    ctx.precision = cfg.precision;
    ctx.truncation = cfg.truncation;
    const FormEvaluator f(expr, ctx);
    const Locus locus = parse_locus(cfg.locus);
    const std::vector<ZeroRecord> zeros = locate(f, locus, cfg);
    RecognitionBounds bounds;
    bounds.bits = cfg.precision;
    std::vector<Verdict> verdicts;
    for (const auto& z : zeros) verdicts.push_back(classify_zero(z, bounds));
    print_zero_rows(zeros, verdicts, cfg, out);
}

// ---- cm ----

std::vector<CMPoint> cm_points(const RunConfig& cfg) {
    const std::string& l = cfg.locus;
    const Rational height = cfg.height.empty() ? Rational(2) : parse_rational(cfg.height);
    if (sgn(height) <= 0) throw std::invalid_argument("height must be positive");
    if (l == "A") return enumerate_arc_A(cfg.d_bound);
    if (l == "A2") return enumerate_fricke_arc(2, cfg.d_bound);
    if (l == "A3") return enumerate_fricke_arc(3, cfg.d_bound);
    if (l == "Ap") {
        if (cfg.p != 2 && cfg.p != 3) throw std::invalid_argument("--locus Ap needs --p 2 or --p 3");
        return enumerate_fricke_arc(cfg.p, cfg.d_bound);
    }
    if (l == "L") return enumerate_line_L(cfg.d_bound, height);
    if (l == "R") return enumerate_line_R(cfg.d_bound, height);
    if (l == "B") {
        if (cfg.p < 2) throw std::invalid_argument("--locus B needs a prime --p");
        return coset_exception_set(cfg.p);
    }
    throw std::invalid_argument("unknown locus '" + l + "' (expected A, A2, A3, Ap, L, R or B)");
}

void cmd_cm(const RunConfig& cfg, std::ostream& out) {
    const std::vector<CMPoint> pts = cm_points(cfg);
    if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& p : pts) arr.push_back(to_json(p));
        emit_json(out, arr);
        return;
    }
    if (cfg.format == "csv") {
        out << csv_record({"a", "b", "c", "D", "z", "locus"});
        for (const auto& p : pts)
            out << csv_record({std::to_string(p.form.a), std::to_string(p.form.b), std::to_string(p.form.c),
                               std::to_string(p.D()), p.surd(), p.locus});
        return;
    }
    std::set<std::string> seen;
    for (const auto& p : pts) {
        const std::string line = cm_line(p);
        out << line;
        if (!seen.insert(line).second) out << "  (repeated)";
        out << "\n";
    }
}

// ---- classify ----

void cmd_classify(const std::string& re, const std::string& im, const RunConfig& cfg, std::ostream& out) {
    PrecisionScope scope(cfg.precision + 64);
    const Complex z(parse_real(re), parse_real(im));
    if (!(z.im > 0)) throw std::invalid_argument("the point must lie in the upper half-plane");
    RecognitionBounds bounds;
    bounds.bits = cfg.precision;
    const Verdict v = classify_point(z, bounds);
    const int digits = cfg.format == "table" ? table_digits(cfg.precision) : decimal_digits(cfg.precision);
    if (cfg.format == "json") {
        emit_json(out, to_json(v, digits));
        return;
    }
    if (cfg.format == "csv") {
        out << csv_record({"re", "im", "verdict", "D", "reason"});
        out << csv_record({to_decimal(z.re, digits), to_decimal(z.im, digits), v.label(),
                           v.kind == Verdict::Kind::CM ? std::to_string(v.D) : "", v.reason});
        return;
    }
    out << "verdict: " << v.label() << "\n";
    if (v.kind == Verdict::Kind::CM)
        out << "form: (" << v.form.a << "," << v.form.b << "," << v.form.c << ")  class number " << v.class_number
            << "\n";
    out << "j: " << to_decimal(v.j_value, digits) << "\n";
    out << "reason: " << v.reason << "\n";
}

// ---- transport ----

void cmd_transport(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    const FormExpr expr = parse_form(text);
    if (expr.level() != 1) throw std::invalid_argument("transport needs a level-one form");
    const Locus line = parse_locus(cfg.locus);
    if (line != Locus::L && line != Locus::R) throw std::invalid_argument("transport needs --locus L or R");
    EvalContext ctx;
    ctx.precision = cfg.precision;
    ctx.truncation = cfg.truncation;
    const FormEvaluator g(expr, ctx);
    const LineTransport which = transport_for(line);

    PrecisionScope scope(cfg.precision + 64);
    Real t_max;
    if (cfg.height.empty()) {
        const Real a = transport(locus_point(Locus::A, pi() / 2), which, Direction::Forward).im;
        const Real b = transport(locus_point(Locus::A, 2 * pi() / 3), which, Direction::Forward).im;
        t_max = a > b ? a : b;
    } else {
        t_max = parse_real(cfg.height);
    }
    const std::vector<ZeroRecord> arc = find_zeros_on_arc(g, Locus::A, cfg.samples);
    const std::vector<ZeroRecord> moved = find_zeros_transported(g, line, t_max, cfg.samples);

    const int digits = cfg.format == "table" ? table_digits(cfg.precision) : decimal_digits(cfg.precision);
    struct Row {
        const ZeroRecord* zero;
        const ZeroRecord* source = nullptr;
        Real distance;
    };
    std::vector<Row> rows;
    for (const auto& m : moved) {
        Row r{&m, nullptr, Real(0)};
        for (const auto& a : arc) {
            const Real d = abs(transport(a.z, which, Direction::Forward) - m.z);
            if (!r.source || d < r.distance) {
                r.source = &a;
                r.distance = d;
            }
        }
        rows.push_back(std::move(r));
    }
    if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json j = to_json(*r.zero, digits);
            if (r.source) {
                j["arc_zero"] = to_json(*r.source, digits);
                j["distance"] = to_decimal(r.distance, 6);
            }
            arr.push_back(std::move(j));
        }
        emit_json(out, arr);
        return;
    }
    if (cfg.format == "csv") {
        out << csv_record({"locus", "param", "re", "im", "residual", "arc_theta", "distance"});
        for (const auto& r : rows)
            out << csv_record({r.zero->locus, to_decimal(r.zero->param, digits), to_decimal(r.zero->z.re, digits),
                               to_decimal(r.zero->z.im, digits), to_decimal(r.zero->residual, 6),
                               r.source ? to_decimal(r.source->param, digits) : "",
                               r.source ? to_decimal(r.distance, 6) : ""});
        return;
    }
    out << "zeros of " << expr.to_string() << " composed with the inverse of "
        << (which == LineTransport::GammaR ? "[[1,-1],[1,1]]" : "[[-2,-1],[1,-1]]") << " on " << locus_name(line)
        << ", t in [" << to_decimal(locus_interval(line, t_max).first, 8) << ", " << to_decimal(t_max, 8) << "]\n";
    for (const auto& r : rows) {
        out << "t = " << to_decimal(r.zero->param, digits) << "  residual " << to_decimal(r.zero->residual, 3);
        if (r.source)
            out << "  image of arc zero theta = " << to_decimal(r.source->param, digits) << "  distance "
                << to_decimal(r.distance, 3);
        out << "\n";
    }
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--precision", cfg.precision, "working precision in bits (>= 64)");
    sub->add_option("--truncation", cfg.truncation, "number of q-terms (>= 8; 0 chooses automatically)");
    sub->add_option("--format", cfg.format, "output format: json, csv or table");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact q-expansions, polynomials in j, zeros and CM points of modular forms", "mfzl"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.precision = default_precision();

    std::string form, re, im, golden_dir = "golden", only;
    bool reduced = false;

    auto* expand_cmd = app.add_subcommand("expand", "exact q-expansion of a form expression");
    expand_cmd->add_option("form", form, "form expression, e.g. mul(Ek(4),Delta)")->required();
    add_common(expand_cmd, cfg);

    auto* jpoly_cmd = app.add_subcommand("jpoly", "polynomial P with f^12/Delta^k = P(j)");
    jpoly_cmd->add_option("form", form, "form expression")->required();
    jpoly_cmd->add_option("--weight", cfg.weight, "weight k (defaults to the weight of the expression)");
    jpoly_cmd->add_flag("--reduced", reduced, "print f/Delta^(k/12) instead (needs 12 | k)");
    add_common(jpoly_cmd, cfg);

    auto* zeros_cmd = app.add_subcommand("zeros", "locate and classify zeros on an arc or line");
    zeros_cmd->add_option("form,--form", form, "form expression")->required();
    zeros_cmd->add_option("--locus", cfg.locus, "A, A2, A3, L or R");
    zeros_cmd->add_option("--height", cfg.height, "upper end of the line segment (L and R)");
    zeros_cmd->add_option("--samples", cfg.samples, "number of profile samples");
    add_common(zeros_cmd, cfg);

    auto* cm_cmd = app.add_subcommand("cm", "enumerate CM points that can lie on a locus");
    cm_cmd->add_option("--locus", cfg.locus, "A, A2, A3, Ap (with --p), L, R or B (with --p)");
    cm_cmd->add_option("--p", cfg.p, "prime level");
    cm_cmd->add_option("--height", cfg.height, "bound on the imaginary part of the Galois representative (L and R)");
    cm_cmd->add_option("--dbound", cfg.d_bound, "bound on |D|");
    add_common(cm_cmd, cfg);

    auto* classify_cmd = app.add_subcommand("classify", "classify a point as CM or transcendental candidate");
    classify_cmd->add_option("re", re, "real part (decimal or p/q)")->required();
    classify_cmd->add_option("im", im, "imaginary part (decimal or p/q)")->required();
    add_common(classify_cmd, cfg);

    auto* transport_cmd = app.add_subcommand("transport", "zeros of a form moved from the arc A to L or R");
    transport_cmd->add_option("form,--form", form, "level-one form expression")->required();
    transport_cmd->add_option("--locus", cfg.locus, "L or R")->required();
    transport_cmd->add_option("--height", cfg.height, "upper end of the line segment");
    transport_cmd->add_option("--samples", cfg.samples, "number of profile samples");
    add_common(transport_cmd, cfg);

    auto* verify_cmd = app.add_subcommand("verify-paper", "check enumerations and certificates against the golden files");
    verify_cmd->add_option("--golden-dir", golden_dir, "directory holding <target>.txt files");
    verify_cmd->add_option("--only", only, "run a single target");
    verify_cmd->add_flag_callback(
        "--list",
        [&out] {
            for (const auto& t : golden_targets()) out << t.name << "  " << t.description << "\n";
            throw CLI::Success();
        },
        "list the golden targets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kPipelineError;
    }

    try {
        validate(cfg, expand_cmd->parsed());
        if (*expand_cmd) cmd_expand(form, cfg, out);
        else if (*jpoly_cmd) cmd_jpoly(form, reduced, cfg, out);
        else if (*zeros_cmd) cmd_zeros(form, cfg, out);
        else if (*cm_cmd) cmd_cm(cfg, out);
        else if (*classify_cmd) cmd_classify(re, im, cfg, out);
        else if (*transport_cmd) cmd_transport(form, cfg, out);
        else if (*verify_cmd) return verify_paper(golden_dir, only, out);
    } catch (const ParseError& e) {
        err << "mfzl: parse error: " << e.what() << "\n";
        if (!form.empty()) err << "  " << form << "\n  " << std::string(e.position(), ' ') << "^\n";
        return kPipelineError;
    } catch (const std::exception& e) {
        err << "mfzl: " << e.what() << "\n";
        return kPipelineError;
    }
    return kOk;
}

}  // namespace mfzl::cli
