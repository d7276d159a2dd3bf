#include "mfzl/io.hpp"

#include <cmath>
#include <stdexcept>

namespace mfzl {

namespace {

Json rational_strings(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& c : v) out.push_back(c.get_str());
    return out;
}

Rational rational_field(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw std::invalid_argument("expected a rational string");
    return parse_rational(j.get<std::string>());
}

}  // namespace

Json to_json(const QSeries& s) {
    Json out;
    out["ramification"] = s.ramification();
    out["truncation"] = s.exact() ? std::string("exact") : s.truncation().get_str();
    Json terms = Json::array();
    const long start = s.start_index();
    for (size_t i = 0; i < s.coeffs().size(); ++i) {
        const Rational& c = s.coeffs()[i];
        if (sgn(c) == 0) continue;
        Rational e(start + static_cast<long>(i), s.ramification());
        e.canonicalize();
        terms.push_back(Json::array({e.get_str(), c.get_str()}));
    }
    out["terms"] = std::move(terms);
    return out;
}

QSeries qseries_from_json(const Json& j) {
    const int r = j.at("ramification").get<int>();
    if (r < 1) throw std::invalid_argument("ramification must be positive");
    const Json& tr = j.at("truncation");
    long trunc = QSeries::kExact;
    if (!(tr.is_string() && tr.get<std::string>() == "exact")) {
        const Rational t = rational_field(tr) * r;
        if (t.get_den() != 1) throw std::invalid_argument("truncation is not a multiple of 1/r");
        trunc = t.get_num().get_si();
    }
    std::vector<std::pair<long, Rational>> terms;
    for (const auto& term : j.at("terms")) {
        const Rational e = rational_field(term.at(0)) * r;
        if (e.get_den() != 1) throw std::invalid_argument("exponent is not a multiple of 1/r");
        terms.emplace_back(e.get_num().get_si(), rational_field(term.at(1)));
    }
    if (terms.empty()) return QSeries(r, 0, {}, trunc);
    long lo = terms.front().first, hi = lo;
    for (const auto& [e, c] : terms) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    if (hi >= trunc) throw std::invalid_argument("term at or beyond the truncation");
    std::vector<Rational> coeffs(static_cast<size_t>(hi - lo + 1), Rational(0));
    for (const auto& [e, c] : terms) coeffs[static_cast<size_t>(e - lo)] += c;
    return QSeries(r, lo, std::move(coeffs), trunc);
}

Json to_json(const JPolynomial& p) {
    Json out;
    out["weight"] = p.weight;
    out["coeffs"] = rational_strings(p.coeffs);
    return out;
}

JPolynomial jpoly_from_json(const Json& j) {
    JPolynomial p;
    p.weight = j.at("weight").get<long>();
    for (const auto& c : j.at("coeffs")) p.coeffs.push_back(rational_field(c));
    while (!p.coeffs.empty() && sgn(p.coeffs.back()) == 0) p.coeffs.pop_back();
    if (p.coeffs.empty()) throw std::invalid_argument("polynomial has no nonzero coefficient");
    return p;
}

Json to_json(const CMPoint& p) {
    Json out;
    out["a"] = p.form.a;
    out["b"] = p.form.b;
    out["c"] = p.form.c;
    out["D"] = p.D();
    out["z"] = Json::array({p.real_part().get_str(), p.abs_disc(), p.two_a()});
    out["locus"] = p.locus;
    return out;
}

Json to_json(const IntegralityReport& r) {
    Json out;
    out["leading_is_integer"] = r.leading_is_integer;
    out["leading_is_unit"] = r.leading_is_unit;
    out["all_integral"] = r.all_integral;
    out["offending_indices"] = r.offending_indices;
    out["verdict"] = r.verdict_text();
    return out;
}

Json to_json(const Verdict& v, int digits) {
    Json out;
    out["verdict"] = v.label();
    if (v.kind == Verdict::Kind::CM) {
        out["D"] = v.D;
        out["form"] = Json::array({v.form.a, v.form.b, v.form.c});
        out["class_number"] = v.class_number;
    }
    if (v.j_minpoly) {
        Json mp = Json::array();
        for (const auto& c : v.j_minpoly->minpoly) mp.push_back(c.get_str());
        out["j_minpoly"] = std::move(mp);
    } else {
        out["j_minpoly"] = nullptr;
    }
    out["j_value"] = Json::array({to_decimal(v.j_value.re, digits), to_decimal(v.j_value.im, digits)});
    out["bounds"] = {{"d_max", v.bounds.d_max}, {"log10_h_max", v.bounds.log10_h_max}, {"bits", v.bounds.bits}};
    out["reason"] = v.reason;
    return out;
}

Json to_json(const ZeroRecord& z, int digits) {
    Json out;
    out["locus"] = z.locus;
    out["param"] = to_decimal(z.param, digits);
    out["z"] = Json::array({to_decimal(z.z.re, digits), to_decimal(z.z.im, digits)});
    out["residual"] = to_decimal(z.residual, 6);
    out["width"] = to_decimal(z.width, 6);
    out["weight"] = z.weight;
    out["form"] = z.form_id;
    out["multiplicity"] = z.multiplicity;
    out["even_order"] = z.even_order_flag;
    out["endpoint"] = z.endpoint;
    return out;
}

int decimal_digits(long bits) { return static_cast<int>(std::floor(static_cast<double>(bits) * std::log10(2.0))); }

std::string csv_record(const std::vector<std::string>& fields) {
    std::string line;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\r\n") == std::string::npos) {
            line += f;
            continue;
        }
        line += '"';
        for (char c : f) {
            if (c == '"') line += '"';
            line += c;
        }
        line += '"';
    }
    return line + "\r\n";
}

std::string zeros_csv(const std::vector<ZeroRecord>& zeros, int digits) {
    std::string out = csv_record({"locus", "param", "re", "im", "residual"});
    for (const auto& z : zeros)
        out += csv_record({z.locus, to_decimal(z.param, digits), to_decimal(z.z.re, digits), to_decimal(z.z.im, digits),
                           to_decimal(z.residual, 6)});
    return out;
}

std::string profile_csv(const std::vector<std::pair<Real, Real>>& samples, int digits) {
    std::string out = csv_record({"theta_or_t", "value"});
    for (const auto& [t, v] : samples) out += csv_record({to_decimal(t, digits), to_decimal(v, digits)});
    return out;
}

}  // namespace mfzl
