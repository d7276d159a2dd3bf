#include "mfzl/parse.hpp"

#include <cctype>

namespace mfzl {

ParseError::ParseError(const std::string& message, size_t position)
    : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    FormExpr parse() {
        FormExpr e = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, i_); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++i_;
    }

    std::string identifier() {
        skip();
        const size_t start = i_;
        while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected a name");
        return s_.substr(start, i_ - start);
    }

    std::string digits() {
        const size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected digits");
        return s_.substr(start, i_ - start);
    }

    long integer() {
        skip();
        const size_t start = i_;
        bool neg = false;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = s_[i_++] == '-';
        const std::string d = digits();
        if (d.size() > 15) {
            i_ = start;
            fail("integer too large");
        }
        const long v = std::stol(d);
        return neg ? -v : v;
    }

    Rational rational() {
        skip();
        std::string text;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
            if (s_[i_] == '-') text += '-';
            ++i_;
        }
        text += digits();
        if (i_ < s_.size() && s_[i_] == '/') {
            ++i_;
            const size_t at = i_;
            const std::string den = digits();
            if (den.find_first_not_of('0') == std::string::npos) {
                i_ = at;
                fail("zero denominator");
            }
            text += "/" + den;
        }
        return parse_rational(text);
    }

    // Runs a factory, reporting its validation errors at the start of the call.
    template <typename F>
    FormExpr build(size_t at, F&& f) {
        try {
            return f();
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(e.what(), at);
        }
    }

    FormExpr expr() {
        skip();
        const size_t at = i_;
        const std::string name = identifier();
        if (name == "Delta") return FormExpr::delta();
        if (name == "J") return FormExpr::j();
        expect('(');
        FormExpr out = call(name, at);
        expect(')');
        return out;
    }

    FormExpr call(const std::string& name, size_t at) {
        if (name == "Ek") {
            const long k = integer();
            return build(at, [&] { return FormExpr::eisenstein(k); });
        }
        if (name == "Eks" || name == "Ekp") {
            const long k = integer();
            expect(',');
            const long p = integer();
            return build(at, [&] {
                return name == "Eks" ? FormExpr::eisenstein_scaled(k, p) : FormExpr::fricke_eisenstein(k, p);
            });
        }
        if (name == "Deltas") {
            const long p = integer();
            return build(at, [&] { return FormExpr::delta_scaled(p); });
        }
        if (name == "const") {
            const Rational c = rational();
            return FormExpr::constant(c);
        }
        if (name == "add" || name == "sub") {
            const FormExpr a = expr();
            expect(',');
            const FormExpr b = expr();
            return build(at, [&] { return name == "add" ? a + b : a - b; });
        }
        if (name == "mul") {
            FormExpr acc = expr();
            expect(',');
            do {
                const FormExpr next = expr();
                acc = build(at, [&] { return acc * next; });
            } while (peek(',') && (++i_, true));
            return acc;
        }
        if (name == "pow") {
            const FormExpr a = expr();
            expect(',');
            const long n = integer();
            return build(at, [&] { return pow(a, n); });
        }
        if (name == "scale") {
            const Rational c = rational();
            expect(',');
            const FormExpr a = expr();
            return build(at, [&] { return scale(c, a); });
        }
        throw ParseError("unknown function '" + name + "'", at);
    }
};

}  // namespace

FormExpr parse_form(const std::string& text) { return Parser(text).parse(); }

}  // namespace mfzl
