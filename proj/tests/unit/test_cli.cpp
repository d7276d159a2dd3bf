#include "doctest.h"
#include "mfzl/cli.hpp"
#include "mfzl/io.hpp"
#include "mfzl/parse.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace mfzl;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "mfzl");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

const std::string kGolden = std::string(MFZL_SOURCE_DIR) + "/golden";

}  // namespace

TEST_CASE("form parser accepts the documented grammar") {
    CHECK(parse_form("Ek(4)").weight() == 4);
    CHECK(parse_form(" mul( Ek(4) , Delta ) ").weight() == 16);
    CHECK(parse_form("Eks(6,3)").level() == 3);
    CHECK(parse_form("Ekp(4,2)").weight() == 4);
    CHECK(parse_form("Deltas(2)").level() == 2);
    CHECK(parse_form("pow(Delta,-1)").weight() == -12);
    CHECK(parse_form("mul(Ek(4),Ek(4),Ek(4))").weight() == 12);
    CHECK(parse_form("scale(-3/4,J)").weight() == 0);
    CHECK(parse_form("mul(pow(Delta,1), sub(J, const(1728)))").weight() == 12);

    const QSeries a = expand(parse_form("mul(Ek(4),Ek(4),Ek(4))"), 12);
    CHECK(a == pow(eisenstein(4, 12), 3));
    CHECK(expand(parse_form("Ekp(4,2)"), 10) == fricke_eisenstein(4, 2, 10));
}

TEST_CASE("printed expressions parse back to the same expression") {
    const char* samples[] = {"Ek(4)",
                             "mul(Delta,sub(J,const(1/2)))",
                             "scale(1/2,mul(Delta,sub(J,const(1728))))",
                             "add(pow(Ek(4),3),scale(-1,pow(Ek(6),2)))",
                             "Ekp(6,3)",
                             "mul(Deltas(2),pow(Delta,-1))",
                             "pow(Eks(4,2),2)"};
    for (const char* s : samples) {
        CAPTURE(s);
        const FormExpr e = parse_form(s);
        const FormExpr back = parse_form(e.to_string());
        CHECK(back.to_string() == e.to_string());
        CHECK(expand(back, 10) == expand(e, 10));
    }
}

TEST_CASE("parse errors carry the offending position") {
    auto position_of = [](const std::string& text) -> long {
        try {
            parse_form(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(position_of("Ek(4") == 4);
    CHECK(position_of("Foo(1)") == 0);
    CHECK(position_of("mul(Ek(4),)") == 10);
    CHECK(position_of("const(1/0)") == 8);
    CHECK(position_of("Ek(3)") == 0);
    CHECK(position_of("add(Ek(4),Ek(6))") == 0);
    CHECK(position_of("Delta x") == 6);
    CHECK(position_of("pow(Ek(4),-1)") == 0);
    CHECK(position_of("mul(Eks(4,2),Eks(4,3))") == 0);
    CHECK(position_of("") == 0);
}

TEST_CASE("series JSON keeps exact exponents and coefficients") {
    const Json j = to_json(eisenstein(4, 3));
    CHECK(j["ramification"] == 1);
    CHECK(j["truncation"] == "3");
    CHECK(j["terms"] == Json::parse(R"([["0","1"],["1","240"],["2","2160"]])"));

    const Json b = to_json(bernoulli(12) * QSeries::monomial(Rational(1), 1, 2));
    CHECK(b["terms"] == Json::parse(R"([["1/2","-691/2730"]])"));
    CHECK(b["truncation"] == "exact");

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int r = 1 + static_cast<int>(rng() % 4);
        const long start = static_cast<long>(rng() % 9) - 4;
        const long len = static_cast<long>(rng() % 8);
        std::vector<Rational> c;
        for (long i = 0; i < len; ++i) {
            Rational x(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 50));
            x.canonicalize();
            c.push_back(x);
        }
        const QSeries s(r, start, c, start + len + static_cast<long>(rng() % 3));
        const QSeries back = qseries_from_json(Json::parse(to_json(s).dump()));
        CHECK(back == s);
        CHECK(back.truncation() == s.truncation());
    }
}

TEST_CASE("polynomial and CM point JSON") {
    JPolynomial p{{Rational(5), Rational(-1728), Rational(1, 2)}, 24, 0};
    const Json j = to_json(p);
    CHECK(j.dump() == R"({"weight":24,"coeffs":["5","-1728","1/2"]})");
    CHECK(jpoly_from_json(j) == p);

    CMPoint pt;
    pt.form = {2, 1, 1};
    pt.locus = "Ap";
    CHECK(to_json(pt).dump() == R"({"a":2,"b":1,"c":1,"D":-7,"z":["-1/4",7,4],"locus":"Ap"})");
}

TEST_CASE("CSV records follow RFC 4180 quoting") {
    CHECK(csv_record({"a", "b"}) == "a,b\r\n");
    CHECK(csv_record({"x,y", "say \"hi\"", ""}) == "\"x,y\",\"say \"\"hi\"\"\",\r\n");
    CHECK(csv_record({"two\nlines"}) == "\"two\nlines\"\r\n");

    PrecisionScope scope(128);
    std::vector<std::pair<Real, Real>> samples{{Real(1), Real(-2)}};
    CHECK(profile_csv(samples, 5) == "theta_or_t,value\r\n1.0000e+00,-2.0000e+00\r\n");
}

TEST_CASE("expand subcommand") {
    Run r = run_cli({"expand", "Ek(4)", "--truncation", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["terms"] == Json::parse(R"([["0","1"],["1","240"],["2","2160"]])"));

    r = run_cli({"expand", "Delta", "--truncation", "3", "--format", "json"});
    CHECK(Json::parse(r.out)["terms"] == Json::parse(R"([["1","1"],["2","-24"]])"));

    r = run_cli({"expand", "J", "--truncation", "2", "--format", "json"});
    CHECK(Json::parse(r.out)["terms"] == Json::parse(R"([["-1","1"],["0","744"],["1","196884"]])"));

    r = run_cli({"expand", "Ek(4)", "--truncation", "3", "--format", "csv"});
    CHECK(r.out == "exponent,coefficient\r\n0,1\r\n1,240\r\n2,2160\r\n");

    r = run_cli({"expand", "mul(Ek(4),"});
    CHECK(r.code == cli::kPipelineError);
    CHECK(r.err.find("position 10") != std::string::npos);
}

TEST_CASE("jpoly subcommand") {
    Run r = run_cli({"jpoly", "mul(Delta,sub(J,const(1/2)))", "--reduced", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["text"] == "X - 1/2");
    CHECK(j["integrality"]["verdict"] == "transcendental zero guaranteed");

    r = run_cli({"jpoly", "pow(Ek(4),3)", "--format", "json"});
    CHECK(Json::parse(r.out)["polynomial"]["coeffs"].size() == 13);

    r = run_cli({"jpoly", "Ek(4)", "--truncation", "4"});
    CHECK(r.code == cli::kPipelineError);
}

TEST_CASE("cm subcommand reproduces the short lists") {
    Run r = run_cli({"cm", "--locus", "L", "--height", "2"});
    REQUIRE(r.code == 0);
    CHECK(lines_of(r.out).size() == 5);
    r = run_cli({"cm", "--locus", "R", "--height", "2"});
    CHECK(lines_of(r.out) == std::vector<std::string>{"i D=-4 (1,0,1)", "i*sqrt(2) D=-8 (1,0,2)",
                                                      "i*sqrt(3) D=-12 (1,0,3)"});
    r = run_cli({"cm", "--locus", "Ap", "--p", "3", "--format", "json"});
    CHECK(Json::parse(r.out).size() == 4);
    r = run_cli({"cm", "--locus", "Ap", "--p", "5"});
    CHECK(r.code == cli::kPipelineError);
}

TEST_CASE("zeros subcommand") {
    Run r = run_cli({"zeros", "Ek(4)", "--locus", "A", "--format", "csv"});
    REQUIRE(r.code == 0);
    auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].find("CM(-3)") != std::string::npos);

    r = run_cli({"zeros", "Ek(12)", "--locus", "A", "--format", "json"});
    Json j = Json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["classification"]["verdict"] == "TranscendentalCandidate");
    CHECK(j[0]["endpoint"] == false);

    r = run_cli({"zeros", "--form", "Ekp(8,2)", "--locus", "A2", "--format", "json"});
    REQUIRE(r.code == 0);
    j = Json::parse(r.out);
    REQUIRE(!j.empty());
    PrecisionScope scope(256);
    for (const auto& row : j) {
        const Real re = parse_real(row["z"][0].get<std::string>());
        const Real im = parse_real(row["z"][1].get<std::string>());
        CHECK(abs(re * re + im * im - Real(1) / 2) < Real("1e-40"));
        const std::string v = row["classification"]["verdict"];
        CHECK((v == "CM(-4)" || v == "CM(-7)" || v == "CM(-8)" || v == "TranscendentalCandidate"));
    }

    r = run_cli({"zeros", "Ek(12)", "--precision", "32"});
    CHECK(r.code == cli::kPipelineError);
}

TEST_CASE("output is byte-identical across runs") {
    const std::vector<std::string> args{"zeros", "Ek(16)", "--locus", "A", "--format", "csv"};
    CHECK(run_cli(args).out == run_cli(args).out);
    const std::vector<std::string> t{"transport", "Ek(12)", "--locus", "R"};
    CHECK(run_cli(t).out == run_cli(t).out);
}

TEST_CASE("transport subcommand matches images of arc zeros") {
    Run r = run_cli({"transport", "Ek(12)", "--locus", "R", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j.size() == 1);
    PrecisionScope scope(128);
    CHECK(parse_real(j[0]["distance"].get<std::string>()) < Real("1e-40"));
}

TEST_CASE("classify subcommand") {
    Run r = run_cli({"classify", "0", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["verdict"] == "CM(-4)");
    r = run_cli({"classify", "0", "-1"});
    CHECK(r.code == cli::kPipelineError);
}

TEST_CASE("golden-file verification subcommand") {
    Run r = run_cli({"verify-paper", "--golden-dir", kGolden});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("FAIL") == std::string::npos);

    r = run_cli({"verify-paper", "--golden-dir", kGolden, "--only", "fricke-arc-3"});
    CHECK(r.code == cli::kOk);
    CHECK(lines_of(r.out).size() == 2);

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mfzl-golden-corrupt";
    fs::remove_all(dir);
    fs::copy(kGolden, dir);
    {
        std::ofstream f(dir / "line-R.txt", std::ios::app);
        f << "i*sqrt(5) D=-20 (1,0,5)\n";
    }
    r = run_cli({"verify-paper", "--golden-dir", dir.string()});
    CHECK(r.code == cli::kGoldenMismatch);
    CHECK(r.out.find("FAIL line-R") != std::string::npos);
    fs::remove(dir / "arc-A.txt");
    r = run_cli({"verify-paper", "--golden-dir", dir.string(), "--only", "arc-A"});
    CHECK(r.code == cli::kGoldenMismatch);
    fs::remove_all(dir);

    r = run_cli({"verify-paper", "--only", "unknown-target"});
    CHECK(r.code == cli::kPipelineError);
}

TEST_CASE("precision default honours the environment") {
    ::setenv("MFZL_PRECISION", "320", 1);
    CHECK(cli::default_precision() == 320);
    ::setenv("MFZL_PRECISION", "12", 1);
    CHECK(cli::default_precision() == 256);
    ::setenv("MFZL_PRECISION", "abc", 1);
    CHECK(cli::default_precision() == 256);
    ::unsetenv("MFZL_PRECISION");
    CHECK(cli::default_precision() == 256);

    cli::RunConfig cfg;
    cfg.truncation = 5;
    CHECK_THROWS(cli::validate(cfg));
    CHECK_NOTHROW(cli::validate(cfg, true));
    cfg.truncation = 8;
    cfg.format = "xml";
    CHECK_THROWS(cli::validate(cfg));
}
