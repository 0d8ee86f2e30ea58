#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "prolate/cli.hpp"

using namespace prolate;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(std::vector<std::string> args) { return cli::dispatch(std::move(args)); }

}  // namespace

TEST_CASE("float formatting is deterministic and capped at 15 digits") {
    CHECK(fmt_double(0.0) == "0");
    CHECK(fmt_double(-0.0) == "0");
    CHECK(fmt_double(1.0) == "1");
    CHECK(fmt_double(0.1) == "0.1");
    CHECK(fmt_double(1.0 / 3.0) == "0.333333333333333");
    CHECK(fmt_double(1e-30) == "1e-30");
}

TEST_CASE("json writer produces ordered fields") {
    JsonWriter w;
    w.begin_object();
    w.key("b").value(2);
    w.key("a").begin_array().value(1.5).value(std::string("x")).end_array();
    w.key("nested").begin_object().key("z").value(true).end_object();
    w.end_object();
    CHECK(w.str() == "{\"b\": 2, \"a\": [1.5, \"x\"], \"nested\": {\"z\": true}}");
}

TEST_CASE("unitary parsing") {
    CHECK(parse_unitary("identity").is_identity());
    CHECK_THROWS_AS(parse_unitary("1,0,0,0"), ValidationError);
    CHECK_THROWS_AS(parse_unitary("1,0,1,0,0,0,1,0"), NotUnitary);
    const auto u = parse_unitary("0,0,1,0,1,0,0,0");
    CHECK((u.matrix() - UnitaryMatrix2::swap().matrix()).max_norm() == 0.0);
    CHECK_THROWS_AS(parse_unitary("1,0,0,0,0,0,1,oops"), ValidationError);
}

TEST_CASE("spectrum subcommand") {
    const std::string out = "/tmp/prolate_test_spectrum.json";
    SECTION("identity preset uses the Galerkin backend") {
        CHECK(run({"spectrum", "--a", "1", "--unitary", "identity", "--modes", "3", "--format",
                   "json", "--out", out}) == 0);
        const std::string s = slurp(out);
        CHECK(s.find("\"a\": 1") != std::string::npos);
        CHECK(s.find("0.319000055146") != std::string::npos);
        CHECK(s.find("\"multiplicity\": 1") != std::string::npos);
    }
    SECTION("non-unitary input exits 2") {
        CHECK(run({"spectrum", "--unitary", "1,0,0,0,1,1,0,0"}) == 2);
    }
    SECTION("byte-identical reruns") {
        const std::string out2 = "/tmp/prolate_test_spectrum2.json";
        CHECK(run({"spectrum", "--a", "0.5", "--unitary", "neg-identity", "--modes", "2",
                   "--range-min", "-30", "--range-max", "40", "--out", out}) == 0);
        CHECK(run({"spectrum", "--a", "0.5", "--unitary", "neg-identity", "--modes", "2",
                   "--range-min", "-30", "--range-max", "40", "--out", out2}) == 0);
        const std::string s1 = slurp(out), s2 = slurp(out2);
        CHECK(!s1.empty());
        CHECK(s1 == s2);
    }
    SECTION("csv output") {
        CHECK(run({"spectrum", "--modes", "2", "--format", "csv", "--out", out}) == 0);
        const std::string s = slurp(out);
        CHECK(s.rfind("k,lambda,multiplicity,residual\n", 0) == 0);
    }
}

TEST_CASE("config file supplies defaults, flags override") {
    const std::string cfg = "/tmp/prolate_test.cfg";
    {
        std::ofstream f(cfg);
        f << "# sweep config\na = 0.5\nmodes = 2\nformat = csv\n";
    }
    const std::string out = "/tmp/prolate_test_cfg_out.csv";
    CHECK(run({"pswf", "--config", cfg, "--out", out}) == 0);
    std::string s = slurp(out);
    CHECK(s.rfind("k,lambda_k,residual\n", 0) == 0);
    // a=0.5 ground eigenvalue appears
    CHECK(s.find("0.0831023119") != std::string::npos);
    // flag overrides config: a=1 now
    CHECK(run({"pswf", "--config", cfg, "--a", "1", "--out", out}) == 0);
    s = slurp(out);
    CHECK(s.find("0.319000055146") != std::string::npos);
}

TEST_CASE("pswf eigenfunction sampling") {
    const std::string out = "/tmp/prolate_test_pswf.json";
    const std::string fout = "/tmp/prolate_test_pswf_fun.csv";
    CHECK(run({"pswf", "--modes", "2", "--grid", "8", "--functions-out", fout, "--out", out}) == 0);
    const std::string s = slurp(out);
    CHECK(s.find("\"samples\"") != std::string::npos);
    const std::string f = slurp(fout);
    CHECK(f.rfind("t,chi_1,chi_2\n", 0) == 0);
    int lines = 0;
    for (char c : f)
        if (c == '\n') ++lines;
    CHECK(lines == 9);
}

TEST_CASE("boundary subcommand extracts b and c from a sampled file") {
    // sample x(t) = ln(a+t) + 2 on a grid approaching both endpoints
    const double a = 1.0;
    const std::string in = "/tmp/prolate_test_boundary_in.csv";
    {
        std::ofstream f(in);
        f << "t,re,im\n";
        std::vector<double> ts;
        for (int j = 26; j >= 2; --j) ts.push_back(-a + a * std::ldexp(1.0, -j));
        for (int i = 1; i < 64; ++i) ts.push_back(-a + a / 2 + (a * 1.5 - a / 32) * i / 64.0);
        for (int j = 2; j <= 26; ++j) ts.push_back(a - a * std::ldexp(1.0, -j));
        std::sort(ts.begin(), ts.end());
        f.precision(17);
        for (double t : ts) f << t << "," << std::log(a + t) + 2.0 << ",0\n";
    }
    const std::string out = "/tmp/prolate_test_boundary_out.json";
    CHECK(run({"boundary", "--a", "1", "--input", in, "--out", out}) == 0);
    const std::string s = slurp(out);
    // b_minus ~ 1 (spline-limited accuracy), c_minus ~ -2
    const auto bpos = s.find("\"minus\": {\"b\": [");
    REQUIRE(bpos != std::string::npos);
    const double b = std::stod(s.substr(bpos + 16));
    CHECK(std::abs(b - 1.0) <= 1e-3);
    const auto cpos = s.find("\"c\": [", bpos);
    REQUIRE(cpos != std::string::npos);
    const double c = std::stod(s.substr(cpos + 6));
    CHECK(std::abs(c + 2.0) <= 1e-3);
}

TEST_CASE("boundary subcommand rejects coarse files") {
    const std::string in = "/tmp/prolate_test_boundary_coarse.csv";
    {
        std::ofstream f(in);
        for (int i = 1; i < 20; ++i) f << -1.0 + 2.0 * i / 20.0 << ",1\n";
    }
    CHECK(run({"boundary", "--a", "1", "--input", in}) == 2);
}

TEST_CASE("classify emits the boundary condition matrix") {
    const std::string out = "/tmp/prolate_test_classify.json";
    CHECK(run({"classify", "--unitary", "neg-identity", "--out", out}) == 0);
    const std::string s = slurp(out);
    CHECK(s.find("\"boundary_condition_matrix\": [[[0, 0], [0, -2], [0, 0], [0, 0]], "
                 "[[0, 0], [0, 0], [0, 0], [0, -2]]]") != std::string::npos);
    CHECK(s.find("\"j_self_orthogonal\": true") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"no-such-command"}) == 2);
    CHECK(run({}) == 2);
    CHECK(run({"spectrum", "--a", "-1"}) == 2);
}
