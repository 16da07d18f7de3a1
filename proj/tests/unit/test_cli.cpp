#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"

using namespace quasibif;
using namespace quasibif::cli;

namespace {

std::string scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("quasibif-test-" + name);
    std::filesystem::remove_all(dir);
    return dir.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig parse(const std::string& text) { return config_from_table(parse_document(text)); }

}  // namespace

TEST_CASE("config language values") {
    const Table t = parse_document(R"(
# comment
command = "bifurcate"
phi = { kind = "phi_k", k = 3.0 }
f = { kind = "power_sum", p = 1, q = 6 }
lambda = [0.3, 1,
          3e0]
force = true
[grid]
per_decade = 64
[output]
dir = "out dir"
formats = ["csv"]
)");
    CHECK(t.at("command").string("command") == "bifurcate");
    CHECK(t.at("phi").table("phi").at("k").number("k") == 3.0);
    CHECK(t.at("lambda").array("lambda").size() == 3);
    CHECK(t.at("force").boolean("force"));
    CHECK(t.at("grid").table("grid").at("per_decade").number("per_decade") == 64);
    CHECK(parse_value("-inf").number("x") == -INFINITY);
    CHECK(parse_value(R"("a\"b")").string("x") == "a\"b");
}

TEST_CASE("config errors carry line numbers") {
    try {
        parse_document("command = \"classify\"\nphi = { kind = \"phi_k\", k = }\n");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_document("x = [1, 2"), ConfigError);
    CHECK_THROWS_AS(parse_document("= 3"), ConfigError);
}

TEST_CASE("run config validation") {
    const RunConfig c = parse(R"(command = "timemap"
phi = { kind = "phi_k", k = 3 }
f = { kind = "exp_minus_one" }
lambda = [0.3, 1, 3]
tol = 1e-10
[grid]
r_points = 50
)");
    CHECK(c.command == Command::timemap);
    CHECK(c.f->kind == "exp_minus_one");
    CHECK(c.lambdas.size() == 3);
    CHECK(c.tol == 1e-10);
    CHECK(c.r_points == 50);
    CHECK(c.output.dir == "quasibif-out");
    CHECK_THROWS_AS(parse("command = \"classify\"\nunknown_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("command = \"explode\"\n"), ConfigError);
    CHECK_THROWS_AS(parse("command = \"classify\"\n[grid]\nr_pts = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse("command = \"classify\"\nlambda = \"many\"\n"), ConfigError);
}

TEST_CASE("serialized config parses back to the same config") {
    const RunConfig c = parse(R"(command = "bifurcate"
phi = { kind = "phi_k", k = 3 }
f = { kind = "power_exp_plus_power", p = 7, k = 12, q = 2 }
L = [0.1, 0.30000000000000004, 2.5e-7]
[grid]
per_decade = 32
[output]
dir = "x"
formats = ["csv", "structured"]
)");
    const std::string s1 = serialize(c);
    const RunConfig back = parse(s1);
    CHECK(serialize(back) == s1);
    CHECK(back.L_values == c.L_values);
    CHECK(back.f->params == c.f->params);
    CHECK_FALSE(back.output.svg);
}

TEST_CASE("descriptor with terms") {
    const auto d = descriptor_from_value(
        parse_value(R"({ kind = "sum", terms = [{ kind = "power", p = 2 }, { kind = "power", p = 7 }] })"));
    CHECK(d.kind == "sum");
    REQUIRE(d.terms.size() == 2);
    CHECK(d.terms[1].param("p") == 7);
    const auto again = descriptor_from_value(parse_value(serialize(d)));
    CHECK(again.terms.size() == 2);
}

TEST_CASE("csv output") {
    CHECK(csv_number(0.1) == "0.10000000000000001");
    CHECK(csv_number(INFINITY) == "inf");
    CsvTable t({"a", "b"});
    t.add({"1", "x,y"});
    CHECK(t.text() == "a,b\n1,\"x,y\"\n");
}

TEST_CASE("classify command headlines") {
    const auto headline = [](const std::string& phi, const std::string& f) {
        RunConfig c = parse("command = \"classify\"\nphi = " + phi + "\nf = " + f + "\n");
        c.output.dir = scratch_dir("classify");
        std::ostringstream out, err;
        CHECK(run(c, out, err) == exit_ok);
        return out.str();
    };
    CHECK(headline(R"({ kind = "phi_k", k = 3 })", R"({ kind = "power_sum", p = 1, q = 6 })")
              .find("Case IV, Type IV-γ₀") != std::string::npos);
    CHECK(headline(R"({ kind = "phi_k", k = 2 })", R"({ kind = "exp_minus_one" })").find("Case I, g ≡ 0") !=
          std::string::npos);
    CHECK(headline(R"({ kind = "phi_k", k = 3 })", R"({ kind = "tan" })").find("Case V, Type V-β₀") !=
          std::string::npos);
}

TEST_CASE("exit codes") {
    std::ostringstream out, err;
    RunConfig bad = parse("command = \"classify\"\nphi = { kind = \"phi_k\", k = 3 }\nf = { kind = \"nope\" }\n");
    bad.output.dir = scratch_dir("exit");
    CHECK(run(bad, out, err) == exit_config_error);
    RunConfig missing = parse("command = \"classify\"\n");
    missing.output.dir = bad.output.dir;
    CHECK(run(missing, out, err) == exit_config_error);
    RunConfig outside = parse(R"(command = "timemap"
phi = { kind = "phi_k", k = 3 }
f = { kind = "power", p = 1 }
lambda = [4]
r = [2]
)");
    outside.output.dir = bad.output.dir;
    CHECK(run(outside, out, err) == exit_config_error);
    CHECK(err.str().find("outside") != std::string::npos);
}

TEST_CASE("timemap command writes csv twins and flags the endpoint") {
    RunConfig c = parse(R"(command = "timemap"
phi = { kind = "phi_k", k = 3 }
f = { kind = "exp_minus_one" }
lambda = [0.3, 1, 3]
[grid]
r_points = 20
)");
    c.output.dir = scratch_dir("timemap");
    std::ostringstream out, err;
    REQUIRE(run(c, out, err) == exit_ok);
    const std::string csv = slurp(c.output.dir + "/timemap.csv");
    CHECK(csv.rfind("lambda,r,T,endpoint,branch\n", 0) == 0);
    int endpoints = 0;
    std::istringstream is(csv);
    for (std::string line; std::getline(is, line);)
        if (line.find(",1,") != std::string::npos) ++endpoints;
    CHECK(endpoints == 3);
    CHECK(std::filesystem::exists(c.output.dir + "/timemap.svg"));
    CHECK(std::filesystem::exists(c.output.dir + "/run.txt"));
}

TEST_CASE("runs are reproducible from the recorded config") {
    RunConfig c = parse(R"(command = "gcurve"
phi = { kind = "phi_k", k = 3 }
f = { kind = "power_sum", p = 2, q = 7 }
[grid]
g_points = 60
)");
    c.output.dir = scratch_dir("repro-a");
    std::ostringstream out, err;
    REQUIRE(run(c, out, err) == exit_ok);
    RunConfig again = load_config(c.output.dir + "/run.txt");
    again.output.dir = scratch_dir("repro-b");
    REQUIRE(run(again, out, err) == exit_ok);
    for (const char* name : {"gcurve_lambda.csv", "gcurve_r.csv"})
        CHECK(slurp(c.output.dir + "/" + name) == slurp(again.output.dir + "/" + name));
}

TEST_CASE("verify subset case123") {
    RunConfig c = parse("command = \"verify\"\nsubset = \"case123\"\n[grid]\nper_decade = 64\n");
    c.output.dir = scratch_dir("verify");
    std::ostringstream out, err;
    CHECK(run(c, out, err) == exit_ok);
    const std::string text = out.str();
    int passes = 0;
    for (std::size_t pos = 0; (pos = text.find("PASS", pos)) != std::string::npos; ++pos) ++passes;
    CHECK(passes == 6);
    CHECK(text.find("FAIL") == std::string::npos);
}
