#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

// Runs the CLI with stderr discarded and returns its exit status and stdout.
Run run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " \"" MODULUS_BIN "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "modulus_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("eval prints the normalized value of J at i")
{
    const Run r = run("eval J 0 1");
    CHECK(r.code == 0);
    CHECK(r.out == "1.000000000+0.000000000i\n");
}

TEST_CASE("eval E6 at i is zero to the printed precision")
{
    const Run r = run("eval E6 0 1 --precision 12");
    CHECK(r.code == 0);
    CHECK(r.out == "0.000000000000+0.000000000000i\n");
}

TEST_CASE("eval of a structure symbol outside its domain prints 0")
{
    const Run r = run("eval RJ.Jre[0] 0.6 1");
    CHECK(r.code == 0);
    CHECK(r.out == "0\n");
}

TEST_CASE("eval of a one-place restricted function")
{
    const Run r = run("eval RJ2.exp 0.5");
    CHECK(r.code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(std::exp(0.5)).epsilon(1e-9));
}

TEST_CASE("eval Jtilde agrees with eval J through q = exp(2 pi i tau)")
{
    const double x = 0.1;
    const double y = 1.1;
    const double pi = std::acos(-1.0);
    const double r = std::exp(-2 * pi * y);
    char args[128];
    std::snprintf(args, sizeof args, "eval Jtilde %.17g %.17g --precision 12", r * std::cos(2 * pi * x),
                  r * std::sin(2 * pi * x));
    const Run a = run(args);
    const Run b = run("eval J 0.1 1.1 --precision 12");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("domain and usage errors exit with 2")
{
    CHECK(run("eval J 0 -1").code == 2);
    CHECK(run("eval J 0 0").code == 2);
    CHECK(run("eval Jtilde 1 0").code == 2);
    CHECK(run("eval Nope 0 1").code == 2);
    CHECK(run("eval RJ.Zz[0] 0 1").code == 2);
    CHECK(run("eval J 0").code == 2);
    CHECK(run("eval J 0 1 --deriv 7").code == 2);
    CHECK(run("audit nosuchsuite").code == 2);
    CHECK(run("grid strip --res 5000x10 --out /tmp/x.csv").code == 2);
    CHECK(run("grid nowhere --out /tmp/x.csv").code == 2);
    CHECK(run("series 8").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("the domain error message names the violated predicate")
{
    const std::string cmd = "\"" MODULUS_BIN "\" eval J 0 -1 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[512] = {};
    const std::size_t n = std::fread(buf, 1, sizeof buf - 1, pipe);
    pclose(pipe);
    CHECK(std::string(buf, n).find("Im(tau) > 0") != std::string::npos);
}

TEST_CASE("I/O failures exit with 3")
{
    CHECK(run("grid strip --res 4x4 --out /nonexistent-dir/grid.csv").code == 3);
    CHECK(run("wdivide --f /nonexistent-dir/f.json --g /nonexistent-dir/g.json --trunc 3").code == 3);
    CHECK(run("audit ramanujan", "MODULUS_CONFIG=/nonexistent-dir/config.json").code == 3);
}

TEST_CASE("audit exit codes follow the verdict")
{
    CHECK(run("audit ramanujan").code == 0);
    CHECK(run("audit covering 10000 42").code == 0);
    CHECK(run("audit modularity --samples 20 --tol 1e-30").code == 1);
}

TEST_CASE("a failing audit prints its worst input")
{
    const Run r = run("audit modularity --samples 20 --tol 1e-30");
    CHECK(r.out.find("worst input: tau=") != std::string::npos);
}

TEST_CASE("audit JSON reports are byte-identical for a fixed seed")
{
    const Run a = run("audit all --json --no-timing --seed 9");
    const Run b = run("audit all --json --no-timing --seed 9");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto doc = nlohmann::json::parse(a.out);
    CHECK(doc.at("suite") == "all");
    CHECK(doc.at("seed") == 9);
    CHECK(doc.at("samples").get<long>() > 0);
    CHECK(doc.at("wall_ms") == 0.0);
    for (const auto& c : doc.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.contains("max_residual"));
        CHECK(c.contains("tolerance"));
        CHECK(c.at("pass") == true);
    }
}

TEST_CASE("the report file matches the printed JSON")
{
    const auto path = scratch("report.json");
    const Run r = run("audit qmaps --json --no-timing --samples 50 --report " + path.string());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(r.out == ss.str());
}

TEST_CASE("positional and flag forms of samples and seed agree")
{
    CHECK(run("audit covering 500 3 --json --no-timing").out ==
          run("audit covering --samples 500 --seed 3 --json --no-timing").out);
}

TEST_CASE("config file values apply and flags override them")
{
    const auto cfg = scratch("config.json");
    std::ofstream(cfg) << R"({"seed": 5, "samples": 40, "order": 48, "tolerances": {"j_invariance": 1e-30}})";
    const std::string env = "MODULUS_CONFIG=" + cfg.string();
    const Run r = run("audit modularity --json --no-timing", env);
    CHECK(r.code == 1);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("seed") == 5);
    for (const auto& c : doc.at("checks")) {
        if (c.at("name") == "j_invariance") CHECK(c.at("tolerance") == 1e-30);
    }
    const auto overridden = nlohmann::json::parse(run("audit modularity --json --no-timing --seed 6", env).out);
    CHECK(overridden.at("seed") == 6);

    std::ofstream(cfg) << "{ not json";
    CHECK(run("audit ramanujan", env).code == 2);
}

TEST_CASE("strip tile-index grid leaves no point with Im >= 1/3 unlabeled")
{
    const auto path = scratch("strip.csv");
    REQUIRE(run("grid strip --res 200x200 --quantity tile-index --out " + path.string()).code == 0);
    const auto rows = read_csv(path);
    CHECK(rows.size() == 200u * 200u);
    std::size_t none = 0;
    std::size_t below = 0;
    for (const auto& row : rows) {
        REQUIRE(row.size() == 3);
        if (std::stod(row[1]) >= 1.0 / 3.0 && row[2] == "none") ++none;
        if (std::stod(row[1]) < 1.0 / 3.0 && row[2] == "none") ++below;
    }
    CHECK(none == 0);
    CHECK(below > 0);
}

TEST_CASE("q-disk absJ grid is finite away from q = 0")
{
    const auto path = scratch("qdisk.csv");
    REQUIRE(run("grid q-disk --res 100x100 --quantity absJ --out " + path.string()).code == 0);
    const auto rows = read_csv(path);
    CHECK(rows.size() == 100u * 100u);
    for (const auto& row : rows) {
        const double v = std::stod(row[2]);
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
    }
}

TEST_CASE("fundamental-domain reJ grid matches eval spot checks")
{
    const auto path = scratch("fd.json");
    REQUIRE(run("grid fundamental-domain --res 50x50 --quantity reJ --format json --out " + path.string()).code == 0);
    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc.at("width") == 50);
    CHECK(doc.at("height") == 50);
    const auto& pts = doc.at("points");
    REQUIRE(pts.size() == 2500u);
    for (std::size_t idx : {0u, 777u, 1234u, 2499u}) {
        const double x = pts[idx][0];
        const double y = pts[idx][1];
        char args[128];
        std::snprintf(args, sizeof args, "eval J %.17g %.17g --precision 12", x, y);
        const Run r = run(args);
        REQUIRE(r.code == 0);
        const double re = std::stod(r.out);
        const double grid_value = pts[idx][2];
        CHECK(grid_value == doctest::Approx(re).epsilon(1e-10));
    }
}

TEST_CASE("reduce prints the reduced point, matrix and word")
{
    const Run r = run("reduce 0.3 0.1");
    CHECK(r.code == 0);
    CHECK(r.out.find("reduced 0.000000000000000+1.000000000000000i") != std::string::npos);
    CHECK(r.out.find("[[3, -1], [1, 0]]") != std::string::npos);
    CHECK(r.out.find("word    T T T S") != std::string::npos);
}

TEST_CASE("series prints divisor-sum coefficients")
{
    const Run r = run("series 6 --order 3");
    CHECK(r.code == 0);
    CHECK(r.out == "0 1\n1 -504\n2 -16632\n3 -122976\n");
}

TEST_CASE("wdivide divides serialized series")
{
    const auto f = scratch("f.json");
    const auto g = scratch("g.json");
    // f = x2^2 - x1, g = x2^3
    std::ofstream(f) << R"({"num_vars": 2, "truncation": 6, "terms": [
        {"exponents": [0, 2], "coeff": "1"}, {"exponents": [1, 0], "coeff": "-1"}]})";
    std::ofstream(g) << R"({"num_vars": 2, "truncation": 6, "terms": [{"exponents": [0, 3], "coeff": 1}]})";
    const Run r = run("wdivide --f " + f.string() + " --g " + g.string() + " --trunc 6");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("order") == 2);
    REQUIRE(doc.at("remainders").size() == 2);
    // x2^3 = x2 (x2^2 - x1) + x1 x2: Q = x2, R_0 = 0, R_1 = x1.
    const auto& q_terms = doc.at("quotient").at("terms");
    REQUIRE(q_terms.size() == 1);
    CHECK(q_terms[0].at("exponents") == nlohmann::json::array({0, 1}));
    CHECK(doc.at("remainders")[0].at("terms").empty());
    const auto& r1 = doc.at("remainders")[1].at("terms");
    REQUIRE(r1.size() == 1);
    CHECK(r1[0].at("exponents") == nlohmann::json::array({1}));

    std::ofstream(g) << "[1, 2";
    CHECK(run("wdivide --f " + f.string() + " --g " + g.string() + " --trunc 6").code == 2);
}
