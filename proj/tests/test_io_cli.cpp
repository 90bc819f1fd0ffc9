#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace vqfp;
using namespace vqfp::testing;

namespace {

std::string cli_path() {
    const char* p = std::getenv("VQFP_CLI");
    REQUIRE(p != nullptr);
    return p;
}

struct CliRun {
    int exit_code = -1;
    std::string output;
};

CliRun run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliRun r;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string kExample = std::string(VQFP_DATA_DIR) + "/paper_example.json";

std::string temp_path(const std::string& name) {
    return std::string("vqfp_test_") + name;
}

}  // namespace

TEST_CASE("instance load populates the example") {
    const ProblemInstance p = load_instance(kExample);
    CHECK(p.n == 1);
    CHECK(p.num_objectives() == 3);
    REQUIRE(p.bounds);
    CHECK(p.bounds->lo(0) == doctest::Approx(-2.0));
    CHECK(p.bounds->hi(0) == doctest::Approx(2.0));
    CHECK(p.num_constraints() == 2);  // box expanded to two affine rows
}

TEST_CASE("serialize then reload is field-exact") {
    const ProblemInstance p = load_instance(kExample);
    const std::string path = temp_path("roundtrip.json");
    save_instance(p, path);
    const ProblemInstance q = load_instance(path);
    REQUIRE(q.n == p.n);
    REQUIRE(q.num_objectives() == p.num_objectives());
    for (int i = 0; i < p.num_objectives(); ++i) {
        const auto& a = p.objectives[static_cast<size_t>(i)];
        const auto& b = q.objectives[static_cast<size_t>(i)];
        CHECK((a.f.Q - b.f.Q).cwiseAbs().maxCoeff() == 0.0);
        CHECK((a.f.c - b.f.c).cwiseAbs().maxCoeff() == 0.0);
        CHECK(a.f.d == b.f.d);
        CHECK((a.g.Q - b.g.Q).cwiseAbs().maxCoeff() == 0.0);
        CHECK(a.g.d == b.g.d);
    }
    std::remove(path.c_str());
}

TEST_CASE("17-digit doubles survive the round trip") {
    std::mt19937_64 rng(113);
    InstanceOptions opt;
    opt.n = 2;
    opt.m = 2;
    const ProblemInstance p = random_instance(rng, opt);
    const std::string path = temp_path("digits.json");
    save_instance(p, path);
    const ProblemInstance q = load_instance(path);
    for (int i = 0; i < 2; ++i) {
        CHECK((p.objectives[static_cast<size_t>(i)].f.Q -
               q.objectives[static_cast<size_t>(i)].f.Q)
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
        CHECK(p.objectives[static_cast<size_t>(i)].g.d ==
              q.objectives[static_cast<size_t>(i)].g.d);
    }
    std::remove(path.c_str());
}

TEST_CASE("loader rejects invalid instances with named violations") {
    SUBCASE("asymmetric A beyond the pre-symmetrization budget") {
        Json j;
        j["n"] = 2;
        j["objectives"] = Json::array();
        Json jo;
        jo["A"] = {{0.0, 1.0}, {0.0, 0.0}};
        jo["a"] = {0.0, 0.0};
        jo["a0"] = 0.0;
        jo["B"] = {{1.0, 0.0}, {0.0, 1.0}};
        jo["b"] = {0.0, 0.0};
        jo["b0"] = 1.0;
        j["objectives"].push_back(jo);
        CHECK_THROWS_AS(instance_from_json(j), ValidationError);
    }
    SUBCASE("B with a negative eigenvalue") {
        Json j;
        j["n"] = 1;
        j["objectives"] = Json::array();
        Json jo;
        jo["A"] = {{1.0}};
        jo["a"] = {0.0};
        jo["a0"] = 0.0;
        jo["B"] = {{-0.1}};
        jo["b"] = {0.0};
        jo["b0"] = 1.0;
        j["objectives"].push_back(jo);
        CHECK_THROWS_AS(instance_from_json(j), ValidationError);
    }
    SUBCASE("malformed JSON") {
        const std::string path = temp_path("broken.json");
        std::ofstream(path) << "{ not json";
        CHECK_THROWS_AS(load_instance(path), ParseError);
        std::remove(path.c_str());
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_instance("does_not_exist.json"), ParseError);
    }
}

TEST_CASE("command line vector parsing") {
    const Vector v = parse_vector("1.5,-2,3e-1");
    REQUIRE(v.size() == 3);
    CHECK(v(0) == doctest::Approx(1.5));
    CHECK(v(1) == doctest::Approx(-2.0));
    CHECK(v(2) == doctest::Approx(0.3));
    CHECK_THROWS_AS(parse_vector("1,,2"), ParseError);
    CHECK_THROWS_AS(parse_vector("1;2"), ParseError);
}

TEST_CASE("CLI exit codes") {
    CHECK(run_cli("certify " + kExample + " --point 0 --json-only").exit_code == 0);
    CHECK(run_cli("certify " + kExample + " --point 1 --json-only").exit_code == 2);
    CHECK(run_cli("certify " + kExample + " --point 5 --json-only").exit_code == 4);
    CHECK(run_cli("bogus-subcommand").exit_code == 64);
    CHECK(run_cli("certify missing.json --point 0").exit_code == 4);
}

TEST_CASE("CLI reports are byte-deterministic") {
    const std::string args = "certify " + kExample + " --point -0.25 --json-only --seed 7";
    const CliRun a = run_cli(args);
    const CliRun b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK_FALSE(a.output.empty());
}

TEST_CASE("CLI oracle front emits a JSON list") {
    const CliRun r = run_cli("oracle " + kExample + " --front --step 0.25 --json-only");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    CHECK(j.is_array());
    CHECK(j.size() > 0);
}

TEST_CASE("CLI kkt prints residuals") {
    const CliRun r = run_cli("kkt " + kExample + " --point 0 --json-only");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    CHECK(j["found"].get<bool>());
    CHECK(j["multipliers"]["stationarity_residual"].get<double>() <= 1e-8);
}

TEST_CASE("CLI dual-check roundtrip reports the interior-point limitation") {
    const CliRun r = run_cli("dual-check " + kExample + " --roundtrip --point 0 --json-only");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    CHECK_FALSE(j["constructed"].get<bool>());
    CHECK(j["reason"].get<std::string>() == "lambda-sum-zero");
}
