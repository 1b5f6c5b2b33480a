#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>

#include "paracount/report.hpp"

using namespace paracount;

namespace {

std::string run_cli(const std::string& args) {
    std::string cmd = "./paracount " + args + " > cli_out.json 2>&1";
    int rc = std::system(cmd.c_str());
    int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream f("cli_out.json");
    std::stringstream ss;
    ss << f.rdbuf();
    if (code != 0) return "EXIT" + std::to_string(code) + ":" + ss.str();
    return ss.str();
}

}  // namespace

TEST_CASE("parsers") {
    const FqField& F2 = make_field(2, 1);
    FPoly f = parse_poly(F2, "t^2+t+1");
    CHECK(f.c == std::vector<fcode>({1, 1, 1}));
    CHECK(parse_poly(F2, "t+1").c == std::vector<fcode>({1, 1}));
    const FqField& F5 = make_field(5, 1);
    CHECK(parse_poly(F5, "t^2+3*t+2").c == std::vector<fcode>({2, 3, 1}));
    auto mu = parse_multipartition("1,1;2");
    REQUIRE(mu.size() == 2);
    CHECK(mu[0] == Partition({1, 1}));
    CHECK(mu[1] == Partition({2}));
    CHECK(parse_int_list("1,1,2") == std::vector<int>({1, 1, 2}));
    CHECK(prime_power_decompose(9) == std::make_pair(3L, 2));
    CHECK_THROWS(prime_power_decompose(12));
}

TEST_CASE("json serialization") {
    QPoly p = QPoly::from_coeffs({Rat(4), Rat(1)});
    Json j = poly_to_json(p);
    CHECK(j["string"] == "q + 4");
    CHECK(j["coeffs_ascending"][0][0] == "4");
    std::string csv = json_to_csv(j);
    CHECK(csv.find("string,q + 4") != std::string::npos);
}

TEST_CASE("cli: rank2 route matches the table") {
    std::string out = run_cli("count --route rank2 --shape 0,0 --profile 2,1,1");
    Json j = Json::parse(out);
    CHECK(j["polynomial"]["string"] == "q + 2");
}

TEST_CASE("cli: brute and twist routes") {
    std::string out = run_cli("count --route brute --q 3 --shape 1,0 --profile 1,1,1");
    CHECK(Json::parse(out)["value"] == "1");
    out = run_cli("count --route twist --q 3 --shape 0,0 --profile 1,1,1");
    CHECK(Json::parse(out)["value"] == "1");
    // infeasible instance: machine-readable error, nonzero exit
    out = run_cli("count --route brute --q 2 --shape 0,0 --profile 1,1,1,1");
    CHECK(out.substr(0, 5) == "EXIT1");
    CHECK(out.find("insufficient points") != std::string::npos);
}

TEST_CASE("cli: formula route is symbolic and deterministic") {
    std::string a = run_cli("count --route formula --shape 0,0 --profile 2,2 --q 5");
    std::string b = run_cli("count --route formula --shape 0,0 --profile 2,2 --q 5");
    CHECK(a == b);  // byte-identical reports
    Json j = Json::parse(a);
    CHECK(j["polynomial"]["string"] == "q");
    CHECK(j["evaluations"][0]["value"] == "5");
}

TEST_CASE("cli: explicit points") {
    std::string out =
        run_cli("count --route brute --q 3 --shape 0,0 --points t,t+1,t+2 --flags full");
    CHECK(Json::parse(out)["value"] == "1");
}

TEST_CASE("cli: higgs and verify") {
    std::string out = run_cli("higgs --route direct --q 3 --shape 0,0 --profile 1,1,1");
    Json j = Json::parse(out);
    CHECK(j["y_count"] == "24");
    CHECK(j["d_A"] == 0);
    out = run_cli("verify --suite kostka-oracle --nmax 2");
    CHECK(Json::parse(out)["report"]["pass"] == true);
    out = run_cli("verify --suite descent --q 2 --profile 1,1");
    CHECK(Json::parse(out)["report"]["pass"] == true);
}

TEST_CASE("cli: kostka matrix") {
    std::string out = run_cli("kostka --n 2");
    Json j = Json::parse(out);
    CHECK(j["matrix"]["(1,1)"]["(1,1)"] == "q");
    CHECK(j["matrix"]["(2)"]["(2)"] == "1");
}
