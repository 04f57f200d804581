#include "magbound/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

using namespace magbound;

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(MAGBOUND_CLI) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
    int status = pclose(f);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

double json_number(const std::string& out, const nlohmann::json::json_pointer& ptr) {
    return nlohmann::json::parse(out).at(ptr).get<double>();
}

}  // namespace

TEST_CASE("json helpers") {
    CHECK(num_json(2.0408008219647).dump() == "2.04080082196");
    CHECK(num_json(1.0 / 0.0).dump() == "\"inf\"");
    NCPolyQ p = parse_ncpoly("Y1234 - 1/2*Y2143 + 3 Y{10}Y2");
    CHECK(p.coeff({1, 2, 3, 4}) == 1);
    CHECK(p.coeff({2, 1, 4, 3}) == Rational(-1, 2));
    CHECK(p.coeff({10, 2}) == 3);
    NCPolyQ h = parse_ncpoly("Y12 - Y21");
    nlohmann::json j = ncpoly_json(h);
    CHECK(j.at("degree") == 2);
    CHECK(j.at("terms").size() == 2);
    CHECK(ncpoly_from_json(j) == h);
    CHECK(ncpoly_from_json(j.at("terms")) == h);
    CHECK_THROWS(parse_ncpoly("Y12 +"));
    CHECK(envelope("x", {{"a", 1}}).at("schema") == kSchemaVersion);
}

TEST_CASE("command line examples") {
    CHECK(cli("theta --k 4 --lambda 1/2 --q 1").out == "5/48\n");
    CHECK(cli("theta --k 1").out == "1\n");
    // (8λ⁴−16λ³+4λ²+4λ−(1−κ)·4λ(1−λ)λ)/24 at λ = 1/3, κ = 1/2
    CHECK(cli("theta --a 2 --b 2 --lambda 1/3 --q 1").out == "23/486\n");
    CHECK(cli("bound --method trivial-upper --q 1").out.rfind("upper 2.5198", 0) == 0);
    Run r = cli("bound --method pth-root --lambda 1/2 --p 5 --q 2 --format json");
    CHECK(r.code == 0);
    CHECK(json_number(r.out, "/result/lower"_json_pointer) == doctest::Approx(2.0415).epsilon(1e-4));
    CHECK(cli("bch --l1 --x1 0 --x2 0").out == "l1 0\n");
    double cl = json_number(cli("bch --critical-lambda --format json").out, "/result/criticalLambda/lambda"_json_pointer);
    CHECK(cl >= 0.35865);
    CHECK(cl <= 0.35866);
    double c2 = json_number(cli("bch --scan-c2 --q 1 --format json").out, "/result/c2/radius"_json_pointer);
    CHECK(c2 > 2.89847930);
}

TEST_CASE("exit codes") {
    CHECK(cli("").code == 2);
    CHECK(cli("theta --k 4 --lambda 3/2").code == 2);
    CHECK(cli("theta --k 4 --q 1 --kappa 1/2").code == 2);
    CHECK(cli("bound --method nope").code == 2);
    CHECK(cli("bch --l1 --x1 4").code == 2);
    CHECK(cli("verify --only 1 3").code == 0);
    CHECK(cli("verify-convexity --p 3 --n 4 --trials 200").code == 0);
}

TEST_CASE("identical configurations give identical json") {
    for (const char* args : {"radius --p 5 --lambda 1/3 --q 1 --n 256 --format json",
                             "norm --mu 5 --lambda 2/5 --q 2 --certificate --format json",
                             "verify-convexity --p 1.5 --n 6 --trials 300 --seed 9 --format json",
                             "scan --p 3 --points 9 --q 1 --format json", "kernel --p 5 --lambda 2/5 --q 1 --format json"}) {
        Run a = cli(args), b = cli(args);
        CHECK(a.code == 0);
        CHECK(!a.out.empty());
        CHECK(a.out == b.out);
    }
}
