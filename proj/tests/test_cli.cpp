#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "capq/qpoly.hpp"
#include "capq/verify.hpp"

#include "json.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CAPQ_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.out.append(buffer.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace

TEST_CASE("table output") {
    const RunResult r = run_cli("table --class C --m 1 --n 19");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "C_1(19) = 10\n(16,3)\n(15,4)\n(14,3,2)\n(12,4,3)\n(10,9)\n(10,6,3)\n(10,4,3,2)\n"
          "(9,8,2)\n(9,6,4)\n(8,6,3,2)\n");

    const RunResult a2 = run_cli("table --class A --m 2 --n 19");
    CHECK(a2.exit_code == 0);
    CHECK(a2.out.rfind("A_2(19) = 12\n", 0) == 0);
    CHECK(a2.out.find("(9,5,3,2)\n") != std::string::npos);

    const RunResult d0 = run_cli("table --class D --m 1 --n 0");
    CHECK(d0.exit_code == 0);
    CHECK(d0.out == "D_1(0) = 1\n()\n");

    const RunResult js = run_cli("table --class C --m 1 --n 19 --format json");
    CHECK(js.exit_code == 0);
    const auto parsed = nlohmann::json::parse(js.out);
    CHECK(parsed["count"] == 10);
    CHECK(parsed["partitions"][0] == "(16,3)");
}

TEST_CASE("count output") {
    CHECK(run_cli("count --class C --m 1 --n 19").out == "10\n");
    CHECK(run_cli("count --class A --m 2 --n 19").out == "12\n");
    const RunResult upto = run_cli("count --class D --m 2 --n 19 --upto --format csv");
    CHECK(upto.exit_code == 0);
    CHECK(upto.out.rfind("n,count\n0,1\n", 0) == 0);
    CHECK(upto.out.find("\n19,12\n") != std::string::npos);
}

TEST_CASE("series output") {
    CHECK(run_cli("series --family G --m 2 --index 1").out == "1 + b*q\n");
    CHECK(run_cli("series --family P --m 1 --index 0 --i 0 --j 0").out == "1\n");
    CHECK(run_cli("series --family Psi --m 1 --index 2").out == "1 + q^3 + a*q^2 + b*q^4\n");
    CHECK(run_cli("series --family S --index 0").out == "1\n");
    CHECK(run_cli("series --family BouletRHS --index 2 --i 1 --j 0").out ==
          "1 + q + q^2 + q^3\n");

    SECTION("q-only family Q agrees with the closed form") {
        const RunResult qs = run_cli("series --family Q --m 2 --index 3 --i 1 --j 1 --format json");
        REQUIRE(qs.exit_code == 0);
        const auto parsed = nlohmann::json::parse(qs.out);
        CHECK(capq::QPoly::from_json(parsed["terms"]) == capq::p_closed(2, 6, 1, 1));
    }

    SECTION("csv coefficient table") {
        const RunResult csv = run_cli("series --family G --m 2 --index 1 --format csv");
        CHECK(csv.out == "ea,eb,eq,coeff\n0,0,0,1\n0,1,1,1\n");
    }
}

TEST_CASE("verify exit codes") {
    CHECK(run_cli("verify --suite companion --m 1 --max-n 19").exit_code == 0);
    CHECK(run_cli("verify --suite boulet --max-N 4").exit_code == 0);
    CHECK(run_cli("verify --suite dominance --m 1 --max-N 2").exit_code == 0);
    // the scanner genuinely finds the stated odd-pair monomial missing at m = 2
    CHECK(run_cli("verify --suite dominance --m 2 --max-N 1").exit_code == 1);
    CHECK(run_cli("verify --suite companion --m 3").exit_code == 2);
    CHECK(run_cli("bogus").exit_code == 2);
    CHECK(run_cli("table --class Z --m 1 --n 4").exit_code == 2);
    CHECK(run_cli("series --family P --m 1 --index 2").exit_code == 2);  // missing --i/--j
}

TEST_CASE("verify JSON round trips to the library report") {
    const RunResult r = run_cli("verify --suite boulet --max-N 3 --format json");
    REQUIRE(r.exit_code == 0);
    const auto arr = nlohmann::json::parse(r.out);
    REQUIRE(arr.size() == 1);
    CHECK(capq::VerificationReport::from_json(arr[0]) == capq::check_boulet(3));
    CHECK_FALSE(arr[0].contains("elapsed_ms"));  // deterministic output by default

    const RunResult timed = run_cli("verify --suite boulet --max-N 3 --format json --timings");
    CHECK(nlohmann::json::parse(timed.out)[0].contains("elapsed_ms"));
}

TEST_CASE("output is deterministic byte for byte") {
    for (const char* cmd :
         {"verify --suite companion --m 1 --max-n 25 --format json",
          "verify --suite dominance --m 2 --max-N 2 --format text",
          "series --family Psi --m 2 --index 5 --format csv",
          "table --class D --m 2 --n 19"}) {
        const RunResult first = run_cli(cmd);
        const RunResult second = run_cli(cmd);
        CHECK(first.out == second.out);
        CHECK(first.exit_code == second.exit_code);
    }
}

TEST_CASE("--output writes the same bytes to a file") {
    const std::string path = "cli_output_test.tmp";
    const RunResult direct = run_cli("series --family G --m 1 --index 6");
    const RunResult filed = run_cli("series --family G --m 1 --index 6 --output " + path);
    CHECK(filed.exit_code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == direct.out);
    std::remove(path.c_str());
}
