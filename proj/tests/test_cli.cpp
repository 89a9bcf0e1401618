#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

using Json = nlohmann::ordered_json;

namespace {

struct CliResult {
    int status = -1;
    std::string out;
};

// Runs the CLI through /bin/sh, capturing stdout; stderr is dropped.
CliResult run_cli(const std::string &args, const std::string &env_prefix = "") {
    CliResult res;
    std::string cmd = env_prefix + " " + std::string(RCRT_CLI_BIN) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
    int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

Json parse(const CliResult &res) {
    REQUIRE_FALSE(res.out.empty());
    return Json::parse(res.out);
}

std::string without_duration(const std::string &text) {
    Json j = Json::parse(text);
    j.erase("duration_seconds");
    return j.dump();
}

}  // namespace

TEST_CASE("solve: happy path") {
    auto res = run_cli("solve --moduli 3,5 --d 100 --remainders 34,234");
    CHECK(res.status == 0);
    Json j = parse(res);
    CHECK(j["n"] == "1234");
    CHECK(j["a"] == "34");
    CHECK(j["n0"] == "12");
    CHECK(j["gamma"] == Json::array({"0", "2"}));
    CHECK(j["q"] == Json::array({"4", "2"}));
}

TEST_CASE("solve: zero remainders") {
    auto res = run_cli("solve --moduli 3,5 --d 100 --remainders 0,0");
    CHECK(res.status == 0);
    CHECK(parse(res)["n"] == "0");
}

TEST_CASE("solve: inconsistent input exits 2") {
    auto res = run_cli("solve --moduli 3,5 --d 100 --remainders 34,233");
    CHECK(res.status == 2);
    Json j = parse(res);
    CHECK(j == Json{{"error", "inconsistent"}});
}

TEST_CASE("solve: usage errors exit 3") {
    CHECK(run_cli("solve --moduli 3,5 --d 100").status == 3);
    CHECK(run_cli("solve --moduli 3,5 --d 100 --remainders 1x,2").status == 3);
    CHECK(run_cli("solve --moduli 4,6 --d 100 --remainders 0,0").status == 3);
    CHECK(run_cli("solve --moduli 3,5 --d 100 --remainders 34,600").status == 3);
    CHECK(run_cli("bogus-subcommand").status == 3);
}

TEST_CASE("reconstruct: three algorithms") {
    auto res = run_cli("reconstruct --algo extremes --moduli 3,5 --d 100 --remainders 44,221");
    CHECK(res.status == 0);
    Json j = parse(res);
    CHECK(j["n_hat"] == "1232");
    CHECK(j["method"] == "extremes");
    CHECK(j["branch"] == "low-spread");
    CHECK(j["gamma_hat"] == Json::array({"0", "2"}));
    CHECK(j["stats"]["alpha"] == "44");
    CHECK(j["stats"]["beta"] == "21");
    CHECK(j["stats"].contains("nu"));
    CHECK_FALSE(j["stats"].contains("mu"));

    res = run_cli("reconstruct --algo quotient --moduli 3,5 --d 100 --remainders 195,115");
    CHECK(res.status == 0);
    j = parse(res);
    CHECK(j["n_hat"] == "1105");
    CHECK(j["method"] == "quotient");
    CHECK(j["branch"] == "none");
    CHECK(j["q_hat"] == Json::array({"3", "2"}));

    auto wx = run_cli("reconstruct --algo wangxia --moduli 3,5 --d 100 --remainders 195,115");
    CHECK(wx.status == 0);
    Json jw = parse(wx);
    CHECK(jw["n_hat"] == j["n_hat"]);
    CHECK(jw["q_hat"] == j["q_hat"]);
    CHECK(jw["method"] == "wang_xia");
}

TEST_CASE("reconstruct: degenerate stats exit 2") {
    auto res = run_cli("reconstruct --algo extremes --moduli 3,5 --d 100 --remainders 0,50");
    CHECK(res.status == 2);
    CHECK(parse(res)["error"] == "degenerate_stats");
}

TEST_CASE("reconstruct: unknown algorithm exits 3") {
    CHECK(run_cli("reconstruct --algo nonsense --moduli 3,5 --d 100 --remainders 0,0").status == 3);
}

TEST_CASE("simulate: exhaustive sweep scorecard") {
    auto res = run_cli("simulate --mode exhaustive --moduli 3,5 --d 16");
    CHECK(res.status == 0);
    Json j = parse(res);
    CHECK(j["total_trials"] == "11760");
    REQUIRE(j["algorithms"].size() == 3);
    for (const auto &algo : j["algorithms"]) {
        CHECK(algo["success_rate"] == 1.0);
        CHECK(algo["failures"] == "0");
    }
    CHECK(j["total_failures"] == "0");
}

TEST_CASE("simulate: random determinism, byte-identical modulo duration") {
    const std::string cmd = "simulate --mode random --moduli 3,5,7 --d 1000 --trials 200 --seed 9";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.status == 0);
    CHECK(b.status == 0);
    CHECK(without_duration(a.out) == without_duration(b.out));

    auto threaded = run_cli(cmd, "CRT_THREADS=2");
    CHECK(threaded.status == 0);
    CHECK(without_duration(a.out) == without_duration(threaded.out));
}

TEST_CASE("simulate: explicit bound override") {
    auto res = run_cli("simulate --mode exhaustive --moduli 3,5 --d 16 --bound 0");
    CHECK(res.status == 0);
    Json j = parse(res);
    CHECK(j["total_trials"] == "240");
    CHECK(j["config"]["error_bound"] == "0");
    for (const auto &algo : j["algorithms"]) CHECK(algo["max_abs_err"] == "0");

    CHECK(run_cli("simulate --mode exhaustive --moduli 3,5 --d 16 --bound x").status == 3);
}

TEST_CASE("simulate: config validation exits 3") {
    CHECK(run_cli("simulate --mode random --moduli 3,5 --d 100 --seed 1").status == 3);
    CHECK(run_cli("simulate --mode random --moduli 3,5 --d 100 --trials 10").status == 3);
    CHECK(run_cli("simulate --mode sideways --moduli 3,5 --d 100").status == 3);
    CHECK(run_cli("simulate --mode exhaustive --moduli 3,5 --d 16 --algos quotient,quotient")
              .status == 3);
    CHECK(run_cli("simulate --mode exhaustive --moduli 3,5 --d 16", "CRT_THREADS=0").status == 3);
}

TEST_CASE("simulate: CSV log") {
    const std::string path = "/tmp/rcrt_cli_test.csv";
    std::remove(path.c_str());
    auto res = run_cli("simulate --mode exhaustive --moduli 3,5 --d 16 --algos quotient --csv " +
                       path);
    CHECK(res.status == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "trial_index,N,deltas,algo,n_hat,abs_err,success");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 11760);
    std::remove(path.c_str());
}

TEST_CASE("sharpness: witness output and validation") {
    auto res = run_cli("sharpness --p 7 --q 11 --d 8");
    CHECK(res.status == 0);
    Json j = parse(res);
    CHECK(j["n1"] == "454");
    CHECK(j["n2"] == "10");
    CHECK(j["observation"] == Json::array({"8", "12"}));
    CHECK(j["gap"] == "444");
    CHECK(j["instance1"]["deltas"] == Json::array({"2", "-2"}));

    CHECK(run_cli("sharpness --p 7 --q 7 --d 8").status == 3);
    CHECK(run_cli("sharpness --p 7 --q 11 --d 10").status == 3);
}

TEST_CASE("gen-recover") {
    auto res = run_cli("gen-recover --moduli 120,200,450 --remainders 57,177,327");
    CHECK(res.status == 0);
    Json j = parse(res);
    CHECK(j["ref_index"] == 2);
    CHECK(j["tau4"] == "40");
    CHECK(j["q_hat"] == "3");
    CHECK(j["n_hat"] == "777");

    res = run_cli("gen-recover --moduli 120,200,450 --remainders 66,170,320");
    CHECK(res.status == 0);
    CHECK(parse(res)["n_hat"] == "770");

    res = run_cli("gen-recover --moduli 3,5 --remainders 2,1");
    CHECK(res.status == 0);
    j = parse(res);
    CHECK(j["tau4"] == "1");
    CHECK(j["n_hat"] == "11");

    CHECK(run_cli("gen-recover --moduli 120 --remainders 57").status == 3);
    CHECK(run_cli("gen-recover --moduli 120,200 --remainders 57,200").status == 3);
}

TEST_CASE("stdout carries exactly one JSON document") {
    auto res = run_cli("solve --moduli 3,5 --d 100 --remainders 34,234");
    Json j;
    CHECK_NOTHROW(j = Json::parse(res.out));  // whole stream parses as one value
}
