#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef HYPCYL_CLI_PATH
#error "HYPCYL_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(HYPCYL_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/hypcyl_cli_test_") + name;
}

}  // namespace

TEST_CASE("scalar subcommands print the documented values") {
    const auto measure = run_cli("line-measure --d 2 --r 1");
    CHECK(measure.exit_code == 0);
    CHECK(measure.out == "6.2831853\n");

    const auto distance = run_cli("geo-dist --ball 0,0 --ball 0.5,0");
    CHECK(distance.exit_code == 0);
    CHECK(distance.out == "1.0986123\n");
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("line-measure --bogus 1").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("numeric failures exit with code 1") {
    // Expected line count far beyond the window cap.
    CHECK(run_cli("phase-scan --d 2 --window-r 25 --u-grid 50 --reps 2 --seed 1").exit_code == 1);
}

TEST_CASE("branching table values") {
    const std::string path = temp_path("branching.csv");
    const auto res =
        run_cli("branching-table --u 0.1 --R 2 --n-max 5 --output " + path);
    CHECK(res.exit_code == 0);
    const std::string body = slurp(path);
    CHECK(body.find("# config:") != std::string::npos);
    CHECK(body.find("\"criticality\":\"subcritical\"") != std::string::npos);
    // F_1 = 0.2, F_2 = 0.04, F_3 = 0.00933...
    CHECK(body.find(",0.2000") != std::string::npos);
    CHECK(body.find(",0.040000000000000") != std::string::npos);
    CHECK(body.find(",0.0093333333333333") != std::string::npos);
}

TEST_CASE("output files rerun identically from their configuration") {
    const std::string a = temp_path("rerun_a.csv");
    const std::string b = temp_path("rerun_b.csv");
    const std::string args = "line-sample --d 2 --r 2 --n 50 --seed 99 --output ";
    CHECK(run_cli(args + a).exit_code == 0);
    CHECK(run_cli(args + b).exit_code == 0);
    const std::string ca = slurp(a);
    CHECK(!ca.empty());
    CHECK(ca == slurp(b));

    const std::string pa = temp_path("phase_a.csv");
    const std::string pb = temp_path("phase_b.csv");
    const std::string pargs =
        "phase-scan --d 2 --window-r 4 --u-grid 0.1,0.2 --reps 8 --seed 7 --output ";
    CHECK(run_cli(pargs + pa).exit_code == 0);
    CHECK(run_cli(pargs + pb).exit_code == 0);
    CHECK(slurp(pa) == slurp(pb));
}

TEST_CASE("json output carries config and results") {
    const std::string path = temp_path("connect.json");
    const auto res = run_cli("connect-one --d 2 --u 0.1 --R 0 --n 10 --seed 3 --format json --output " +
                             path);
    CHECK(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(slurp(path));
    CHECK(doc["command"] == "connect-one");
    CHECK(doc["config"]["u"] == 0.1);
    CHECK(doc["results"]["mu_exact"] == true);
    CHECK(doc["results"]["p"].get<double>() == doctest::Approx(0.8562).epsilon(1e-3));
}

TEST_CASE("tau bins and kernel check run end to end") {
    const std::string path = temp_path("tau.csv");
    const auto res =
        run_cli("tau-bins --d 2 --u 1 --x 2 --l-max 3 --n 20000 --seed 5 --output " + path);
    CHECK(res.exit_code == 0);
    const std::string body = slurp(path);
    CHECK(body.find("l,tau_hat,se") != std::string::npos);

    const auto kc = run_cli("kernel-check --kernel mu --u 0.3 --K 4 --L 4");
    CHECK(kc.exit_code == 0);
    CHECK(kc.out.find("c_hat") != std::string::npos);
}

TEST_CASE("net-build summary") {
    const auto res = run_cli("net-build --d 2 --r 2 --spacing 0.5 --seed 2");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("centers,packing,covering") != std::string::npos);
}

TEST_CASE("acceptance subcommand runs a single fast criterion") {
    const auto res = run_cli("acceptance --only 1 --only 2 --only 3");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("[PASS] 1 catalan-triangle") != std::string::npos);
    CHECK(res.out.find("[PASS] 2 operator-iteration") != std::string::npos);
    CHECK(res.out.find("[PASS] 3 quadrature-consistency") != std::string::npos);
}
