#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

const char* binary() {
    const char* bin = std::getenv("QUADGRAPH_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "QUADGRAPH_BIN must point at the CLI binary");
    return bin;
}

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = std::string(binary()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("connected subcommand") {
    RunResult yes = run("connected --p 5 --a 1");
    CHECK(yes.exit_code == 0);
    CHECK(json::parse(yes.out)["connected"] == true);

    RunResult no = run("connected --p 5 --a 0");
    CHECK(no.exit_code == 0);
    CHECK(json::parse(no.out)["connected"] == false);
}

TEST_CASE("count subcommand reports I_p") {
    RunResult r = run("count --p 5");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["I_p"] == 2);
    CHECK(j.contains("sqrt2p"));
}

TEST_CASE("sweep emits a full JSON report") {
    RunResult r = run("sweep --p 101 --stats cycles,components --max-k 10");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["meta"]["p"] == 101);
    CHECK(j["results"]["cycle_hist"][1] == 101);       // C_1 = p
    CHECK(j["results"]["cycle_hist"][2] == 50);        // C_2 = (p-1)/2
    CHECK(j["results"]["n_odd"] == 101);               // one odd component per a
    CHECK(j.contains("timing"));
}

TEST_CASE("sweep results are thread-count independent") {
    json one = json::parse(run("sweep --p 509 --max-k 20 --threads 1").out);
    json many = json::parse(run("sweep --p 509 --max-k 20 --threads 5").out);
    CHECK(one["results"] == many["results"]);
    CHECK(one["predicted"] == many["predicted"]);
}

TEST_CASE("QUADGRAPH_THREADS is honored without changing results") {
    json base = json::parse(run("sweep --p 101 --max-k 10 --threads 1").out);
    json env = json::parse(run("sweep --p 101 --max-k 10").out); // container env varies
    std::string with_env =
        "QUADGRAPH_THREADS=3 " + std::string(binary()) + " sweep --p 101 --max-k 10";
    FILE* pipe = popen((with_env + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    pclose(pipe);
    CHECK(json::parse(out)["results"] == base["results"]);
    CHECK(env["results"] == base["results"]);
}

TEST_CASE("sweep csv format") {
    RunResult r = run("sweep --p 101 --stats cycles --max-k 5 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("cycle_hist") != std::string::npos);
    CHECK(r.out.find("k,count") != std::string::npos);
}

TEST_CASE("predict subcommand") {
    RunResult r = run("predict --p 500009");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["sqrt2p"] == doctest::Approx(1000.009));
    CHECK(j["sqrtPiP2"] == doctest::Approx(886.234).epsilon(1e-4));
}

TEST_CASE("verify subcommand passes on small primes") {
    RunResult r = run("verify --p 101");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);

    RunResult range = run("verify --p-range 3:13 --iso");
    CHECK(range.exit_code == 0);
    CHECK(range.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run("connected --p 9 --a 1").exit_code == 1);  // composite
    CHECK(run("connected --p 2 --a 0").exit_code == 1);  // even prime
    CHECK(run("connected --p 5").exit_code == 1);        // missing --a
    CHECK(run("").exit_code == 1);                       // missing subcommand
    CHECK(run("sweep --p 101 --stats nonsense").exit_code == 1);
    CHECK(run("verify").exit_code == 1);                 // neither --p nor --p-range
    CHECK(run("verify --p 101 --p-range 3:5").exit_code == 1);
}
