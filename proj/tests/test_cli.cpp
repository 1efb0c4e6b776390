#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

// Drives the installed binary end to end.  FLOORSET_CLI_PATH is injected by
// the build so the tests always exercise the freshly linked executable.

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string tag = std::to_string(counter++);
    const std::string out_path = "cli_stdout_" + tag + ".tmp";
    const std::string err_path = "cli_stderr_" + tag + ".tmp";
    const std::string cmd = std::string(FLOORSET_CLI_PATH) + " " + args + " >" +
                            out_path + " 2>" + err_path;
    const int raw = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("cli enumerate prints the set and reports the formula") {
    const auto r = run_cli("enumerate --x 10");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\n2\n3\n5\n10\n");
    CHECK(r.err.find("count=5") != std::string::npos);
    CHECK(r.err.find("formula=5") != std::string::npos);
}

TEST_CASE("cli enumerate rejects x = 0 with a usage error") {
    const auto r = run_cli("enumerate --x 0");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("cli count emits one row and treats a = 0 as the class q") {
    const auto base = run_cli("count --x 100 --q 5 --a 5");
    CHECK(base.exit_code == 0);
    CHECK(base.out.substr(0, base.out.find('\n')) ==
          "count,main_term,raw_error,normalized_error");
    CHECK(base.out.find("\n6,4,2,") != std::string::npos);

    const auto aliased = run_cli("count --x 100 --q 5 --a 0");
    CHECK(aliased.out == base.out);

    const auto defaulted = run_cli("count --x 100 --q 5");
    CHECK(defaulted.out == base.out);
}

TEST_CASE("cli scan covers the explicit grid and stays under the default budget") {
    const auto r = run_cli("scan --x-grid 10000 --q-policy explicit --q 1,2");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.out) == 4);   // header + (1,1), (2,1), (2,2)
    CHECK(r.out.find("10000,1,1,199,200,-1,") != std::string::npos);
    CHECK(r.err.find("rows=3") != std::string::npos);
}

TEST_CASE("cli scan flags violations when the budget is impossibly tight") {
    const auto r = run_cli("scan --x-grid 10000 --q-policy single --q 2 --constant-C 1e-9");
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli scan rejects an empty grid and a conflicting q list") {
    CHECK(run_cli("scan --x-grid ,").exit_code == 2);
    CHECK(run_cli("scan --x-grid 100 --q-policy paper_range --q 3").exit_code == 2);
    CHECK(run_cli("scan --x-grid 100 --q-policy single --q 1,2").exit_code == 2);
}

TEST_CASE("cli scan output is identical across thread counts") {
    const std::string tail = "scan --x-grid 10000,100000 --q-policy explicit "
                             "--q 1,2,3,5,7 --threads ";
    const auto one = run_cli(tail + "1");
    const auto four = run_cli(tail + "4");
    CHECK(one.exit_code == 0);
    CHECK(four.exit_code == 0);
    CHECK(one.out == four.out);
    CHECK(count_lines(one.out) > 10);
}

TEST_CASE("cli decompose row reproduces the exact split") {
    const auto r = run_cli("decompose --x 1000000 --q 7 --a 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("x,q,a,s1,s2,s21,s22_0,s22_1,boundary_correction") == 0);
    CHECK(r.out.find("1000000,7,3,143,150,") != std::string::npos);
    // s1 + s2 + boundary_correction must match the direct count (143 + 150).
    const auto count = run_cli("count --x 1000000 --q 7 --a 3");
    CHECK(count.out.find("\n293,") != std::string::npos);
    CHECK(r.out.substr(r.out.size() - 3) == ",0\n");
}

TEST_CASE("cli vaaler-check keeps every sample within budget") {
    const auto r = run_cli("vaaler-check --H 10,100 --samples 1000");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.out) == 2001);   // header + 2 x 1000 rows
    CHECK(r.err.find("violations=0") != std::string::npos);

    CHECK(run_cli("vaaler-check --H 0 --samples 10").exit_code == 2);
}

TEST_CASE("cli expsum-check passes its default grid") {
    const auto r = run_cli("expsum-check --x-grid 10000,100000 --q 1,2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("x,q,a,delta,D,D_prime,value,cbrt_bound,pair_total,"
                     "optimal_H,ratio_cbrt,ratio_pair") == 0);
    CHECK(count_lines(r.out) > 20);
    CHECK(r.err.find("max_ratio_cbrt=0.0") != std::string::npos);
}

TEST_CASE("cli primes reports the landmark heights") {
    const auto r = run_cli("primes --x 100,1000000");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("100,5,") != std::string::npos);
    CHECK(r.out.find("1000000,277,") != std::string::npos);

    CHECK(run_cli("primes --x 4").exit_code == 2);
}

TEST_CASE("cli json format yields parseable arrays") {
    const auto r = run_cli("count --x 100 --q 5 --a 5 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"count\": 6") != std::string::npos);
    CHECK(r.out.find("\"main_term\": 4") != std::string::npos);

    const auto e = run_cli("enumerate --x 10 --format json");
    CHECK(e.out == "[1,2,3,5,10]\n");
}

TEST_CASE("cli --output writes the table to a file instead of stdout") {
    const std::string path = "cli_table.tmp";
    const auto r = run_cli("count --x 100 --q 5 --a 5 --output " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    const std::string table = slurp(path);
    CHECK(table.find("\n6,4,2,") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli bench emits one timing row per kernel") {
    const auto r = run_cli("bench --x 100000");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("op,x,result,millis") == 0);
    CHECK(r.out.find("enumerate,100000,631,") != std::string::npos);
    CHECK(r.out.find("count,100000,") != std::string::npos);
}
