#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cutofflab/chain.hpp"
#include "cutofflab/distance.hpp"
#include "cutofflab/families.hpp"
#include "cutofflab/profiles.hpp"
#include "cutofflab/spectral.hpp"
#include "cutofflab/types.hpp"

#ifndef CUTOFFLAB_CLI_PATH
#error "CUTOFFLAB_CLI_PATH must point at the cutofflab binary"
#endif

using namespace cutofflab;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args, const std::string& tag) {
    const std::string out_file = "cli_out_" + tag + ".txt";
    std::string cmd = std::string(CUTOFFLAB_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = slurp(out_file);
    std::remove(out_file.c_str());
    return result;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

std::vector<std::string> data_lines(const std::string& content) {
    std::vector<std::string> lines;
    std::stringstream ss(content);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("spectrum: hypercube n=4 gives a 17-line CSV matching the library") {
    auto res = run_cli("spectrum --chain hypercube --n 4", "spec4");
    REQUIRE(res.exit_code == 0);
    auto lines = data_lines(res.output);
    REQUIRE(lines.size() == 17);
    CHECK(lines[0] == "index,eigenvalue,weight_at_start");

    auto dec = decompose(build_hypercube_lazy(4));
    auto cells = split_csv_line(lines[1]);
    REQUIRE(cells.size() == 3);
    CHECK(cells[0] == "1");
    CHECK(cells[1] == format_double(dec.eigenvalues[0]));
    auto mid = split_csv_line(lines[5]);
    CHECK(mid[1] == format_double(dec.eigenvalues[4]));
}

TEST_CASE("spectrum: usage errors exit with code 2") {
    CHECK(run_cli("spectrum --chain random-transpositions --n 7", "rt7").exit_code == 2);
    CHECK(run_cli("spectrum --chain file --path missing_file.chain", "missing").exit_code == 2);
    CHECK(run_cli("spectrum --chain no-such-chain --n 3", "unknown").exit_code == 2);

    // malformed chain file: parse diagnostics on stderr, exit 2
    const std::string bad = "cli_bad.chain";
    {
        std::ofstream out(bad);
        out << "states 2\npi 0.5 0.5\nrow 1 0.4 0.5\nrow 2 0.5 0.5\n";
    }
    auto res = run_cli("spectrum --chain file --path " + bad, "badfile");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("error") != std::string::npos);
    std::remove(bad.c_str());
}

TEST_CASE("profile: closed-form row count and exact library equivalence") {
    auto res = run_cli("profile --closed-form poisson-shuffle --c-min -2 --c-max 3 --c-count 101",
                       "poisson");
    REQUIRE(res.exit_code == 0);
    auto lines = data_lines(res.output);
    REQUIRE(lines.size() == 102);  // header + 101 rows
    CHECK(lines[0] == "c,value");
    for (std::size_t idx : {std::size_t{1}, std::size_t{41}, std::size_t{101}}) {
        auto cells = split_csv_line(lines[idx]);
        REQUIRE(cells.size() == 2);
        double c = -2.0 + 5.0 * static_cast<double>(idx - 1) / 100.0;
        CHECK(cells[0] == format_double(c));
        CHECK(cells[1] == format_double(profile_poisson_shuffle(c)));
    }
}

TEST_CASE("profile: empirical family output equals the library call") {
    auto res = run_cli(
        "profile --family hypercube --n 64 --c-min -1 --c-max 2 --c-count 7", "emp64");
    REQUIRE(res.exit_code == 0);
    auto lines = data_lines(res.output);
    REQUIRE(lines.size() == 8);

    std::vector<double> grid(7);
    for (int i = 0; i < 7; ++i) grid[i] = -1.0 + 3.0 * i / 6.0;
    auto curve = empirical_profile(family_by_name("hypercube"), 64, std::nullopt, grid);
    for (int i = 0; i < 7; ++i) {
        auto cells = split_csv_line(lines[1 + i]);
        CHECK(cells[0] == format_double(curve.c_grid[i]));
        CHECK(cells[1] == format_double(curve.values[i]));
    }
}

TEST_CASE("condition: report shape and byte-identical reruns") {
    const std::string args =
        "condition --family hypercube-analytic --id cond4 --n 50,100,200 "
        "--c-min -1 --c-max 3 --c-count 41";
    auto first = run_cli(args, "cond_a");
    auto second = run_cli(args, "cond_b");
    REQUIRE(first.exit_code == 0);
    CHECK(first.output == second.output);

    auto lines = data_lines(first.output);
    // header + 3 value rows + limsup + reference
    REQUIRE(lines.size() == 6);
    CHECK(split_csv_line(lines[0]).size() == 42);
    CHECK(split_csv_line(lines[1])[0] == "50");
    CHECK(split_csv_line(lines[4])[0] == "limsup");
    CHECK(split_csv_line(lines[5])[0] == "reference");
}

TEST_CASE("tv-curve: schedule mode values match the library") {
    auto res = run_cli(
        "tv-curve --chain hypercube-weight --n 32 --tn 55.45 --wn 32 "
        "--c-min -1 --c-max 1 --c-count 5", "tvw");
    REQUIRE(res.exit_code == 0);
    auto lines = data_lines(res.output);
    REQUIRE(lines.size() == 6);
    auto chain = build_hypercube_weight_chain(32);
    for (int i = 0; i < 5; ++i) {
        double c = -1.0 + 0.5 * i;
        auto cells = split_csv_line(lines[1 + i]);
        CHECK(cells[1] == format_double(d_weighted_birth_death(chain, 55.45 + 32 * c)));
    }
}

TEST_CASE("bound-check: deterministic, holds, exit codes") {
    const std::string args =
        "bound-check --chain bernoulli-laplace --n 40 --k 20 --trials 100 --seed 7";
    auto first = run_cli(args, "bc_a");
    auto second = run_cli(args, "bc_b");
    REQUIRE(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(first.output.find("all_hold=true") != std::string::npos);

    // different seed changes the draws but not the verdict
    auto other = run_cli(
        "bound-check --chain bernoulli-laplace --n 40 --k 20 --trials 50 --seed 8", "bc_c");
    CHECK(other.exit_code == 0);
    CHECK(other.output != first.output);
    CHECK(other.output.find("all_hold=true") != std::string::npos);
}

TEST_CASE("json output parses and carries the same values") {
    auto res = run_cli("--format json profile --closed-form hypercube --c-min 0 --c-max 1 "
                       "--c-count 3", "json");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("\"value\"") != std::string::npos);
    CHECK(res.output.find(format_double(profile_hypercube(0.0)).substr(0, 10)) !=
          std::string::npos);
}
