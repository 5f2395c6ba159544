#include <cstdlib>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "storyline/instance_io.hpp"
#include "storyline/solution_io.hpp"
#include "storyline/subprocess.hpp"

using namespace storyline;

namespace {

std::string cli_path() {
    const char* cli = std::getenv("STORYLINE_CLI");
    REQUIRE(cli != nullptr);
    return cli;
}

std::string tmp_dir() {
    const char* dir = std::getenv("TMPDIR");
    return dir && *dir ? dir : "/tmp";
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> argv = {cli_path()};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_process(argv, std::chrono::duration<double>(120.0), true).exit_code;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("gen, solve, render, verify pipeline", "[cli]") {
    std::string dir = tmp_dir();
    std::string instance = dir + "/cli-pipe.story";
    std::string solution = dir + "/cli-pipe.sol";
    std::string report = dir + "/cli-pipe.line";
    std::string svg = dir + "/cli-pipe.svg";

    REQUIRE(run_cli({"gen", "uniform", "--k", "4", "--n", "6", "--p", "0.5", "--seed", "3", "-o",
                     instance}) == 0);

    std::string bc;
    for (const std::string& algo : {std::string("sat"), std::string("itd"), std::string("fpt")}) {
        REQUIRE(run_cli({"solve", instance, "--algo", algo, "-o", solution, "--report", report}) ==
                0);
        std::string line = slurp(report);
        INFO(algo << ": " << line);
        CHECK(line.rfind("lambda=", 0) == 0);
        std::string this_bc = line.substr(line.find("bc="), line.find(" cr=") - line.find("bc="));
        if (bc.empty())
            bc = this_bc;
        else
            CHECK(bc == this_bc);  // all three algorithms agree
        REQUIRE(run_cli({"verify", instance, solution}) == 0);
    }

    REQUIRE(run_cli({"render", instance, solution, "-o", svg}) == 0);
    CHECK(slurp(svg).rfind("<?xml", 0) == 0);
}

TEST_CASE("solution files written by solve parse back identically", "[cli]") {
    std::string dir = tmp_dir();
    std::string instance = dir + "/cli-round.story";
    std::string solution = dir + "/cli-round.sol";
    REQUIRE(run_cli({"gen", "smallopt", "--k", "5", "--n", "10", "--p", "0.5", "--beta", "2",
                     "--seed", "8", "-o", instance}) == 0);
    REQUIRE(run_cli({"solve", instance, "--algo", "itd", "-o", solution}) == 0);
    Solution parsed = parse_solution(slurp(solution));
    CHECK(write_solution(parsed) == slurp(solution));
}

TEST_CASE("distinct exit codes for distinct failures", "[cli]") {
    std::string dir = tmp_dir();

    std::string bogus = dir + "/cli-bogus.story";
    std::ofstream(bogus) << "not a storyline file\n";
    CHECK(run_cli({"solve", bogus, "--algo", "sat"}) == 2);

    std::string invalid = dir + "/cli-invalid.story";
    std::ofstream(invalid) << "storyline 1\nchars 3\nmeet 0 2 1 2\nmeet 1 3 2 3\n";
    CHECK(run_cli({"solve", invalid, "--algo", "sat"}) == 3);

    // Concurrent meetings disqualify the sequential algorithms.
    std::string concurrent = dir + "/cli-concurrent.story";
    std::ofstream(concurrent) << "storyline 1\nchars 4\nmeet 0 2 1 2\nmeet 1 3 3 4\n";
    CHECK(run_cli({"solve", concurrent, "--algo", "itd"}) == 4);
    CHECK(run_cli({"solve", concurrent, "--algo", "sat"}) == 0);

    // Births and deaths too.
    std::string births = dir + "/cli-births.story";
    std::ofstream(births) << "storyline 1\nchars 2\nlife 1 0 2\nlife 2 1 2\nmeet 1 2 1 2\n";
    CHECK(run_cli({"solve", births, "--algo", "fpt"}) == 4);

    // Missing SAT backend.
    std::string fine = dir + "/cli-fine.story";
    std::ofstream(fine) << "storyline 1\nchars 2\nmeet 0 1 1 2\n";
    CHECK(run_cli({"solve", fine, "--algo", "sat", "--solver", "/nonexistent"}) == 5);

    // Fpt over its memory budget.
    std::string wide = dir + "/cli-wide.story";
    {
        std::ofstream out(wide);
        out << "storyline 1\nchars 9\n";
        for (int i = 0; i < 9; ++i) out << "life " << i + 1 << " 0 4000\n";
        for (int i = 0; i < 4000; ++i)
            out << "meet " << i << " " << i + 1 << " " << 1 + (i % 8) << " 9\n";
    }
    CHECK(run_cli({"solve", wide, "--algo", "fpt"}) == 6);
}

TEST_CASE("bench produces the documented CSV and agreement row", "[cli]") {
    std::string dir = tmp_dir();
    std::string csv = dir + "/cli-bench.csv";
    std::string keep = dir + "/cli-bench-keep";
    REQUIRE(run_cli({"bench", "--k", "3..4", "--n", "2,4", "--seeds", "2", "--algos",
                     "sat,itd,fpt", "--timeout", "60", "-o", csv, "--keep", keep}) == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("instance,algorithm,lambda,bc,cr,time_s,peak_memory_bytes,status\n", 0) == 0);
    CHECK(text.find("summary,agreement,,,,,,0 disagreements\n") != std::string::npos);
    // 2 k-values x 2 n-values x 2 seeds x 3 algorithms + header + summary
    int rows = 0;
    for (char c : text)
        if (c == '\n') ++rows;
    CHECK(rows == 2 * 2 * 2 * 3 + 2);
    size_t ok_rows = 0, pos = 0;
    while ((pos = text.find(",ok\n", pos)) != std::string::npos) {
        ++ok_rows;
        pos += 4;
    }
    CHECK(ok_rows == 2 * 2 * 2 * 3);
}

TEST_CASE("bench reruns are row-identical up to time and memory", "[cli]") {
    std::string dir = tmp_dir();
    auto strip_varying = [](const std::string& text) {
        std::istringstream in(text);
        std::string line, out;
        while (std::getline(in, line)) {
            // drop columns 6 and 7 (time_s, peak_memory_bytes)
            std::vector<std::string> cells;
            std::istringstream cols(line);
            std::string cell;
            while (std::getline(cols, cell, ',')) cells.push_back(cell);
            if (cells.size() >= 7) {
                cells[5] = "";
                cells[6] = "";
            }
            for (std::size_t i = 0; i < cells.size(); ++i)
                out += (i ? "," : "") + cells[i];
            out += "\n";
        }
        return out;
    };
    std::string a = dir + "/cli-bench-a.csv", b = dir + "/cli-bench-b.csv";
    std::vector<std::string> args = {"bench", "--k",    "3",  "--n",     "3,5", "--seeds",
                                     "2",     "--algos", "itd,fpt", "--timeout", "30"};
    std::vector<std::string> run_a = args, run_b = args;
    run_a.insert(run_a.end(), {"-o", a});
    run_b.insert(run_b.end(), {"-o", b});
    REQUIRE(run_cli(run_a) == 0);
    REQUIRE(run_cli(run_b) == 0);
    CHECK(strip_varying(slurp(a)) == strip_varying(slurp(b)));
}

TEST_CASE("bench on the small-opt model stays within the budget", "[cli]") {
    std::string dir = tmp_dir();
    std::string csv = dir + "/cli-bench-small.csv";
    REQUIRE(run_cli({"bench", "--model", "smallopt", "--k", "5", "--n", "20", "--beta", "5",
                     "--seeds", "3", "--algos", "itd", "--timeout", "60", "-o", csv}) == 0);
    std::istringstream in(slurp(csv));
    std::string line;
    std::getline(in, line);  // header
    int checked = 0;
    while (std::getline(in, line) && line.rfind("summary", 0) != 0) {
        std::size_t bc_at = line.find(',', line.find(',', line.find(',') + 1) + 1);
        std::size_t bc_end = line.find(',', bc_at + 1);
        int bc = std::stoi(line.substr(bc_at + 1, bc_end - bc_at - 1));
        CHECK(bc <= 5);
        ++checked;
    }
    CHECK(checked == 3);
}
