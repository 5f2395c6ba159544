#include <cstdlib>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "storyline/dimacs.hpp"
#include "storyline/generators.hpp"
#include "storyline/lambda_search.hpp"
#include "storyline/sat_backend.hpp"

using namespace storyline;

TEST_CASE("write_dimacs emits the exact format", "[satdriver]") {
    CnfFormula two;
    two.num_variables = 2;
    two.clauses = {{1, 2}, {-1}};
    CHECK(write_dimacs(two) == "p cnf 2 2\n1 2 0\n-1 0\n");

    CnfFormula empty;
    CHECK(write_dimacs(empty) == "p cnf 0 0\n");
}

TEST_CASE("dimacs output is byte-identical across runs and to the golden file",
          "[satdriver]") {
    StorylineInstance inst = parse_instance(
        "storyline 1\nchars 3\nmeet 0 1 1 2\nmeet 1 2 2 3\n");
    MeetingGroupSequence groups = build_meeting_groups(inst);
    std::string first = write_dimacs(encode(inst, groups, 2).first);
    std::string second = write_dimacs(encode(inst, groups, 2).first);
    CHECK(first == second);
    CHECK(first.substr(0, first.find('\n')) == "p cnf 46 " +
                                                   std::to_string(encode(inst, groups, 2)
                                                                      .first.clauses.size()));

    std::ifstream golden("data/k3m2l2.cnf", std::ios::binary);
    REQUIRE(golden);
    std::string expected((std::istreambuf_iterator<char>(golden)),
                         std::istreambuf_iterator<char>());
    CHECK(first == expected);
}

TEST_CASE("dimacs parses back what it writes", "[satdriver]") {
    CnfFormula formula;
    formula.num_variables = 4;
    formula.clauses = {{1, -2, 3}, {-4}, {2, 4}};
    std::istringstream in(write_dimacs(formula));
    CnfFormula parsed = parse_dimacs(in);
    CHECK(parsed.num_variables == formula.num_variables);
    CHECK(parsed.clauses == formula.clauses);
}

TEST_CASE("result files parse per the grammar", "[satdriver]") {
    std::istringstream sat("SAT\n1 -2 3 0\n");
    DimacsResult r = parse_result(sat);
    CHECK(r.sat);
    CHECK(r.model == std::vector<int>{1, -2, 3});
    std::istringstream unsat("UNSAT\n");
    CHECK_FALSE(parse_result(unsat).sat);
    std::istringstream junk("MAYBE\n");
    CHECK_THROWS_AS(parse_result(junk), ParseError);
}

TEST_CASE("fallback solves forced formulas", "[satdriver]") {
    CnfFormula contradiction;
    contradiction.num_variables = 1;
    contradiction.clauses = {{1}, {-1}};
    CHECK_FALSE(solve(contradiction).sat());

    CnfFormula forced;
    forced.num_variables = 2;
    forced.clauses = {{1, 2}, {-1}};
    SolverVerdict verdict = solve(forced);
    REQUIRE(verdict.sat());
    CHECK(verdict.model == std::vector<int>{-1, 2});
}

TEST_CASE("fallback agrees with brute force on random formulas", "[satdriver]") {
    SplitMix64 rng(2024);
    int sat_count = 0;
    for (int trial = 0; trial < 300; ++trial) {
        CnfFormula formula;
        formula.num_variables = 4 + static_cast<int>(rng.next_below(10));
        int clauses = 2 + static_cast<int>(rng.next_below(45));
        for (int c = 0; c < clauses; ++c) {
            std::vector<int> clause;
            int width = 1 + static_cast<int>(rng.next_below(3));
            for (int l = 0; l < width; ++l) {
                int v = 1 + static_cast<int>(rng.next_below(formula.num_variables));
                clause.push_back(rng.next_below(2) ? v : -v);
            }
            formula.clauses.push_back(clause);
        }
        bool expected = test_helpers::brute_force_sat(formula).has_value();
        SolverVerdict verdict = solve(formula);
        REQUIRE(verdict.sat() == expected);
        if (expected) {
            ++sat_count;
            CHECK(model_satisfies(verdict.model, formula));
        }
    }
    CHECK(sat_count > 50);          // the mix actually exercises both answers
    CHECK(sat_count < 280);
}

TEST_CASE("fallback agrees with brute force at the 3-SAT phase transition", "[satdriver]") {
    SplitMix64 rng(424242);
    int sat_count = 0;
    for (int trial = 0; trial < 150; ++trial) {
        CnfFormula formula;
        formula.num_variables = 14 + static_cast<int>(rng.next_below(8));
        int clauses = static_cast<int>(formula.num_variables * 4.26);
        for (int c = 0; c < clauses; ++c) {
            std::vector<int> clause;
            while (clause.size() < 3) {
                int v = 1 + static_cast<int>(rng.next_below(formula.num_variables));
                bool repeat = false;
                for (int lit : clause) repeat = repeat || std::abs(lit) == v;
                if (!repeat) clause.push_back(rng.next_below(2) ? v : -v);
            }
            formula.clauses.push_back(clause);
        }
        bool expected = test_helpers::brute_force_sat(formula).has_value();
        SolverVerdict verdict = solve(formula);
        REQUIRE(verdict.sat() == expected);
        if (expected) {
            ++sat_count;
            CHECK(model_satisfies(verdict.model, formula));
        }
    }
    CHECK(sat_count > 30);
    CHECK(sat_count < 140);
}

TEST_CASE("fallback enforces its variable ceiling", "[satdriver]") {
    CnfFormula big;
    big.num_variables = 10;
    big.clauses = {{1}};
    SolverConfig config;
    config.fallback_variable_ceiling = 5;
    CHECK_THROWS_AS(solve(big, config), FallbackCeilingError);
}

TEST_CASE("external backend runs through the minisat contract", "[satdriver][cli]") {
    const char* cli = std::getenv("STORYLINE_CLI");
    REQUIRE(cli != nullptr);
    std::string wrapper = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                          "/storyline-test-backend.sh";
    {
        std::ofstream out(wrapper);
        out << "#!/bin/sh\nexec \"" << cli << "\" sat-solve \"$1\" \"$2\"\n";
    }
    REQUIRE(std::system(("chmod +x " + wrapper).c_str()) == 0);

    SolverConfig config;
    config.executable = wrapper;
    CnfFormula forced;
    forced.num_variables = 2;
    forced.clauses = {{1, 2}, {-1}};
    SolverVerdict verdict = solve(forced, config);
    REQUIRE(verdict.sat());
    CHECK(verdict.model == std::vector<int>{-1, 2});

    CnfFormula contradiction;
    contradiction.num_variables = 1;
    contradiction.clauses = {{1}, {-1}};
    CHECK_FALSE(solve(contradiction, config).sat());

    SECTION("launch failures are reported distinctly") {
        SolverConfig broken;
        broken.executable = "/nonexistent/solver";
        CHECK_THROWS_AS(solve(forced, broken), BackendLaunchError);
    }
    SECTION("unparsable results are reported distinctly") {
        std::string garbage = wrapper + "-garbage.sh";
        std::ofstream out(garbage);
        out << "#!/bin/sh\necho BOGUS > \"$2\"\n";
        out.close();
        REQUIRE(std::system(("chmod +x " + garbage).c_str()) == 0);
        SolverConfig bad;
        bad.executable = garbage;
        CHECK_THROWS_AS(solve(forced, bad), BackendResultError);
    }
    SECTION("the environment variable selects the backend") {
        REQUIRE(setenv("STORYLINE_SAT_SOLVER", wrapper.c_str(), 1) == 0);
        SolverConfig from_env = SolverConfig::from_environment();
        REQUIRE(unsetenv("STORYLINE_SAT_SOLVER") == 0);
        REQUIRE(from_env.executable.has_value());
        CHECK(*from_env.executable == wrapper);
        CHECK(solve(forced, from_env).sat());
    }
    SECTION("external and fallback agree on encoded instances") {
        SplitMix64 seeds(77);
        for (int trial = 0; trial < 5; ++trial) {
            StorylineInstance inst = gen_uniform({4, 4, 0.5, seeds.next()});
            MeetingGroupSequence groups = build_meeting_groups(inst);
            for (int lambda = 1; lambda <= 3; ++lambda) {
                CnfFormula formula = encode(inst, groups, lambda).first;
                CHECK(solve(formula, config).sat() == solve(formula).sat());
            }
        }
    }
}

TEST_CASE("find_min_lambda follows the doubling schedule", "[satdriver]") {
    // An always-alive instance with optimum lambda = 3 (two crossings):
    // verified independently by brute force over the sequential reduction.
    std::vector<std::vector<int>> meetings = {{1, 2}, {3, 4}, {1, 3}, {2, 4}, {1, 4}, {2, 3}};
    REQUIRE(test_helpers::brute_force_min_crossings(4, meetings) == 2);
    StorylineInstance inst = test_helpers::sequential_instance(4, meetings);

    SearchResult result = find_min_lambda(inst);
    CHECK(result.lambda_opt == 3);
    CHECK(result.block_crossings == 2);
    REQUIRE(result.trace.probes.size() == 3);
    CHECK(result.trace.probes[0].lambda == 1);
    CHECK(result.trace.probes[0].status == SolverVerdict::Status::unsat);
    CHECK(result.trace.probes[1].lambda == 2);
    CHECK(result.trace.probes[1].status == SolverVerdict::Status::unsat);
    CHECK(result.trace.probes[2].lambda == 3);
    CHECK(result.trace.probes[2].status == SolverVerdict::Status::sat);
    CHECK_FALSE(verify_solution(inst, result.solution).has_value());
    CHECK(count_block_crossings(result.solution) == 2);
}

TEST_CASE("sat path handles concurrency with births and deaths", "[satdriver]") {
    // Overlapping meetings plus one birth and one death. The three forced
    // alive-set changes pin lambda at 3, and permutations
    // (1,3,2) / (1,3,2,4) / (1,2,4) realize all four groups crossing-free,
    // so the optimum is lambda = 3 with zero crossings.
    StorylineInstance inst = parse_instance(
        "storyline 1\nchars 4\nlife 1 0 4\nlife 2 0 4\nlife 3 0 2\nlife 4 1 4\n"
        "meet 0 2 1 3\nmeet 1 3 2 4\nmeet 3 4 1 2 4\n");
    REQUIRE(validate(inst).empty());
    CHECK_THROWS_AS(to_sequential(inst), NotSequential);  // sat-only territory

    SearchResult result = find_min_lambda(inst);
    CHECK(result.lambda_opt == 3);
    CHECK(result.block_crossings == 0);
    CHECK(result.trace.probes.size() == 1);  // lower bound already tight
    CHECK_FALSE(verify_solution(inst, result.solution).has_value());
    CHECK(count_block_crossings(result.solution) == 0);

    EventTimeline timeline = build_timeline(inst);
    CHECK(timeline.structural_events.size() == 4);
    CHECK(result.block_crossings ==
          result.lambda_opt - static_cast<int>(timeline.structural_events.size()) + 1);
}

TEST_CASE("single-group instances need no crossings", "[satdriver]") {
    StorylineInstance inst = parse_instance("storyline 1\nchars 3\nmeet 0 1 1 2 3\n");
    SearchResult result = find_min_lambda(inst);
    CHECK(result.lambda_opt == 1);
    CHECK(result.block_crossings == 0);
}

TEST_CASE("exponential and linear search agree", "[satdriver]") {
    SplitMix64 seeds(31337);
    for (int trial = 0; trial < 6; ++trial) {
        StorylineInstance inst =
            gen_uniform({3 + static_cast<int>(seeds.next_below(3)),
                         2 + static_cast<int>(seeds.next_below(5)), 0.5, seeds.next()});
        SearchOptions linear;
        linear.linear = true;
        SearchResult a = find_min_lambda(inst);
        SearchResult b = find_min_lambda(inst, linear);
        CHECK(a.lambda_opt == b.lambda_opt);
        // Exponential probes may overshoot; either way the trace must be
        // consistent: no SAT below the optimum, no UNSAT at or above it.
        for (const SearchResult* r : {&a, &b})
            for (const ProbeRecord& probe : r->trace.probes)
                CHECK((probe.status == SolverVerdict::Status::sat) ==
                      (probe.lambda >= r->lambda_opt));
    }
}

TEST_CASE("binary narrowing phase triggers past offset two", "[satdriver]") {
    // Optimum 5 crossings forces probes 1,2,3,5,9 then binary between 5 and 9.
    SmallOptOutput gen = gen_small_opt({6, 12, 0.5, 5, 99});
    StorylineInstance inst = gen.instance;
    SearchResult result = find_min_lambda(inst);
    int true_bc = test_helpers::brute_force_min_crossings(
        6, to_sequential(inst).meetings);
    CHECK(result.lambda_opt == true_bc + 1);
    if (result.lambda_opt > 4) {
        std::vector<int> probed;
        for (const ProbeRecord& p : result.trace.probes) probed.push_back(p.lambda);
        CHECK(std::is_sorted(probed.begin(), probed.begin() + 4));
    }
}
