#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "storyline/fpt.hpp"
#include "storyline/generators.hpp"
#include "storyline/itd.hpp"
#include "storyline/solution.hpp"

using namespace storyline;

TEST_CASE("apply_move swaps adjacent blocks", "[exact]") {
    std::vector<int> perm = {1, 2, 3, 4, 5};
    CHECK(apply_move(perm, {1, 2, 4}) == std::vector<int>{3, 4, 1, 2, 5});
    CHECK(apply_move(perm, {2, 2, 3}) == std::vector<int>{1, 3, 2, 4, 5});  // transposition
    CHECK_THROWS_AS(apply_move(perm, {0, 2, 4}), std::out_of_range);
    CHECK_THROWS_AS(apply_move(perm, {3, 3, 6}), std::out_of_range);
}

TEST_CASE("every move undoes through its inverse", "[exact]") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        int k = 2 + static_cast<int>(rng.next_below(7));
        std::vector<BlockMove> moves = enumerate_block_moves(k);
        const BlockMove& move = moves[rng.next_below(moves.size())];
        std::vector<int> perm = lehmer_unrank(rng.next_below(factorial(k)), k);
        std::vector<int> roundtrip = apply_move(apply_move(perm, move), move.inverse());
        CHECK(roundtrip == perm);
    }
}

TEST_CASE("move enumeration counts C(k+1, 3)", "[exact]") {
    for (int k = 1; k <= 8; ++k) {
        std::vector<BlockMove> moves = enumerate_block_moves(k);
        CHECK(moves.size() == count_block_moves(k));
        CHECK(moves.size() == std::size_t(k + 1) * k * (k - 1) / 6);
        std::set<std::vector<int>> images;
        std::vector<int> identity(k);
        for (int i = 0; i < k; ++i) identity[i] = i + 1;
        for (const BlockMove& move : moves) {
            CHECK(move.valid_for(k));
            images.insert(apply_move(identity, move));
        }
        CHECK(images.size() == moves.size());  // distinct moves act distinctly
    }
}

TEST_CASE("lehmer rank and unrank invert each other", "[exact]") {
    for (int k = 1; k <= 6; ++k)
        for (std::uint64_t rank = 0; rank < factorial(k); ++rank)
            CHECK(lehmer_rank(lehmer_unrank(rank, k)) == rank);
    SplitMix64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        std::uint64_t rank = rng.next_below(factorial(8));
        CHECK(lehmer_rank(lehmer_unrank(rank, 8)) == rank);
    }
    CHECK(lehmer_unrank(0, 4) == std::vector<int>{1, 2, 3, 4});
    CHECK(lehmer_unrank(factorial(4) - 1, 4) == std::vector<int>{4, 3, 2, 1});
}

TEST_CASE("greedy_advance consumes exactly the contiguous prefix", "[exact]") {
    SequentialInstance seq;
    seq.num_characters = 3;
    seq.meetings = {{1, 2}, {2, 3}, {1, 3}};
    std::vector<int> pos = {0, 0, 1, 2};  // permutation (1,2,3)
    CHECK(greedy_advance(pos, seq, 0) == 2);
    CHECK(greedy_advance(pos, seq, 2) == 2);  // {1,3} not contiguous
    CHECK(greedy_advance(pos, seq, 3) == 3);  // nothing left

    SequentialInstance single;
    single.num_characters = 3;
    single.meetings = {{1, 3}};
    CHECK(greedy_advance(pos, single, 0) == 0);  // 2 sits between 1 and 3
    std::vector<int> adjacent = {0, 1, 0, 2};    // permutation (2,1,3): 1,3 adjacent
    CHECK(greedy_advance(adjacent, single, 0) == 1);
}

TEST_CASE("triangle instance needs exactly one crossing", "[exact]") {
    SequentialInstance seq;
    seq.num_characters = 3;
    seq.meetings = {{1, 2}, {2, 3}, {1, 3}};
    REQUIRE(test_helpers::brute_force_min_crossings(3, seq.meetings) == 1);

    SequentialSolution itd = solve_itd(seq);
    SequentialSolution fpt = solve_fpt(seq);
    CHECK(itd.crossings() == 1);
    CHECK(fpt.crossings() == 1);
}

TEST_CASE("already-contiguous instances cost nothing", "[exact]") {
    SequentialInstance seq;
    seq.num_characters = 4;
    seq.meetings = {{1, 2}, {1, 2, 3}, {3, 4}};
    REQUIRE(test_helpers::brute_force_min_crossings(4, seq.meetings) == 0);
    CHECK(solve_itd(seq).crossings() == 0);
    CHECK(solve_fpt(seq).crossings() == 0);

    SequentialInstance one;
    one.num_characters = 5;
    one.meetings = {{2, 4, 5}};
    CHECK(solve_itd(one).crossings() == 0);
    CHECK(solve_fpt(one).crossings() == 0);
}

TEST_CASE("single character instances are trivial", "[exact]") {
    SequentialInstance seq;
    seq.num_characters = 1;
    CHECK(solve_itd(seq).crossings() == 0);
    CHECK(solve_fpt(seq).crossings() == 0);
}

TEST_CASE("itd and fpt match brute force on random instances", "[exact]") {
    SplitMix64 seeds(1001);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 3 + static_cast<int>(seeds.next_below(2));
        int n = 1 + static_cast<int>(seeds.next_below(5));
        StorylineInstance inst = gen_uniform({k, n, 0.5, seeds.next()});
        SequentialInstance seq = to_sequential(inst);
        int expected = test_helpers::brute_force_min_crossings(k, seq.meetings);
        SequentialSolution itd = solve_itd(seq);
        SequentialSolution fpt = solve_fpt(seq);
        CHECK(itd.crossings() == expected);
        CHECK(fpt.crossings() == expected);

        // Embedded solutions must verify and preserve the crossing count.
        MeetingGroupSequence groups = build_meeting_groups(inst);
        for (const SequentialSolution* schedule : {&itd, &fpt}) {
            Solution solution = embed_sequential(groups, *schedule);
            CHECK_FALSE(verify_solution(groups, solution).has_value());
            CHECK(count_block_crossings(solution) == expected);
        }
    }
}

TEST_CASE("restricting itd starts to contiguous first meetings is sound", "[exact]") {
    SplitMix64 seeds(345);
    for (int trial = 0; trial < 25; ++trial) {
        int k = 3 + static_cast<int>(seeds.next_below(2));  // kappa <= 4
        int n = 1 + static_cast<int>(seeds.next_below(4));
        StorylineInstance inst = gen_uniform({k, n, 0.5, seeds.next()});
        SequentialInstance seq = to_sequential(inst);
        ItdOptions unrestricted;
        unrestricted.restrict_starts = false;
        CHECK(solve_itd(seq).crossings() == solve_itd(seq, unrestricted).crossings());
    }
}

TEST_CASE("fpt serve permutations are nondecreasing and within range", "[exact]") {
    SplitMix64 seeds(777);
    for (int trial = 0; trial < 20; ++trial) {
        StorylineInstance inst = gen_uniform({4, 6, 0.5, seeds.next()});
        SequentialInstance seq = to_sequential(inst);
        SequentialSolution schedule = solve_fpt(seq);
        REQUIRE(schedule.serve_permutation.size() == seq.meetings.size());
        int last = 1;
        for (int serve : schedule.serve_permutation) {
            CHECK(serve >= last);
            CHECK(serve <= schedule.crossings() + 1);
            last = serve;
        }
        CHECK(schedule.serve_permutation.front() == 1);
    }
}

TEST_CASE("fpt refuses instances over the memory budget", "[exact]") {
    SequentialInstance seq;
    seq.num_characters = 9;
    for (int i = 0; i < 1000; ++i) seq.meetings.push_back({1 + (i % 8), 9});
    CHECK_THROWS_AS(solve_fpt(seq), FptMemoryError);

    FptOptions tiny;
    tiny.memory_budget_bytes = 1024;
    SequentialInstance small;
    small.num_characters = 5;
    small.meetings = {{1, 2}};
    CHECK_THROWS_AS(solve_fpt(small, tiny), FptMemoryError);
}

TEST_CASE("fpt distance-only mode returns the same optimum", "[exact]") {
    SplitMix64 seeds(888);
    for (int trial = 0; trial < 10; ++trial) {
        StorylineInstance inst = gen_uniform({4, 5, 0.5, seeds.next()});
        SequentialInstance seq = to_sequential(inst);
        FptOptions no_path;
        no_path.reconstruct_path = false;
        CHECK(solve_fpt(seq, no_path).crossings() == solve_fpt(seq).crossings());
    }
}

TEST_CASE("itd reports an exhausted budget distinctly", "[exact]") {
    SequentialInstance seq;
    seq.num_characters = 3;
    seq.meetings = {{1, 2}, {2, 3}, {1, 3}};
    ItdOptions options;
    options.depth_limit_max = 0;
    CHECK_THROWS_AS(solve_itd(seq, options), ItdBudgetExhausted);
}
