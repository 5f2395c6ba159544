// Generates a batch of random instances and cross-checks the three exact
// solvers against each other, printing one line per instance.

#include <iostream>

#include "storyline/storyline.hpp"

int main(int argc, char** argv) {
    using namespace storyline;
    int k = argc > 1 ? std::atoi(argv[1]) : 4;
    int n = argc > 2 ? std::atoi(argv[2]) : 6;
    int count = argc > 3 ? std::atoi(argv[3]) : 10;

    for (std::uint64_t seed = 1; seed <= static_cast<std::uint64_t>(count); ++seed) {
        StorylineInstance instance = gen_uniform({k, n, 0.5, seed});
        SequentialInstance sequential = to_sequential(instance);

        SearchResult sat = find_min_lambda(instance);
        int itd = solve_itd(sequential).crossings();
        int fpt = solve_fpt(sequential).crossings();

        bool agree = sat.block_crossings == itd && itd == fpt;
        std::cout << "seed " << seed << ": sat=" << sat.block_crossings << " itd=" << itd
                  << " fpt=" << fpt << (agree ? "" : "  <-- DISAGREEMENT") << "\n";
        if (!agree) return 1;
    }
    return 0;
}
