#pragma once

// Shared test fixtures: instance shorthands and the independent oracles
// the suites check the implementation against. Everything here must stay
// independent of the code paths under test (brute force only).

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "storyline/cnf.hpp"
#include "storyline/instance.hpp"
#include "storyline/permutation.hpp"
#include "storyline/sequential.hpp"

namespace test_helpers {

// Instance with every character alive over [0, n) and meeting i at [i, i+1).
inline storyline::StorylineInstance sequential_instance(
    int num_characters, const std::vector<std::vector<int>>& meetings) {
    storyline::SequentialInstance seq;
    seq.num_characters = num_characters;
    seq.meetings = meetings;
    return storyline::to_storyline(seq);
}

// All permutations of 1..k, in lexicographic order.
inline std::vector<std::vector<int>> all_perms(int k) {
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i + 1;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline bool contiguous(const std::vector<int>& set, const std::vector<int>& perm) {
    if (set.size() <= 1) return true;
    int lo = -1, hi = -1, found = 0;
    for (int i = 0; i < static_cast<int>(perm.size()); ++i)
        if (std::find(set.begin(), set.end(), perm[i]) != set.end()) {
            if (lo < 0) lo = i;
            hi = i;
            ++found;
        }
    return found == static_cast<int>(set.size()) && hi - lo + 1 == found;
}

// Exhaustive minimum block crossings for an always-alive sequential
// instance: breadth-first over (permutation, meetings served) pairs with
// explicit visited sets. Independent of the Fpt implementation: no Lehmer
// ranks, no greedy closure, meetings may be served lazily.
inline int brute_force_min_crossings(int k, const std::vector<std::vector<int>>& meetings) {
    const int n = static_cast<int>(meetings.size());
    auto serve_all = [&](const std::vector<int>& perm, int from) {
        while (from < n && contiguous(meetings[from], perm)) ++from;
        return from;
    };
    std::set<std::pair<std::vector<int>, int>> visited;
    std::vector<std::pair<std::vector<int>, int>> frontier;
    for (const std::vector<int>& perm : all_perms(k)) {
        int served = serve_all(perm, 0);
        if (served == n) return 0;
        if (visited.insert({perm, served}).second) frontier.push_back({perm, served});
    }
    std::vector<storyline::BlockMove> moves = storyline::enumerate_block_moves(k);
    for (int crossings = 1;; ++crossings) {
        std::vector<std::pair<std::vector<int>, int>> next_frontier;
        for (const auto& [perm, served] : frontier) {
            for (const storyline::BlockMove& move : moves) {
                std::vector<int> moved = storyline::apply_move(perm, move);
                int now = serve_all(moved, served);
                if (now == n) return crossings;
                if (visited.insert({moved, now}).second) next_frontier.push_back({moved, now});
            }
        }
        frontier = std::move(next_frontier);
        if (frontier.empty()) return -1;  // unreachable for valid instances
    }
}

// Truth-table SAT oracle for formulas with few variables.
inline std::optional<std::vector<int>> brute_force_sat(const storyline::CnfFormula& formula) {
    const int n = formula.num_variables;
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << n); ++bits) {
        bool ok = true;
        for (const std::vector<int>& clause : formula.clauses) {
            bool satisfied = false;
            for (int lit : clause) {
                int v = lit < 0 ? -lit : lit;
                bool value = (bits >> (v - 1)) & 1;
                if (value == (lit > 0)) {
                    satisfied = true;
                    break;
                }
            }
            if (!satisfied) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<int> model;
            for (int v = 1; v <= n; ++v) model.push_back((bits >> (v - 1)) & 1 ? v : -v);
            return model;
        }
    }
    return std::nullopt;
}

}  // namespace test_helpers
