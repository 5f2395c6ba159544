#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "storyline/meeting_groups.hpp"
#include "storyline/permutation.hpp"

namespace storyline {

// A drawing: the permutation sequence, and for each meeting group the
// 1-based index of the permutation realizing it. `assignment` is
// nondecreasing and starts at 1; permutations with no group are "loose".
struct Solution {
    std::vector<std::vector<int>> permutations;
    std::vector<int> assignment;

    int lambda() const { return static_cast<int>(permutations.size()); }

    friend bool operator==(const Solution& a, const Solution& b) {
        return a.permutations == b.permutations && a.assignment == b.assignment;
    }
};

// If `to` arises from `from` by exactly one block crossing, returns that
// move; nullopt if the sequences are equal or not related by one move.
// Both must be permutations of the same elements.
inline std::optional<BlockMove> block_swap_between(const std::vector<int>& from,
                                                   const std::vector<int>& to) {
    if (from.size() != to.size()) return std::nullopt;
    int lo = 0;
    int hi = static_cast<int>(from.size()) - 1;
    while (lo <= hi && from[lo] == to[lo]) ++lo;
    if (lo > hi) return std::nullopt;  // identical
    while (from[hi] == to[hi]) --hi;
    // A block swap rotates the window [lo..hi]; the swapped prefix of the
    // window starts where from[lo] lands in to.
    int split = -1;
    for (int i = lo; i <= hi; ++i)
        if (to[i] == from[lo]) { split = i; break; }
    if (split <= lo) return std::nullopt;
    BlockMove move{lo + 1, lo + (hi - split) + 1, hi + 1};
    if (apply_move(std::vector<int>(from), move) != to) return std::nullopt;
    return move;
}

namespace detail {

inline bool contiguous_in(const std::vector<int>& set, const std::vector<int>& permutation) {
    if (set.size() <= 1) return true;
    int lo = -1, hi = -1, found = 0;
    for (int pos = 0; pos < static_cast<int>(permutation.size()); ++pos) {
        if (std::binary_search(set.begin(), set.end(), permutation[pos])) {
            if (lo < 0) lo = pos;
            hi = pos;
            ++found;
        }
    }
    return found == static_cast<int>(set.size()) && hi - lo + 1 == found;
}

inline std::vector<int> sorted_copy(const std::vector<int>& v) {
    std::vector<int> s = v;
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace detail

// Checks admissibility of a solution against the instance's meeting
// groups. Returns the first violated condition, or nullopt if admissible:
//   - assignment total, nondecreasing, assignment(1) = 1
//   - each assigned permutation holds exactly the group's alive set
//   - each meeting's characters contiguous in the assigned permutation
//   - adjacent permutations over the same set: equal or one block crossing
//   - adjacent permutations over different sets: common order preserved
inline std::optional<std::string> verify_solution(const MeetingGroupSequence& groups,
                                                  const Solution& solution) {
    const int lambda = solution.lambda();
    const std::size_t mu = groups.size();

    if (solution.assignment.size() != mu)
        return "assignment covers " + std::to_string(solution.assignment.size()) +
               " groups, instance has " + std::to_string(mu);
    for (std::size_t l = 0; l < mu; ++l) {
        int r = solution.assignment[l];
        if (r < 1 || r > lambda)
            return "group " + std::to_string(l + 1) + " assigned out of range";
        if (l > 0 && r < solution.assignment[l - 1])
            return "assignment decreases at group " + std::to_string(l + 1);
    }
    if (mu > 0 && solution.assignment[0] != 1) return "first group not assigned to permutation 1";

    for (int r = 0; r < lambda; ++r) {
        std::vector<int> sorted = detail::sorted_copy(solution.permutations[r]);
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return "permutation " + std::to_string(r + 1) + " repeats a character";
    }

    for (std::size_t l = 0; l < mu; ++l) {
        const MeetingGroup& group = groups.groups[l];
        const std::vector<int>& perm = solution.permutations[solution.assignment[l] - 1];
        if (detail::sorted_copy(perm) != group.alive)
            return "permutation " + std::to_string(solution.assignment[l]) +
                   " does not match the alive set of group " + std::to_string(l + 1);
        for (const std::vector<int>& set : group.member_sets)
            if (!detail::contiguous_in(set, perm))
                return "meeting not contiguous in permutation " +
                       std::to_string(solution.assignment[l]) + " (group " +
                       std::to_string(l + 1) + ")";
    }

    for (int r = 0; r + 1 < lambda; ++r) {
        const std::vector<int>& prev = solution.permutations[r];
        const std::vector<int>& next = solution.permutations[r + 1];
        if (detail::sorted_copy(prev) == detail::sorted_copy(next)) {
            if (prev != next && !block_swap_between(prev, next))
                return "permutations " + std::to_string(r + 1) + " and " +
                       std::to_string(r + 2) + " differ by more than one block crossing";
        } else {
            // Common characters must keep their relative order.
            std::vector<int> next_pos(1, -1);
            for (const std::vector<int>& perm : {prev, next})
                for (int c : perm)
                    if (c >= static_cast<int>(next_pos.size())) next_pos.resize(c + 1, -1);
            for (int i = 0; i < static_cast<int>(next.size()); ++i) next_pos[next[i]] = i;
            int last = -1;
            for (int c : prev) {
                if (next_pos[c] < 0) continue;
                if (next_pos[c] < last)
                    return "common characters reordered between permutations " +
                           std::to_string(r + 1) + " and " + std::to_string(r + 2);
                last = next_pos[c];
            }
        }
    }
    return std::nullopt;
}

inline std::optional<std::string> verify_solution(const StorylineInstance& instance,
                                                  const Solution& solution) {
    return verify_solution(build_meeting_groups(instance), solution);
}

// Number of adjacent permutation pairs over the same character set with
// different order. Meaningful for admissible solutions only.
inline int count_block_crossings(const Solution& solution) {
    int crossings = 0;
    for (int r = 0; r + 1 < solution.lambda(); ++r) {
        const std::vector<int>& prev = solution.permutations[r];
        const std::vector<int>& next = solution.permutations[r + 1];
        if (detail::sorted_copy(prev) == detail::sorted_copy(next) && prev != next) ++crossings;
    }
    return crossings;
}

// Pairs of characters, present in both of two adjacent permutations, whose
// relative order flips; summed over the sequence. One admissible block
// crossing of blocks G, H contributes |G|*|H|.
inline long long count_pairwise_crossings(const Solution& solution) {
    long long crossings = 0;
    for (int r = 0; r + 1 < solution.lambda(); ++r) {
        const std::vector<int>& prev = solution.permutations[r];
        const std::vector<int>& next = solution.permutations[r + 1];
        std::vector<int> next_pos;
        for (const std::vector<int>& perm : {prev, next})
            for (int c : perm)
                if (c >= static_cast<int>(next_pos.size())) next_pos.resize(c + 1, -1);
        for (int i = 0; i < static_cast<int>(next.size()); ++i) next_pos[next[i]] = i;
        std::vector<int> shared;  // prev order, positions in next
        for (int c : prev)
            if (next_pos[c] >= 0) shared.push_back(next_pos[c]);
        for (std::size_t i = 0; i < shared.size(); ++i)
            for (std::size_t j = i + 1; j < shared.size(); ++j)
                if (shared[i] > shared[j]) ++crossings;
    }
    return crossings;
}

}  // namespace storyline
