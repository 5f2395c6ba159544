#pragma once

#include <cstdint>
#include <stdexcept>

#include "storyline/itd.hpp"
#include "storyline/sequential.hpp"

namespace storyline {

struct FptOptions {
    // Refuse instances whose state arrays would exceed this many bytes.
    std::uint64_t memory_budget_bytes = std::uint64_t(2) << 30;
    bool reconstruct_path = true;
};

struct FptMemoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Flat-array BFS over states (permutation rank, meetings served), addressed
// rank * (n+1) + next. With path reconstruction the store is 16-bit exact
// distances plus (move, source-rank) per state; without it, one byte per
// state as a visited marker. Optimal block-crossing distances routinely
// exceed 255 at n = 1000, so a one-byte distance cell cannot support an
// unambiguous predecessor walk.
class FptSearch {
public:
    FptSearch(const SequentialInstance& seq, const FptOptions& options)
        : seq_(seq), options_(options), k_(seq.num_characters),
          n_(static_cast<int>(seq.meetings.size())), moves_(enumerate_block_moves(k_)) {
        if (k_ < 1) throw std::invalid_argument("solve_fpt: no characters");
        if (k_ > 12)
            throw FptMemoryError("instance too large for Fpt: " + std::to_string(k_) +
                                 "! permutations cannot fit any flat distance array");
        perm_count_ = factorial(k_);
        std::uint64_t states = perm_count_ * (n_ + 1);
        std::uint64_t bytes_per_state = options.reconstruct_path ? 2 + 2 + 4 : 1;
        if (states > options.memory_budget_bytes / bytes_per_state)
            throw FptMemoryError("instance too large for Fpt: " + std::to_string(k_) + "! * " +
                                 std::to_string(n_ + 1) + " states need " +
                                 std::to_string(states * bytes_per_state) + " bytes, budget " +
                                 std::to_string(options_.memory_budget_bytes));
        if (options.reconstruct_path) {
            dist16_.assign(states, kUnreached16);
            pred_move_.assign(states, 0);
            pred_rank_.assign(states, 0);
        } else {
            visited_.assign(states, 0);
        }
    }

    SequentialSolution run() {
        std::vector<std::uint64_t> frontier;
        std::uint64_t target = kNoState;

        // Every permutation, greedy-advanced, is a source at distance 0.
        std::vector<int> pos(k_ + 1, 0);
        for (std::uint64_t rank = 0; rank < perm_count_ && target == kNoState; ++rank) {
            std::vector<int> perm = lehmer_unrank(rank, k_);
            for (int i = 0; i < k_; ++i) pos[perm[i]] = i;
            int next = greedy_advance(pos, seq_, 0);
            std::uint64_t state = rank * (n_ + 1) + next;
            if (seen(state)) continue;
            mark(state, 0);
            if (next == n_) target = state;
            frontier.push_back(state);
        }

        int layer = 0;
        std::vector<std::uint64_t> next_frontier;
        while (target == kNoState && !frontier.empty()) {
            ++layer;
            if (layer >= kUnreached16)
                throw FptMemoryError("instance too deep for Fpt path reconstruction");
            next_frontier.clear();
            for (std::uint64_t state : frontier) {
                std::uint64_t rank = state / (n_ + 1);
                int next = static_cast<int>(state % (n_ + 1));
                std::vector<int> perm = lehmer_unrank(rank, k_);
                for (std::uint16_t mi = 0; mi < moves_.size(); ++mi) {
                    std::vector<int> moved = apply_move(perm, moves_[mi]);
                    for (int i = 0; i < k_; ++i) pos[moved[i]] = i;
                    int moved_next = greedy_advance(pos, seq_, next);
                    std::uint64_t moved_state = lehmer_rank(moved) * (n_ + 1) + moved_next;
                    if (seen(moved_state)) continue;
                    mark(moved_state, layer);
                    if (options_.reconstruct_path) {
                        pred_move_[moved_state] = mi;
                        pred_rank_[moved_state] = static_cast<std::uint32_t>(rank);
                    }
                    if (moved_next == n_) {
                        target = moved_state;
                        break;
                    }
                    next_frontier.push_back(moved_state);
                }
                if (target != kNoState) break;
            }
            std::swap(frontier, next_frontier);
        }
        if (target == kNoState)
            throw std::logic_error("solve_fpt: state space exhausted without serving all "
                                   "meetings");
        return reconstruct(target, layer);
    }

private:
    static constexpr std::uint16_t kUnreached16 = 0xffff;
    static constexpr std::uint64_t kNoState = ~std::uint64_t(0);

    bool seen(std::uint64_t state) const {
        return options_.reconstruct_path ? dist16_[state] != kUnreached16 : visited_[state] != 0;
    }
    void mark(std::uint64_t state, int layer) {
        if (options_.reconstruct_path)
            dist16_[state] = static_cast<std::uint16_t>(layer);
        else
            visited_[state] = 1;
    }

    // Walks the stored (move, source-rank) chain back to a source. The
    // predecessor's meeting index is not stored; it is recovered by
    // scanning for a state of that rank, one distance level down, whose
    // greedy closure and move edge reproduce the current state. Exact
    // stored distances make any state passing that test a true shortest-
    // path predecessor.
    SequentialSolution reconstruct(std::uint64_t target, int distance) {
        if (!options_.reconstruct_path) {
            SequentialSolution bare;
            bare.moves.resize(distance);  // crossing count only
            return bare;
        }
        std::uint64_t state = target;
        int layer = distance;
        std::vector<BlockMove> moves_reversed;
        std::vector<int> pos(k_ + 1, 0);
        while (dist16_[state] != 0) {
            std::uint16_t mi = pred_move_[state];
            std::uint64_t rank = pred_rank_[state];
            int next = static_cast<int>(state % (n_ + 1));
            std::vector<int> perm = lehmer_unrank(state / (n_ + 1), k_);
            for (int i = 0; i < k_; ++i) pos[perm[i]] = i;
            --layer;
            std::uint64_t pred_state = kNoState;
            for (int prev_next = next; prev_next >= 0; --prev_next) {
                std::uint64_t candidate = rank * (n_ + 1) + prev_next;
                if (dist16_[candidate] != layer) continue;
                if (greedy_advance(pos, seq_, prev_next) != next) continue;
                std::vector<int> pred_perm = lehmer_unrank(rank, k_);
                if (apply_move(pred_perm, moves_[mi]) != perm) continue;
                pred_state = candidate;
                break;
            }
            if (pred_state == kNoState)
                throw std::logic_error("solve_fpt: predecessor chain broken");
            moves_reversed.push_back(moves_[mi]);
            state = pred_state;
        }

        SequentialSolution schedule;
        schedule.start_permutation = lehmer_unrank(state / (n_ + 1), k_);
        schedule.moves.assign(moves_reversed.rbegin(), moves_reversed.rend());

        std::vector<int> perm = schedule.start_permutation;
        for (int i = 0; i < k_; ++i) pos[perm[i]] = i;
        int next = 0;
        int served_at = 1;
        auto consume = [&]() {
            int reached = greedy_advance(pos, seq_, next);
            for (; next < reached; ++next) schedule.serve_permutation.push_back(served_at);
        };
        consume();
        for (const BlockMove& move : schedule.moves) {
            apply_move_in_place(perm, move);
            for (int i = 0; i < k_; ++i) pos[perm[i]] = i;
            ++served_at;
            consume();
        }
        if (next != n_) throw std::logic_error("solve_fpt: replay did not serve all meetings");
        return schedule;
    }

    const SequentialInstance& seq_;
    FptOptions options_;
    int k_;
    int n_;
    std::vector<BlockMove> moves_;
    std::uint64_t perm_count_ = 0;
    std::vector<std::uint16_t> dist16_;
    std::vector<std::uint8_t> visited_;
    std::vector<std::uint16_t> pred_move_;
    std::vector<std::uint32_t> pred_rank_;
};

}  // namespace detail

// Multi-source BFS in the exponentially-large state graph, fixed-parameter
// tractable in the number of characters. Refuses instances whose state
// arrays exceed the memory budget rather than thrashing.
inline SequentialSolution solve_fpt(const SequentialInstance& seq, const FptOptions& options = {}) {
    detail::FptSearch search(seq, options);
    return search.run();
}

}  // namespace storyline
