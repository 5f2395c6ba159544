#pragma once

#include <stdexcept>

#include "storyline/sequential.hpp"

namespace storyline {

// Serves every meeting at `next` and beyond whose characters already form
// a contiguous block, in order. Serving a contiguous meeting costs nothing
// and delaying never helps, so search states are kept greedy-closed.
// `pos` maps character id to 0-based position.
inline int greedy_advance(const std::vector<int>& pos, const SequentialInstance& seq, int next) {
    const int n = static_cast<int>(seq.meetings.size());
    while (next < n) {
        const std::vector<int>& meeting = seq.meetings[next];
        int lo = pos[meeting[0]], hi = lo;
        for (int c : meeting) {
            lo = std::min(lo, pos[c]);
            hi = std::max(hi, pos[c]);
        }
        if (hi - lo + 1 != static_cast<int>(meeting.size())) break;
        ++next;
    }
    return next;
}

struct ItdOptions {
    int depth_limit_max = 30;
    bool restrict_starts = true;  // only starts with meeting 1 contiguous
};

struct ItdBudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// All permutations of 1..k in which `block` is contiguous: permute the
// remaining characters plus one block slot, then permute within the block.
inline std::vector<std::vector<int>> starts_with_block(int k, const std::vector<int>& block) {
    std::vector<int> outer;  // 0 stands for the block slot
    outer.push_back(0);
    for (int c = 1; c <= k; ++c)
        if (std::find(block.begin(), block.end(), c) == block.end()) outer.push_back(c);
    std::sort(outer.begin(), outer.end());
    std::vector<int> inner = block;
    std::sort(inner.begin(), inner.end());

    std::vector<std::vector<int>> starts;
    do {
        std::vector<int> inner_perm = inner;
        do {
            std::vector<int> perm;
            perm.reserve(k);
            for (int token : outer) {
                if (token == 0)
                    perm.insert(perm.end(), inner_perm.begin(), inner_perm.end());
                else
                    perm.push_back(token);
            }
            starts.push_back(std::move(perm));
        } while (std::next_permutation(inner_perm.begin(), inner_perm.end()));
    } while (std::next_permutation(outer.begin(), outer.end()));
    return starts;
}

inline std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i + 1;
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return perms;
}

class ItdSearch {
public:
    ItdSearch(const SequentialInstance& seq) : seq_(seq), moves_(enumerate_block_moves(seq.num_characters)) {}

    // Depth-limited DFS from the current state; branches over all block
    // moves and unbranches on the same arrays.
    bool dfs(int budget, int skip_move) {
        if (next_ == static_cast<int>(seq_.meetings.size())) return true;
        if (budget == 0) return false;
        int before = next_;
        for (int mi = 0; mi < static_cast<int>(moves_.size()); ++mi) {
            if (mi == skip_move) continue;
            apply(moves_[mi]);
            next_ = greedy_advance(pos_, seq_, next_);
            // A move that served nothing followed by its undo revisits the
            // same state two levels deeper; skip the undo branch then.
            int inverse = next_ == before ? inverse_index_[mi] : -1;
            if (dfs(budget - 1, inverse)) {
                chosen_.push_back(moves_[mi]);
                return true;
            }
            next_ = before;
            apply(moves_[mi].inverse());
        }
        return false;
    }

    bool run_from(const std::vector<int>& start, int budget) {
        perm_ = start;
        pos_.assign(seq_.num_characters + 1, 0);
        for (int i = 0; i < static_cast<int>(perm_.size()); ++i) pos_[perm_[i]] = i;
        next_ = greedy_advance(pos_, seq_, 0);
        chosen_.clear();
        if (inverse_index_.empty()) {
            inverse_index_.resize(moves_.size());
            for (std::size_t i = 0; i < moves_.size(); ++i) {
                BlockMove inv = moves_[i].inverse();
                inverse_index_[i] = -1;
                for (std::size_t j = 0; j < moves_.size(); ++j)
                    if (moves_[j] == inv) inverse_index_[i] = static_cast<int>(j);
            }
        }
        return dfs(budget, -1);
    }

    std::vector<BlockMove> moves_in_order() const {
        return std::vector<BlockMove>(chosen_.rbegin(), chosen_.rend());
    }

private:
    void apply(const BlockMove& move) {
        apply_move_in_place(perm_, move);
        for (int p = move.a - 1; p < move.c; ++p) pos_[perm_[p]] = p;
    }

    const SequentialInstance& seq_;
    std::vector<BlockMove> moves_;
    std::vector<int> inverse_index_;
    std::vector<int> perm_;
    std::vector<int> pos_;
    std::vector<BlockMove> chosen_;  // reverse order (success path unwinding)
    int next_ = 0;
};

}  // namespace detail

// Iterative-deepening DFS: for d = 0, 1, 2, ... try every start
// permutation with a budget of d block moves. The first d that serves all
// meetings is optimal. Throws ItdBudgetExhausted past depth_limit_max.
inline SequentialSolution solve_itd(const SequentialInstance& seq, const ItdOptions& options = {}) {
    if (seq.num_characters < 1) throw std::invalid_argument("solve_itd: no characters");

    std::vector<std::vector<int>> starts;
    if (!seq.meetings.empty() && options.restrict_starts)
        starts = detail::starts_with_block(seq.num_characters, seq.meetings[0]);
    else
        starts = detail::all_permutations(seq.num_characters);

    detail::ItdSearch search(seq);
    for (int depth = 0; depth <= options.depth_limit_max; ++depth) {
        for (const std::vector<int>& start : starts) {
            if (!search.run_from(start, depth)) continue;
            SequentialSolution schedule;
            schedule.start_permutation = start;
            schedule.moves = search.moves_in_order();
            // Replay to attribute each meeting to the permutation serving it.
            std::vector<int> pos(seq.num_characters + 1, 0);
            std::vector<int> perm = start;
            for (int i = 0; i < static_cast<int>(perm.size()); ++i) pos[perm[i]] = i;
            int next = 0;
            int served_at = 1;
            auto consume = [&]() {
                int reached = greedy_advance(pos, seq, next);
                for (; next < reached; ++next) schedule.serve_permutation.push_back(served_at);
            };
            consume();
            for (const BlockMove& move : schedule.moves) {
                apply_move_in_place(perm, move);
                for (int p = move.a - 1; p < move.c; ++p) pos[perm[p]] = p;
                ++served_at;
                consume();
            }
            if (next != static_cast<int>(seq.meetings.size()))
                throw std::logic_error("solve_itd: replay did not serve all meetings");
            return schedule;
        }
    }
    throw ItdBudgetExhausted("no schedule within " + std::to_string(options.depth_limit_max) +
                             " block crossings");
}

}  // namespace storyline
