#pragma once

#include <cstdint>
#include <stdexcept>

#include "storyline/meeting_groups.hpp"
#include "storyline/sequential.hpp"
#include "storyline/solution.hpp"

namespace storyline {

// SplitMix64: the fixed generator behind all random instances, chosen so
// that a seed reproduces the same instance on any platform or language.
// Substreams are derived by hashing (seed, lane, index), one substream per
// meeting (lane 0) and per chain move (lane 1), so inserting a draw in one
// meeting never shifts another meeting's randomness.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static SplitMix64 substream(std::uint64_t seed, std::uint64_t lane, std::uint64_t index) {
        return SplitMix64(mix(seed + kGamma * (lane + 1)) ^ mix(index + 1));
    }

    std::uint64_t next() {
        state_ += kGamma;
        return mix(state_);
    }

    // 53-bit mantissa double in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by rejection, bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
        while (true) {
            std::uint64_t draw = next();
            if (draw >= threshold) return draw % bound;
        }
    }

    bool next_bernoulli(double p) { return next_unit() < p; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

struct UniformModelConfig {
    int num_characters = 0;   // kappa >= 2
    int num_meetings = 0;     // n >= 1
    double membership_probability = 0.5;
    std::uint64_t seed = 0;
};

struct SmallOptModelConfig {
    int num_characters = 0;
    int num_meetings = 0;
    double membership_probability = 0.5;
    int crossing_budget = 0;  // beta >= 0
    std::uint64_t seed = 0;
};

namespace detail {

inline void check_generator_config(int num_characters, int num_meetings) {
    if (num_characters < 2)
        throw std::invalid_argument("generator needs at least 2 characters, or no meeting of "
                                    "size >= 2 exists");
    if (num_meetings < 1) throw std::invalid_argument("generator needs at least 1 meeting");
}

// Membership vector of size >= 2: each character joins independently with
// probability p, whole draws rejected until large enough.
inline std::vector<int> draw_meeting(SplitMix64& rng, int num_characters, double p) {
    while (true) {
        std::vector<int> members;
        for (int c = 1; c <= num_characters; ++c)
            if (rng.next_bernoulli(p)) members.push_back(c);
        if (members.size() >= 2) return members;
    }
}

inline BlockMove draw_block_move(SplitMix64& rng, int num_characters) {
    std::uint64_t index = rng.next_below(count_block_moves(num_characters));
    for (int a = 1; a <= num_characters; ++a)
        for (int b = a; b < num_characters; ++b)
            for (int c = b + 1; c <= num_characters; ++c)
                if (index-- == 0) return {a, b, c};
    throw std::logic_error("draw_block_move: index out of range");
}

}  // namespace detail

// Uniform model: n meetings drawn independently, meeting j at time slot
// [j, j+1), everyone alive over the whole horizon.
inline StorylineInstance gen_uniform(const UniformModelConfig& config) {
    detail::check_generator_config(config.num_characters, config.num_meetings);
    SequentialInstance sequential;
    sequential.num_characters = config.num_characters;
    for (int j = 0; j < config.num_meetings; ++j) {
        SplitMix64 rng = SplitMix64::substream(config.seed, 0, j);
        sequential.meetings.push_back(
            detail::draw_meeting(rng, config.num_characters, config.membership_probability));
    }
    return to_storyline(sequential);
}

inline SequentialInstance gen_uniform_sequential(const UniformModelConfig& config) {
    return to_sequential(gen_uniform(config));
}

struct SmallOptOutput {
    StorylineInstance instance;
    Solution witness;  // the generating chain, a solution with <= beta crossings
};

// Small-opt model: a chain of beta random block moves from the identity
// gives beta+1 permutations; each meeting picks a chain permutation and a
// contiguous window of binomial size within it. Meetings are sorted by
// chain position (stable in draw order), so the chain itself solves the
// instance with at most beta crossings.
inline SmallOptOutput gen_small_opt(const SmallOptModelConfig& config) {
    detail::check_generator_config(config.num_characters, config.num_meetings);
    if (config.crossing_budget < 0)
        throw std::invalid_argument("crossing budget must be nonnegative");
    const int k = config.num_characters;

    std::vector<std::vector<int>> chain;
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i + 1;
    chain.push_back(perm);
    for (int t = 0; t < config.crossing_budget; ++t) {
        SplitMix64 rng = SplitMix64::substream(config.seed, 1, t);
        apply_move_in_place(perm, detail::draw_block_move(rng, k));
        chain.push_back(perm);
    }

    struct Draw {
        int chain_index;
        std::vector<int> members;
    };
    std::vector<Draw> draws;
    for (int j = 0; j < config.num_meetings; ++j) {
        SplitMix64 rng = SplitMix64::substream(config.seed, 0, j);
        int chain_index = static_cast<int>(rng.next_below(chain.size()));
        // Window size: Binomial(k, p) conditioned >= 2 by rejection, the
        // same size law as the uniform model.
        int size = 0;
        do {
            size = 0;
            for (int c = 0; c < k; ++c)
                if (rng.next_bernoulli(config.membership_probability)) ++size;
        } while (size < 2);
        int offset = static_cast<int>(rng.next_below(k - size + 1));
        std::vector<int> members(chain[chain_index].begin() + offset,
                                 chain[chain_index].begin() + offset + size);
        draws.push_back({chain_index, std::move(members)});
    }
    std::stable_sort(draws.begin(), draws.end(),
                     [](const Draw& a, const Draw& b) { return a.chain_index < b.chain_index; });

    SequentialInstance sequential;
    sequential.num_characters = k;
    for (const Draw& draw : draws) {
        std::vector<int> members = draw.members;
        std::sort(members.begin(), members.end());
        sequential.meetings.push_back(std::move(members));
    }

    SmallOptOutput output;
    output.instance = to_storyline(sequential);

    // Witness assignment: each group sits at the chain position of the
    // last meeting merged into it (nondecreasing since draws are sorted);
    // the chain is then trimmed so the first group lands on permutation 1.
    MeetingGroupSequence groups = build_meeting_groups(output.instance);
    std::vector<int> position;
    std::size_t meeting_index = 0;
    for (const MeetingGroup& group : groups.groups) {
        std::size_t covered = 0;
        for (std::size_t s = 0; s < group.member_sets.size(); ++s)
            if (group.member_sets[s].size() >= 2) covered += group.meeting_ids[s].size();
        int current = position.empty() ? 0 : position.back();
        for (std::size_t i = 0; i < covered; ++i, ++meeting_index)
            current = std::max(current, draws[meeting_index].chain_index);
        position.push_back(current);
    }
    if (meeting_index != draws.size())
        throw std::logic_error("gen_small_opt: witness does not cover all meetings");
    const int first_used = position.front();
    const int last_used = position.back();
    for (int t = first_used; t <= last_used; ++t)
        output.witness.permutations.push_back(chain[t]);
    for (int p : position) output.witness.assignment.push_back(p - first_used + 1);
    return output;
}

}  // namespace storyline
