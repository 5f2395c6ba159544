#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "storyline/meeting_groups.hpp"
#include "storyline/solution.hpp"

namespace storyline {

// Input shape for the ItD/Fpt solvers: a totally ordered list of meeting
// character sets, all characters alive throughout.
struct SequentialInstance {
    int num_characters = 0;
    std::vector<std::vector<int>> meetings;  // each sorted, size >= 2
};

enum class SequentialError {
    concurrent_meetings,
    births_or_deaths,
};

struct NotSequential : std::runtime_error {
    NotSequential(SequentialError reason, const std::string& message)
        : std::runtime_error(message), reason(reason) {}
    SequentialError reason;
};

// Reduces a storyline instance to the sequential special case. Fails if
// any two meetings overlap in time or any character is not alive over the
// whole event horizon. Meetings are ordered by start time; singleton
// meetings are dropped (they constrain nothing).
inline SequentialInstance to_sequential(const StorylineInstance& instance) {
    EventTimeline timeline = build_timeline(instance);
    if (!timeline.events.empty()) {
        const Time& lo = timeline.events.front();
        const Time& hi = timeline.events.back();
        for (int c = 1; c <= instance.num_characters; ++c) {
            const auto& spans = instance.lifespans[c - 1];
            bool whole = spans.size() == 1 && spans[0].birth == lo && spans[0].death == hi;
            if (!whole)
                throw NotSequential(SequentialError::births_or_deaths,
                                    "births or deaths present (character " + std::to_string(c) +
                                        " is not alive over the whole instance)");
        }
    }

    std::vector<std::size_t> order(instance.meetings.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return instance.meetings[x].start < instance.meetings[y].start;
    });
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const Meeting& cur = instance.meetings[order[i]];
        const Meeting& nxt = instance.meetings[order[i + 1]];
        if (nxt.start < cur.end)
            throw NotSequential(SequentialError::concurrent_meetings,
                                "concurrent meetings present (meetings " +
                                    std::to_string(order[i] + 1) + " and " +
                                    std::to_string(order[i + 1] + 1) + ")");
    }

    SequentialInstance sequential;
    sequential.num_characters = instance.num_characters;
    for (std::size_t i : order)
        if (instance.meetings[i].participants.size() >= 2)
            sequential.meetings.push_back(instance.meetings[i].participants);
    return sequential;
}

// Canonical storyline embedding of a sequential instance: meeting i at
// [i, i+1), everyone alive over [0, n) (or [0, 1) when there are no
// meetings). Used by the generators and by tests that start from the
// sequential shape.
inline StorylineInstance to_storyline(const SequentialInstance& sequential) {
    StorylineInstance instance;
    instance.num_characters = sequential.num_characters;
    const int n = static_cast<int>(sequential.meetings.size());
    const Time horizon(n > 0 ? n : 1);
    instance.lifespans.assign(sequential.num_characters, {Lifespan{Time(0), horizon}});
    for (int i = 0; i < n; ++i)
        instance.meetings.push_back({Time(i), Time(i + 1), sequential.meetings[i]});
    instance.normalize();
    return instance;
}

// A sequential schedule: the first drawn permutation, the block moves in
// order, and for each meeting the 1-based index of the permutation that
// serves it (nondecreasing; permutation p is start after p-1 moves).
struct SequentialSolution {
    std::vector<int> start_permutation;
    std::vector<BlockMove> moves;
    std::vector<int> serve_permutation;  // one entry per sequential meeting

    int crossings() const { return static_cast<int>(moves.size()); }
};

// Expands a sequential schedule into a full Solution for the instance the
// sequential reduction was taken from: meeting groups holding a real
// meeting get that meeting's serve permutation, filler groups ride along
// with the latest assignment so far.
inline Solution embed_sequential(const MeetingGroupSequence& groups,
                                 const SequentialSolution& schedule) {
    Solution solution;
    std::vector<int> perm = schedule.start_permutation;
    solution.permutations.push_back(perm);
    for (const BlockMove& move : schedule.moves) {
        apply_move_in_place(perm, move);
        solution.permutations.push_back(perm);
    }

    std::size_t next_meeting = 0;
    int current = 1;
    for (const MeetingGroup& group : groups.groups) {
        // Group merging can fold several identical consecutive meetings
        // into one set; each still has a schedule entry to consume.
        std::size_t covered = 0;
        for (std::size_t i = 0; i < group.member_sets.size(); ++i)
            if (group.member_sets[i].size() >= 2) covered += group.meeting_ids[i].size();
        for (std::size_t i = 0; i < covered; ++i) {
            if (next_meeting >= schedule.serve_permutation.size())
                throw std::logic_error("embed_sequential: schedule shorter than group list");
            current = std::max(current, schedule.serve_permutation[next_meeting]);
            ++next_meeting;
        }
        solution.assignment.push_back(current);
    }
    if (next_meeting != schedule.serve_permutation.size())
        throw std::logic_error("embed_sequential: schedule longer than group list");
    return solution;
}

}  // namespace storyline
