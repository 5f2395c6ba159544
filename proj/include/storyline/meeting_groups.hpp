#pragma once

#include <algorithm>
#include <vector>

#include "storyline/instance.hpp"
#include "storyline/timeline.hpp"

namespace storyline {

// The set of character sets that must be contiguous at a common point in
// time: one set per active meeting plus a singleton per alive character
// that is in no meeting. `member_sets` are pairwise disjoint, each sorted,
// and ordered by smallest element; their union is the alive set.
struct MeetingGroup {
    std::vector<std::vector<int>> member_sets;
    std::vector<std::vector<int>> meeting_ids;  // per set: source meetings (empty for fillers)
    std::vector<Time> covered_event_times;      // consecutive events this group spans
    std::vector<int> alive;                     // sorted union of member_sets

    bool contains(int character) const {
        return std::binary_search(alive.begin(), alive.end(), character);
    }
};

struct MeetingGroupSequence {
    std::vector<MeetingGroup> groups;
    std::vector<std::vector<int>> membership;  // per character: 0-based group indices

    std::size_t size() const { return groups.size(); }
};

// Walks the event timeline and emits one group per event at which at least
// one character is alive until the following event; consecutive groups with
// identical set composition are merged. Events where nobody is alive (the
// final event, and any global gap) produce no group.
inline MeetingGroupSequence build_meeting_groups(const StorylineInstance& instance,
                                                 const EventTimeline& timeline) {
    MeetingGroupSequence sequence;
    const int k = instance.num_characters;

    for (const Time& t : timeline.events) {
        MeetingGroup group;
        std::vector<char> in_meeting(k + 1, 0);
        for (std::size_t j = 0; j < instance.meetings.size(); ++j) {
            const Meeting& m = instance.meetings[j];
            if (!m.active_at(t)) continue;
            group.member_sets.push_back(m.participants);
            group.meeting_ids.push_back({static_cast<int>(j)});
            for (int c : m.participants) in_meeting[c] = 1;
        }
        for (int c = 1; c <= k; ++c) {
            if (instance.alive_at(c, t)) {
                group.alive.push_back(c);
                if (!in_meeting[c]) {
                    group.member_sets.push_back({c});
                    group.meeting_ids.push_back({});
                }
            }
        }
        if (group.alive.empty()) continue;

        // Canonical order: disjoint sets sort uniquely by smallest element.
        std::vector<std::size_t> order(group.member_sets.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return group.member_sets[a][0] < group.member_sets[b][0];
        });
        MeetingGroup canonical;
        canonical.alive = group.alive;
        canonical.covered_event_times.push_back(t);
        for (std::size_t i : order) {
            canonical.member_sets.push_back(std::move(group.member_sets[i]));
            canonical.meeting_ids.push_back(std::move(group.meeting_ids[i]));
        }

        if (!sequence.groups.empty() &&
            sequence.groups.back().member_sets == canonical.member_sets) {
            MeetingGroup& last = sequence.groups.back();
            last.covered_event_times.push_back(t);
            for (std::size_t i = 0; i < canonical.meeting_ids.size(); ++i)
                for (int id : canonical.meeting_ids[i])
                    if (std::find(last.meeting_ids[i].begin(), last.meeting_ids[i].end(), id) ==
                        last.meeting_ids[i].end())
                        last.meeting_ids[i].push_back(id);
        } else {
            sequence.groups.push_back(std::move(canonical));
        }
    }

    sequence.membership.resize(k);
    for (std::size_t g = 0; g < sequence.groups.size(); ++g)
        for (int c : sequence.groups[g].alive)
            sequence.membership[c - 1].push_back(static_cast<int>(g));
    return sequence;
}

inline MeetingGroupSequence build_meeting_groups(const StorylineInstance& instance) {
    return build_meeting_groups(instance, build_timeline(instance));
}

}  // namespace storyline
