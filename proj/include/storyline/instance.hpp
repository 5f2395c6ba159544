#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "storyline/rational.hpp"

namespace storyline {

// Half-open interval [start, end) of story time in which a set of
// characters meet. Character ids are 1-based.
struct Meeting {
    Time start;
    Time end;
    std::vector<int> participants;  // sorted, distinct

    bool active_at(const Time& t) const { return start <= t && t < end; }
    bool involves(int character) const {
        return std::binary_search(participants.begin(), participants.end(), character);
    }
};

// Half-open [birth, death) interval in which a character exists.
struct Lifespan {
    Time birth;
    Time death;
    bool contains(const Time& t) const { return birth <= t && t < death; }
    bool covers(const Time& s, const Time& e) const { return birth <= s && e <= death; }
};

// A storyline problem instance: characters 1..num_characters, their
// lifespans, and timed meetings. Lifespan lists are kept sorted with
// touching intervals merged, so interval endpoints are exactly the times
// at which the character's aliveness flips.
struct StorylineInstance {
    int num_characters = 0;
    std::vector<Meeting> meetings;
    std::vector<std::vector<Lifespan>> lifespans;  // index: character - 1

    bool alive_at(int character, const Time& t) const {
        for (const Lifespan& span : lifespans[character - 1])
            if (span.contains(t)) return true;
        return false;
    }

    // Sorts meetings' participants, sorts and merges each character's
    // lifespans. Called by parsers and generators after construction.
    void normalize() {
        for (Meeting& m : meetings) {
            std::sort(m.participants.begin(), m.participants.end());
            m.participants.erase(std::unique(m.participants.begin(), m.participants.end()),
                                 m.participants.end());
        }
        lifespans.resize(num_characters);
        for (std::vector<Lifespan>& spans : lifespans) {
            std::sort(spans.begin(), spans.end(),
                      [](const Lifespan& a, const Lifespan& b) { return a.birth < b.birth; });
            // Merge touching intervals: a death immediately followed by a
            // rebirth is no change in aliveness and must not count as a
            // structural event. Overlapping intervals are left for validate.
            std::vector<Lifespan> merged;
            for (const Lifespan& span : spans) {
                if (!merged.empty() && span.birth == merged.back().death) {
                    merged.back().death = span.death;
                } else {
                    merged.push_back(span);
                }
            }
            spans = std::move(merged);
        }
    }

    friend bool operator==(const StorylineInstance& a, const StorylineInstance& b) {
        if (a.num_characters != b.num_characters) return false;
        auto meeting_eq = [](const Meeting& x, const Meeting& y) {
            return x.start == y.start && x.end == y.end && x.participants == y.participants;
        };
        if (a.meetings.size() != b.meetings.size()) return false;
        for (std::size_t i = 0; i < a.meetings.size(); ++i)
            if (!meeting_eq(a.meetings[i], b.meetings[i])) return false;
        if (a.lifespans.size() != b.lifespans.size()) return false;
        for (std::size_t i = 0; i < a.lifespans.size(); ++i) {
            if (a.lifespans[i].size() != b.lifespans[i].size()) return false;
            for (std::size_t j = 0; j < a.lifespans[i].size(); ++j)
                if (a.lifespans[i][j].birth != b.lifespans[i][j].birth ||
                    a.lifespans[i][j].death != b.lifespans[i][j].death)
                    return false;
        }
        return true;
    }
};

// Checks all instance invariants; returns one message per violation,
// empty if the instance is well-formed. Meetings are reported 1-based.
inline std::vector<std::string> validate(const StorylineInstance& instance) {
    std::vector<std::string> violations;
    const int k = instance.num_characters;

    if (k < 0) violations.push_back("negative character count");
    if (instance.lifespans.size() != static_cast<std::size_t>(std::max(k, 0))) {
        violations.push_back("lifespan table does not match character count");
        return violations;
    }

    for (std::size_t j = 0; j < instance.meetings.size(); ++j) {
        const Meeting& m = instance.meetings[j];
        std::string tag = "meeting " + std::to_string(j + 1);
        if (!(m.start < m.end)) violations.push_back(tag + ": start must precede end");
        if (m.participants.empty()) violations.push_back(tag + ": no participants");
        for (int c : m.participants)
            if (c < 1 || c > k)
                violations.push_back(tag + ": character " + std::to_string(c) + " out of range");
    }

    // Meetings active at a common time must have disjoint participant sets.
    for (std::size_t j = 0; j < instance.meetings.size(); ++j) {
        for (std::size_t l = j + 1; l < instance.meetings.size(); ++l) {
            const Meeting& mj = instance.meetings[j];
            const Meeting& ml = instance.meetings[l];
            if (mj.end <= ml.start || ml.end <= mj.start) continue;
            std::vector<int> shared;
            std::set_intersection(mj.participants.begin(), mj.participants.end(),
                                  ml.participants.begin(), ml.participants.end(),
                                  std::back_inserter(shared));
            for (int c : shared)
                violations.push_back("character " + std::to_string(c) +
                                     " in concurrent meetings " + std::to_string(j + 1) +
                                     " and " + std::to_string(l + 1));
        }
    }

    // Every meeting lies inside one lifespan interval of each participant.
    for (std::size_t j = 0; j < instance.meetings.size(); ++j) {
        const Meeting& m = instance.meetings[j];
        for (int c : m.participants) {
            if (c < 1 || c > k) continue;
            bool covered = false;
            for (const Lifespan& span : instance.lifespans[c - 1])
                if (span.covers(m.start, m.end)) { covered = true; break; }
            if (!covered)
                violations.push_back("meeting " + std::to_string(j + 1) +
                                     " outside lifespan of character " + std::to_string(c));
        }
    }

    for (int c = 1; c <= k; ++c) {
        const std::vector<Lifespan>& spans = instance.lifespans[c - 1];
        for (std::size_t i = 0; i < spans.size(); ++i) {
            if (!(spans[i].birth < spans[i].death))
                violations.push_back("character " + std::to_string(c) +
                                     ": birth must precede death");
            if (i > 0 && spans[i].birth < spans[i - 1].death)
                violations.push_back("character " + std::to_string(c) +
                                     ": overlapping lifespans");
        }
    }

    return violations;
}

}  // namespace storyline
