#pragma once

#include <algorithm>
#include <vector>

#include "storyline/instance.hpp"

namespace storyline {

// Sorted distinct event times. `events` holds every meeting start/end and
// lifespan endpoint; `structural_events` the lifespan endpoints only, i.e.
// the times at which some character is born or dies.
struct EventTimeline {
    std::vector<Time> events;
    std::vector<Time> structural_events;
};

inline EventTimeline build_timeline(const StorylineInstance& instance) {
    EventTimeline timeline;
    for (const auto& spans : instance.lifespans) {
        for (const Lifespan& span : spans) {
            timeline.structural_events.push_back(span.birth);
            timeline.structural_events.push_back(span.death);
        }
    }
    timeline.events = timeline.structural_events;
    for (const Meeting& m : instance.meetings) {
        timeline.events.push_back(m.start);
        timeline.events.push_back(m.end);
    }
    auto dedup = [](std::vector<Time>& times) {
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
    };
    dedup(timeline.events);
    dedup(timeline.structural_events);
    return timeline;
}

}  // namespace storyline
