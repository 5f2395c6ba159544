#pragma once

#include <map>

#include "storyline/cnf.hpp"
#include "storyline/sat_backend.hpp"
#include "storyline/timeline.hpp"

namespace storyline {

struct ProbeRecord {
    int lambda;
    SolverVerdict::Status status;
    std::chrono::duration<double> wall_time{0};
};

struct SearchTrace {
    std::vector<ProbeRecord> probes;        // in probe order
    int lambda_opt = 0;
    std::chrono::duration<double> solver_time{0};  // summed backend time
    std::chrono::duration<double> total_time{0};   // including encoding and decoding
};

struct SearchOptions {
    SolverConfig solver;
    bool linear = false;  // plain linear schedule, for testing the search
};

struct SearchResult {
    int lambda_opt = 0;
    int block_crossings = 0;  // lambda_opt - |E'| + 1
    Solution solution;
    SearchTrace trace;
};

// Finds the minimum lambda for which the instance is satisfiable, per the
// doubling schedule: probe offsets b = 0, 1, 2, 4, 8, ... above the lower
// bound until SAT, then binary search between the last UNSAT and first SAT
// offset. The lower bound counts the forced alive-set changes between
// consecutive meeting groups; with no mid-story gap in aliveness this
// equals max(1, |E'| - 1), the bound implied by bc = lambda - |E'| + 1.
inline SearchResult find_min_lambda(const StorylineInstance& instance,
                                    const MeetingGroupSequence& groups,
                                    const SearchOptions& options = {}) {
    auto started = std::chrono::steady_clock::now();
    if (groups.size() == 0) throw std::invalid_argument("find_min_lambda: no meeting groups");

    int forced_changes = 0;
    for (std::size_t l = 0; l + 1 < groups.size(); ++l)
        if (groups.groups[l].alive != groups.groups[l + 1].alive) ++forced_changes;
    const int lambda_lo = 1 + forced_changes;

    EventTimeline timeline = build_timeline(instance);
    const int structural = static_cast<int>(timeline.structural_events.size());

    SearchTrace trace;
    std::map<int, SolverVerdict> verdicts;
    auto probe = [&](int lambda) -> const SolverVerdict& {
        auto [it, fresh] = verdicts.try_emplace(lambda);
        if (fresh) {
            auto [formula, catalog] = encode(instance, groups, lambda);
            (void)catalog;
            it->second = solve(formula, options.solver);
            trace.probes.push_back({lambda, it->second.status, it->second.wall_time});
            trace.solver_time += it->second.wall_time;
        }
        return it->second;
    };

    int sat_offset = -1;
    if (options.linear) {
        for (int b = 0;; ++b)
            if (probe(lambda_lo + b).sat()) {
                sat_offset = b;
                break;
            }
    } else {
        int last_unsat = -1;
        for (int b = 0;; b = b == 0 ? 1 : 2 * b) {
            if (probe(lambda_lo + b).sat()) {
                sat_offset = b;
                break;
            }
            last_unsat = b;
        }
        // Narrow (last_unsat, sat_offset) to the minimal satisfiable offset.
        while (sat_offset - last_unsat > 1) {
            int mid = last_unsat + (sat_offset - last_unsat) / 2;
            if (probe(lambda_lo + mid).sat())
                sat_offset = mid;
            else
                last_unsat = mid;
        }
    }

    SearchResult result;
    result.lambda_opt = lambda_lo + sat_offset;
    result.block_crossings = result.lambda_opt - structural + 1;
    const SolverVerdict& final_verdict = probe(result.lambda_opt);
    VariableCatalog catalog(instance.num_characters, static_cast<int>(groups.size()),
                            result.lambda_opt);
    result.solution = decode(final_verdict.model, catalog, groups);
    trace.lambda_opt = result.lambda_opt;
    trace.total_time = std::chrono::steady_clock::now() - started;
    result.trace = std::move(trace);
    return result;
}

inline SearchResult find_min_lambda(const StorylineInstance& instance,
                                    const SearchOptions& options = {}) {
    return find_min_lambda(instance, build_meeting_groups(instance), options);
}

}  // namespace storyline
