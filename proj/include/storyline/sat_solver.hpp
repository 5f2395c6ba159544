#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "storyline/cnf.hpp"

namespace storyline {

// Built-in complete SAT solver: CDCL with two-watched-literal propagation,
// first-UIP clause learning, activity-based branching with phase saving,
// Luby restarts, and occasional learnt-clause reduction. No preprocessing.
// Intended for the formulas this project generates at test scale; large
// instances should go to an external backend.
class CdclSolver {
public:
    explicit CdclSolver(int num_vars)
        : num_vars_(num_vars),
          assign_(num_vars, -1),
          level_(num_vars, 0),
          reason_(num_vars, -1),
          seen_(num_vars, 0),
          activity_(num_vars, 0.0),
          polarity_(num_vars, 0),
          watches_(2 * num_vars) {}

    // Literals in DIMACS convention. Tautologies are dropped, duplicate
    // literals collapsed; an empty clause makes the instance unsatisfiable.
    void add_clause(const std::vector<int>& dimacs_lits) {
        if (failed_) return;
        std::vector<int> lits;
        lits.reserve(dimacs_lits.size());
        for (int dl : dimacs_lits) lits.push_back(to_internal(dl));
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t i = 0; i + 1 < lits.size(); ++i)
            if ((lits[i] ^ 1) == lits[i + 1]) return;  // tautology
        if (lits.empty()) {
            failed_ = true;
            return;
        }
        if (lits.size() == 1) {
            pending_units_.push_back(lits[0]);
            return;
        }
        attach(add(std::move(lits), false));
    }

    bool solve() {
        if (failed_) return false;
        for (int v = 0; v < num_vars_; ++v) heap_.push({activity_[v], v});
        for (int unit : pending_units_) {
            if (lit_false(unit)) return failed_ = true, false;
            if (!lit_true(unit)) enqueue(unit, -1);
        }
        pending_units_.clear();
        if (propagate() >= 0) return failed_ = true, false;

        std::int64_t conflicts_until_restart = luby_restart_budget();
        while (true) {
            int confl = propagate();
            if (confl >= 0) {
                ++conflicts_;
                if (decision_level() == 0) return failed_ = true, false;
                std::vector<int> learnt;
                int back_level = 0;
                analyze(confl, learnt, back_level);
                backtrack(back_level);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    int ci = add(std::move(learnt), true);
                    attach(ci);
                    enqueue(clauses_[ci].lits[0], ci);
                }
                decay_activities();
                if (--conflicts_until_restart <= 0) {
                    backtrack(0);
                    conflicts_until_restart = luby_restart_budget();
                }
                if (static_cast<std::int64_t>(num_learnts_) > 4000 + 300 * reductions_ &&
                    decision_level() == 0)
                    reduce_learnts();
            } else {
                if (static_cast<int>(trail_.size()) == num_vars_) return true;  // model found
                int var = pick_branch_var();
                trail_lim_.push_back(trail_.size());
                enqueue(2 * var + (polarity_[var] ? 0 : 1), -1);
            }
        }
    }

    // Signed literal per variable; valid after solve() returned true.
    std::vector<int> model() const {
        std::vector<int> out;
        out.reserve(num_vars_);
        for (int v = 0; v < num_vars_; ++v) out.push_back(assign_[v] == 1 ? v + 1 : -(v + 1));
        return out;
    }

    std::uint64_t conflicts() const { return conflicts_; }

private:
    struct Clause {
        std::vector<int> lits;  // internal literals: 2*var (+1 if negated)
        bool learnt = false;
        double activity = 0.0;
    };

    static int var_of(int lit) { return lit >> 1; }
    int to_internal(int dimacs) const {
        int v = dimacs < 0 ? -dimacs : dimacs;
        return 2 * (v - 1) + (dimacs < 0 ? 1 : 0);
    }
    bool lit_true(int lit) const { return assign_[var_of(lit)] == ((lit & 1) ^ 1); }
    bool lit_false(int lit) const { return assign_[var_of(lit)] == (lit & 1); }
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    int add(std::vector<int> lits, bool learnt) {
        clauses_.push_back({std::move(lits), learnt, var_inc_});
        if (learnt) ++num_learnts_;
        return static_cast<int>(clauses_.size()) - 1;
    }

    void attach(int ci) {
        watches_[clauses_[ci].lits[0] ^ 1].push_back(ci);
        watches_[clauses_[ci].lits[1] ^ 1].push_back(ci);
    }

    void enqueue(int lit, int reason) {
        int v = var_of(lit);
        assign_[v] = (lit & 1) ^ 1;
        level_[v] = decision_level();
        reason_[v] = reason;
        trail_.push_back(lit);
    }

    // Returns the index of a conflicting clause, or -1.
    int propagate() {
        while (qhead_ < trail_.size()) {
            int p = trail_[qhead_++];
            std::vector<int>& ws = watches_[p];  // clauses watching ~p
            std::size_t keep = 0;
            for (std::size_t read = 0; read < ws.size(); ++read) {
                int ci = ws[read];
                Clause& c = clauses_[ci];
                int false_lit = p ^ 1;
                if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
                if (lit_true(c.lits[0])) {
                    ws[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t i = 2; i < c.lits.size(); ++i) {
                    if (!lit_false(c.lits[i])) {
                        std::swap(c.lits[1], c.lits[i]);
                        watches_[c.lits[1] ^ 1].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[keep++] = ci;
                if (lit_false(c.lits[0])) {
                    for (std::size_t rest = read + 1; rest < ws.size(); ++rest)
                        ws[keep++] = ws[rest];
                    ws.resize(keep);
                    qhead_ = trail_.size();
                    return ci;
                }
                enqueue(c.lits[0], ci);
            }
            ws.resize(keep);
        }
        return -1;
    }

    void analyze(int confl, std::vector<int>& learnt, int& back_level) {
        learnt.push_back(0);  // slot for the asserting literal
        int counter = 0;
        int p = -1;
        std::size_t index = trail_.size();
        while (true) {
            const Clause& c = clauses_[confl];
            for (int lit : c.lits) {
                if (lit == p) continue;
                int v = var_of(lit);
                if (!seen_[v] && level_[v] > 0) {
                    seen_[v] = 1;
                    bump_activity(v);
                    if (level_[v] == decision_level())
                        ++counter;
                    else
                        learnt.push_back(lit);
                }
            }
            while (!seen_[var_of(trail_[index - 1])]) --index;
            p = trail_[--index];
            seen_[var_of(p)] = 0;
            if (--counter == 0) break;
            confl = reason_[var_of(p)];
        }
        learnt[0] = p ^ 1;

        // Watch the highest-level remaining literal in slot 1.
        back_level = 0;
        if (learnt.size() > 1) {
            std::size_t best = 1;
            for (std::size_t i = 2; i < learnt.size(); ++i)
                if (level_[var_of(learnt[i])] > level_[var_of(learnt[best])]) best = i;
            std::swap(learnt[1], learnt[best]);
            back_level = level_[var_of(learnt[1])];
        }
        for (std::size_t i = 1; i < learnt.size(); ++i) seen_[var_of(learnt[i])] = 0;
    }

    void backtrack(int target_level) {
        if (decision_level() <= target_level) return;
        std::size_t floor = trail_lim_[target_level];
        for (std::size_t i = trail_.size(); i-- > floor;) {
            int v = var_of(trail_[i]);
            polarity_[v] = assign_[v];
            assign_[v] = -1;
            reason_[v] = -1;
            heap_.push({activity_[v], v});
        }
        trail_.resize(floor);
        trail_lim_.resize(target_level);
        qhead_ = floor;
    }

    int pick_branch_var() {
        while (!heap_.empty()) {
            auto [act, v] = heap_.top();
            heap_.pop();
            if (assign_[v] < 0 && act == activity_[v]) return v;
        }
        for (int v = 0; v < num_vars_; ++v)
            if (assign_[v] < 0) return v;
        return -1;  // unreachable: solve() checks trail size first
    }

    void bump_activity(int v) {
        activity_[v] += var_inc_;
        if (activity_[v] > 1e100) {
            for (double& a : activity_) a *= 1e-100;
            var_inc_ *= 1e-100;
        }
        if (assign_[v] < 0) heap_.push({activity_[v], v});
    }

    void decay_activities() { var_inc_ /= 0.95; }

    std::int64_t luby_restart_budget() {
        // Luby sequence (1, 1, 2, 1, 1, 2, 4, ...) scaled by 256 conflicts.
        std::uint64_t x = restarts_++;
        std::uint64_t size = 1, seq = 0;
        while (size < x + 1) {
            seq += 1;
            size = 2 * size + 1;
        }
        while (size - 1 != x) {
            size = (size - 1) / 2;
            seq -= 1;
            x = x % size;
        }
        return static_cast<std::int64_t>(256) << seq;
    }

    void reduce_learnts() {
        ++reductions_;
        std::vector<int> order;
        for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci)
            if (clauses_[ci].learnt && !is_reason(ci)) order.push_back(ci);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return clauses_[a].activity < clauses_[b].activity; });
        std::vector<char> drop(clauses_.size(), 0);
        for (std::size_t i = 0; i < order.size() / 2; ++i) {
            if (clauses_[order[i]].lits.size() <= 2) continue;
            drop[order[i]] = 1;
        }
        // Rebuild clause storage and watches with surviving clauses.
        std::vector<Clause> kept;
        std::vector<int> remap(clauses_.size(), -1);
        for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) {
            if (drop[ci]) continue;
            remap[ci] = static_cast<int>(kept.size());
            kept.push_back(std::move(clauses_[ci]));
        }
        clauses_ = std::move(kept);
        num_learnts_ = 0;
        for (const Clause& c : clauses_)
            if (c.learnt) ++num_learnts_;
        for (auto& ws : watches_) ws.clear();
        for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) attach(ci);
        for (int& r : reason_)
            if (r >= 0) r = remap[r];
    }

    bool is_reason(int ci) const {
        int v = var_of(clauses_[ci].lits[0]);
        return assign_[v] >= 0 && reason_[v] == ci;
    }

    int num_vars_;
    bool failed_ = false;
    std::vector<Clause> clauses_;
    std::vector<int> pending_units_;
    std::vector<signed char> assign_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<signed char> seen_;
    std::vector<double> activity_;
    std::vector<signed char> polarity_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> trail_;
    std::vector<std::size_t> trail_lim_;
    std::size_t qhead_ = 0;
    std::priority_queue<std::pair<double, int>> heap_;
    double var_inc_ = 1.0;
    std::uint64_t conflicts_ = 0;
    std::uint64_t restarts_ = 0;
    std::int64_t num_learnts_ = 0;
    std::int64_t reductions_ = 0;
};

// Checks a signed-literal assignment against a formula; used to vet models
// from any backend before they are decoded.
inline bool model_satisfies(const std::vector<int>& model, const CnfFormula& formula) {
    std::vector<signed char> value(formula.num_variables + 1, -1);
    for (int lit : model) {
        int v = lit < 0 ? -lit : lit;
        if (v < 1 || v > formula.num_variables) return false;
        value[v] = lit > 0;
    }
    for (const std::vector<int>& clause : formula.clauses) {
        bool satisfied = false;
        for (int lit : clause) {
            int v = lit < 0 ? -lit : lit;
            if (value[v] == (lit > 0 ? 1 : 0)) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied) return false;
    }
    return true;
}

}  // namespace storyline
