#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "storyline/meeting_groups.hpp"
#include "storyline/solution.hpp"

namespace storyline {

// Bijection between the six variable families and DIMACS variable numbers.
// Layout is fixed (x block, then o, chi, f, g, h, q, each lexicographic in
// its indices) so emitted formulas are byte-reproducible.
//
// Families (all character and permutation indices 1-based):
//   x(i,j,r)   i above j in permutation r          i != j, r in 1..lambda
//   o(i,r)     i omitted from permutation r
//   chi(i,j,r) i and j cross between r and r+1     i != j, r in 1..lambda-1
//   f/g/h(i,r) block-crossing membership of i at the move after r
//   q(l,r)     meeting group l assigned to permutation r
class VariableCatalog {
public:
    VariableCatalog(int num_characters, int num_groups, int lambda)
        : k_(num_characters), mu_(num_groups), lambda_(lambda) {
        const int pairs = k_ * (k_ - 1);
        x_base_ = 0;
        o_base_ = x_base_ + pairs * lambda_;
        chi_base_ = o_base_ + k_ * lambda_;
        f_base_ = chi_base_ + pairs * (lambda_ - 1);
        g_base_ = f_base_ + k_ * lambda_;
        h_base_ = g_base_ + k_ * lambda_;
        q_base_ = h_base_ + k_ * lambda_;
        total_ = q_base_ + mu_ * lambda_;
    }

    int num_characters() const { return k_; }
    int num_groups() const { return mu_; }
    int lambda() const { return lambda_; }
    int total_count() const { return total_; }

    int x(int i, int j, int r) const { return x_base_ + pair_index(i, j) * lambda_ + r; }
    int o(int i, int r) const { return o_base_ + (i - 1) * lambda_ + r; }
    int chi(int i, int j, int r) const {
        assert(r < lambda_);
        return chi_base_ + pair_index(i, j) * (lambda_ - 1) + r;
    }
    int f(int i, int r) const { return f_base_ + (i - 1) * lambda_ + r; }
    int g(int i, int r) const { return g_base_ + (i - 1) * lambda_ + r; }
    int h(int i, int r) const { return h_base_ + (i - 1) * lambda_ + r; }
    int q(int l, int r) const { return q_base_ + (l - 1) * lambda_ + r; }

private:
    int pair_index(int i, int j) const {
        assert(i != j && 1 <= i && i <= k_ && 1 <= j && j <= k_);
        return (i - 1) * (k_ - 1) + (j - 1) - (j > i ? 1 : 0);
    }

    int k_, mu_, lambda_;
    int x_base_, o_base_, chi_base_, f_base_, g_base_, h_base_, q_base_, total_;
};

struct CnfFormula {
    int num_variables = 0;
    std::vector<std::vector<int>> clauses;  // nonzero literals, negative = negated
};

// Clause-family boundaries in emission order, for tests that audit the
// formula family by family.
struct EncodeBreakdown {
    std::vector<std::pair<std::string, std::size_t>> family_start;  // (name, clause index)
};

// Builds the decision formula: "does the instance admit a drawing with
// exactly `lambda` permutations?". Clause families and quantifier ranges
// follow the catalog literally, guard literals included; symmetric index
// ranges are not collapsed, so some families contain semantic duplicates.
inline std::pair<CnfFormula, VariableCatalog> encode(const StorylineInstance& instance,
                                                     const MeetingGroupSequence& groups,
                                                     int lambda,
                                                     EncodeBreakdown* breakdown = nullptr) {
    if (lambda < 1) throw std::invalid_argument("encode: lambda must be positive");
    const int mu = static_cast<int>(groups.size());
    if (mu == 0) throw std::invalid_argument("encode: instance has no meeting groups");
    const int k = instance.num_characters;

    VariableCatalog vars(k, mu, lambda);
    CnfFormula formula;
    formula.num_variables = vars.total_count();

    auto mark = [&](const char* name) {
        if (breakdown) breakdown->family_start.emplace_back(name, formula.clauses.size());
    };
    auto emit = [&](std::vector<int> lits) { formula.clauses.push_back(std::move(lits)); };

    // -- Describing the permutations ------------------------------------
    mark("antisymmetry");
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            for (int r = 1; r <= lambda; ++r) {
                int oi = vars.o(i, r), oj = vars.o(j, r);
                emit({vars.x(i, j, r), vars.x(j, i, r), oi, oj});
                emit({-vars.x(i, j, r), -vars.x(j, i, r), oi, oj});
            }
        }
    mark("transitivity");
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            for (int l = 1; l <= k; ++l) {
                if (l == i || l == j) continue;
                for (int r = 1; r <= lambda; ++r) {
                    int oi = vars.o(i, r), oj = vars.o(j, r), ol = vars.o(l, r);
                    emit({vars.x(i, j, r), vars.x(j, l, r), vars.x(l, i, r), oi, oj, ol});
                    emit({-vars.x(i, j, r), -vars.x(j, l, r), -vars.x(l, i, r), oi, oj, ol});
                }
            }
        }

    // -- Crossings between characters ------------------------------------
    mark("crossing definition");
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            for (int r = 1; r + 1 <= lambda; ++r) {
                int xa = vars.x(i, j, r), xb = vars.x(i, j, r + 1);
                int chi = vars.chi(i, j, r);
                int oi = vars.o(i, r), oj = vars.o(j, r);
                emit({chi, xa, -xb, oi, oj});
                emit({chi, -xa, xb, oi, oj});
                emit({-chi, xa, xb, oi, oj});
                emit({-chi, -xa, -xb, oi, oj});
            }
        }
    mark("no crossing at alive-set change");
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            for (int l = 1; l <= k; ++l) {
                if (l == i || l == j) continue;
                for (int r = 1; r + 1 <= lambda; ++r) {
                    int chi = vars.chi(j, l, r);
                    int oia = vars.o(i, r), oib = vars.o(i, r + 1);
                    std::vector<int> guards = {vars.o(j, r), vars.o(j, r + 1), vars.o(l, r),
                                               vars.o(l, r + 1)};
                    emit({-chi, oia, -oib, guards[0], guards[1], guards[2], guards[3]});
                    emit({-chi, -oia, oib, guards[0], guards[1], guards[2], guards[3]});
                }
            }
        }

    // -- Block crossings --------------------------------------------------
    mark("exactly one of f/g/h");
    for (int i = 1; i <= k; ++i)
        for (int r = 1; r <= lambda; ++r) {
            int fi = vars.f(i, r), gi = vars.g(i, r), hi = vars.h(i, r), oi = vars.o(i, r);
            emit({fi, gi, hi, oi});
            emit({-fi, -gi, -hi, oi});
            emit({fi, -gi, -hi, oi});
            emit({-fi, gi, -hi, oi});
            emit({-fi, -gi, hi, oi});
        }
    mark("block contiguity and adjacency");
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            for (int l = 1; l <= k; ++l) {
                if (l == i || l == j) continue;
                for (int r = 1; r <= lambda; ++r) {
                    int xij = vars.x(i, j, r), xjl = vars.x(j, l, r);
                    int oi = vars.o(i, r), oj = vars.o(j, r), ol = vars.o(l, r);
                    emit({-xij, -xjl, -vars.g(i, r), -vars.g(l, r), vars.g(j, r), oi, oj, ol});
                    emit({-xij, -xjl, -vars.h(i, r), -vars.h(l, r), vars.h(j, r), oi, oj, ol});
                    emit({-xij, -xjl, -vars.g(i, r), -vars.h(l, r), -vars.f(j, r), oi, oj, ol});
                }
            }
        }
    mark("G above H");
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            for (int r = 1; r <= lambda; ++r)
                emit({-vars.g(i, r), -vars.h(j, r), vars.x(i, j, r), vars.o(i, r), vars.o(j, r)});
        }
    mark("crossing iff block membership");
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            for (int r = 1; r + 1 <= lambda; ++r) {
                int chi = vars.chi(i, j, r);
                int oi = vars.o(i, r), oj = vars.o(j, r);
                emit({chi, -vars.g(i, r), -vars.h(j, r), oi, oj});
                emit({-chi, -vars.f(i, r), oi, oj});
                emit({-chi, -vars.g(i, r), -vars.g(j, r), oi, oj});
                emit({-chi, -vars.h(i, r), -vars.h(j, r), oi, oj});
            }
        }

    // -- Meeting groups ----------------------------------------------------
    mark("group assigned at least once");
    for (int l = 1; l <= mu; ++l) {
        std::vector<int> clause;
        for (int r = 1; r <= lambda; ++r) clause.push_back(vars.q(l, r));
        emit(std::move(clause));
    }
    mark("group assigned at most once");
    for (int l = 1; l <= mu; ++l)
        for (int r = 1; r <= lambda; ++r)
            for (int p = 1; p <= lambda; ++p) {
                if (p == r) continue;
                emit({-vars.q(l, r), -vars.q(l, p)});
            }
    mark("assignment order");
    for (int l = 2; l <= mu; ++l)
        for (int r = 1; r <= lambda; ++r) {
            std::vector<int> clause = {-vars.q(l, r)};
            for (int j = 1; j <= r; ++j) clause.push_back(vars.q(l - 1, j));
            emit(std::move(clause));
        }
    mark("first group anchored");
    emit({vars.q(1, 1)});
    mark("alive characters present");
    for (int i = 1; i <= k; ++i)
        for (int l = 1; l <= mu; ++l) {
            if (!groups.groups[l - 1].contains(i)) continue;
            for (int r = 1; r <= lambda; ++r) emit({-vars.q(l, r), -vars.o(i, r)});
        }
    mark("dead characters omitted");
    for (int i = 1; i <= k; ++i)
        for (int l = 1; l <= mu; ++l) {
            if (groups.groups[l - 1].contains(i)) continue;
            for (int r = 1; r <= lambda; ++r) emit({-vars.q(l, r), vars.o(i, r)});
        }
    mark("loose permutations frozen");
    for (int i = 1; i <= k; ++i)
        for (int r = 2; r <= lambda; ++r) {
            std::vector<int> any_group;
            for (int l = 1; l <= mu; ++l) any_group.push_back(vars.q(l, r));
            std::vector<int> up = any_group, down = any_group;
            up.push_back(vars.o(i, r));
            up.push_back(-vars.o(i, r - 1));
            down.push_back(-vars.o(i, r));
            down.push_back(vars.o(i, r - 1));
            emit(std::move(up));
            emit(std::move(down));
        }
    mark("meeting contiguity");
    for (int l = 1; l <= mu; ++l) {
        const MeetingGroup& group = groups.groups[l - 1];
        // Disjointness puts each (i, k) pair in at most one member set.
        std::vector<int> set_of(k + 1, -1);
        for (std::size_t s = 0; s < group.member_sets.size(); ++s)
            if (group.member_sets[s].size() >= 2)
                for (int c : group.member_sets[s]) set_of[c] = static_cast<int>(s);
        for (int i = 1; i <= k; ++i) {
            if (set_of[i] < 0) continue;
            for (int kk = 1; kk <= k; ++kk) {
                if (kk == i || set_of[kk] != set_of[i]) continue;
                for (int j = 1; j <= k; ++j) {
                    if (j == i || j == kk || set_of[j] == set_of[i]) continue;
                    for (int r = 1; r <= lambda; ++r) {
                        emit({-vars.q(l, r), vars.x(i, j, r), -vars.x(kk, j, r)});
                        emit({-vars.q(l, r), -vars.x(i, j, r), vars.x(kk, j, r)});
                    }
                }
            }
        }
    }

    return {std::move(formula), vars};
}

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads a satisfying assignment back into a Solution. The model must
// assign every catalog variable; the x relation restricted to the alive
// characters of each permutation must be a strict total order (anything
// else signals a solver or encoding bug, not bad input).
inline Solution decode(const std::vector<int>& model, const VariableCatalog& vars,
                       const MeetingGroupSequence& groups) {
    std::vector<signed char> value(vars.total_count() + 1, -1);
    for (int lit : model) {
        int v = lit < 0 ? -lit : lit;
        if (v == 0 || v > vars.total_count())
            throw DecodeError("model inconsistent with catalog: literal " + std::to_string(lit));
        value[v] = lit > 0 ? 1 : 0;
    }
    for (int v = 1; v <= vars.total_count(); ++v)
        if (value[v] < 0)
            throw DecodeError("model inconsistent with catalog: variable " + std::to_string(v) +
                              " unassigned");

    const int k = vars.num_characters();
    const int lambda = vars.lambda();
    Solution solution;
    for (int r = 1; r <= lambda; ++r) {
        std::vector<int> alive;
        for (int i = 1; i <= k; ++i)
            if (value[vars.o(i, r)] == 0) alive.push_back(i);
        // Place each character by how many alive characters sit above it;
        // a strict total order makes these ranks a bijection.
        std::vector<int> perm(alive.size(), 0);
        for (int i : alive) {
            int above = 0;
            for (int j : alive)
                if (j != i && value[vars.x(j, i, r)] == 1) ++above;
            if (perm[above] != 0)
                throw DecodeError("model inconsistent with catalog: x is not a total order in "
                                  "permutation " +
                                  std::to_string(r));
            perm[above] = i;
        }
        for (std::size_t u = 0; u < perm.size(); ++u)
            for (std::size_t v = u + 1; v < perm.size(); ++v)
                if (value[vars.x(perm[u], perm[v], r)] != 1)
                    throw DecodeError(
                        "model inconsistent with catalog: x is not a total order in permutation " +
                        std::to_string(r));
        solution.permutations.push_back(std::move(perm));
    }

    for (int l = 1; l <= vars.num_groups(); ++l) {
        int assigned = 0;
        for (int r = 1; r <= lambda; ++r)
            if (value[vars.q(l, r)] == 1) {
                if (assigned != 0)
                    throw DecodeError("model inconsistent with catalog: group " +
                                      std::to_string(l) + " assigned twice");
                assigned = r;
            }
        if (assigned == 0)
            throw DecodeError("model inconsistent with catalog: group " + std::to_string(l) +
                              " unassigned");
        solution.assignment.push_back(assigned);
    }
    return solution;
}

}  // namespace storyline
