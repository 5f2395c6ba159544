#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include "storyline/dimacs.hpp"
#include "storyline/sat_solver.hpp"
#include "storyline/subprocess.hpp"

namespace storyline {

struct SolverVerdict {
    enum class Status { sat, unsat };
    Status status = Status::unsat;
    std::vector<int> model;  // signed literal per variable, present iff sat
    std::chrono::duration<double> wall_time{0};
    std::optional<std::uint64_t> peak_memory_bytes;

    bool sat() const { return status == Status::sat; }
};

struct BackendLaunchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BackendResultError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FallbackCeilingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// How to discharge a formula. An external backend is any executable with
// the minisat command-line contract `<exe> <input.cnf> <output.result>`;
// without one, the built-in solver handles formulas up to the variable
// ceiling. STORYLINE_SAT_SOLVER overrides the executable path.
struct SolverConfig {
    std::optional<std::string> executable;
    bool allow_fallback = true;
    int fallback_variable_ceiling = 5000;

    static SolverConfig from_environment() {
        SolverConfig config;
        if (const char* exe = std::getenv("STORYLINE_SAT_SOLVER"); exe && *exe)
            config.executable = exe;
        return config;
    }
};

namespace detail {

class TempFile {
public:
    explicit TempFile(const char* tag) {
        const char* dir = std::getenv("TMPDIR");
        path_ = std::string(dir && *dir ? dir : "/tmp") + "/storyline-" + tag + "-XXXXXX";
        int fd = mkstemp(path_.data());
        if (fd < 0) throw BackendLaunchError("cannot create temp file " + path_);
        close(fd);
    }
    ~TempFile() { std::remove(path_.c_str()); }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

inline SolverVerdict solve_external(const CnfFormula& formula, const std::string& executable) {
    TempFile input("in");
    TempFile output("out");
    {
        std::ofstream out(input.path());
        write_dimacs(formula, out);
        if (!out) throw BackendLaunchError("cannot write " + input.path());
    }
    ProcessResult process = run_process({executable, input.path(), output.path()}, {}, true);
    if (process.exit_code == 127)
        throw BackendLaunchError("cannot execute SAT backend '" + executable + "'");

    std::ifstream in(output.path());
    if (!in) throw BackendResultError("SAT backend produced no result file");
    DimacsResult result;
    try {
        result = parse_result(in);
    } catch (const ParseError& e) {
        throw BackendResultError(std::string("unparsable SAT backend result: ") + e.what());
    }

    SolverVerdict verdict;
    verdict.wall_time = process.wall_time;
    verdict.peak_memory_bytes = process.peak_memory_bytes;
    if (!result.sat) {
        verdict.status = SolverVerdict::Status::unsat;
        return verdict;
    }
    // Normalize to one signed literal per variable; unmentioned variables
    // default to false, then the whole model is checked.
    std::vector<signed char> value(formula.num_variables + 1, 0);
    for (int lit : result.model) {
        int v = lit < 0 ? -lit : lit;
        if (v < 1 || v > formula.num_variables)
            throw BackendResultError("SAT backend model mentions unknown variable " +
                                     std::to_string(v));
        value[v] = lit > 0 ? 1 : -1;
    }
    verdict.status = SolverVerdict::Status::sat;
    for (int v = 1; v <= formula.num_variables; ++v)
        verdict.model.push_back(value[v] >= 1 ? v : -v);
    if (!model_satisfies(verdict.model, formula))
        throw BackendResultError("SAT backend returned a non-model");
    return verdict;
}

inline SolverVerdict solve_fallback(const CnfFormula& formula, int ceiling) {
    if (formula.num_variables > ceiling)
        throw FallbackCeilingError("formula has " + std::to_string(formula.num_variables) +
                                   " variables, above the fallback ceiling of " +
                                   std::to_string(ceiling));
    auto start = std::chrono::steady_clock::now();
    CdclSolver solver(formula.num_variables);
    for (const std::vector<int>& clause : formula.clauses) solver.add_clause(clause);
    bool sat = solver.solve();
    SolverVerdict verdict;
    verdict.wall_time = std::chrono::steady_clock::now() - start;
    verdict.status = sat ? SolverVerdict::Status::sat : SolverVerdict::Status::unsat;
    if (sat) {
        verdict.model = solver.model();
        if (!model_satisfies(verdict.model, formula))
            throw BackendResultError("fallback solver returned a non-model");
    }
    return verdict;
}

}  // namespace detail

inline SolverVerdict solve(const CnfFormula& formula, const SolverConfig& config = {}) {
    if (config.executable) return detail::solve_external(formula, *config.executable);
    if (!config.allow_fallback)
        throw BackendLaunchError("no SAT backend configured and fallback disabled");
    return detail::solve_fallback(formula, config.fallback_variable_ceiling);
}

}  // namespace storyline
