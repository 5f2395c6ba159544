// Command-line front end: solve, gen, render, verify, bench, sat-solve.
// Exit codes: 0 ok, 1 unexpected error, 2 parse error, 3 instance
// validation failed, 4 algorithm inapplicable, 5 SAT backend error,
// 6 resource limit (fallback ceiling, Fpt memory, ItD depth budget),
// 7 solution verification failed. sat-solve exits 10/20 like minisat.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <sys/stat.h>

#include <CLI11.hpp>

#include "storyline/storyline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInapplicable = 4;
constexpr int kExitBackend = 5;
constexpr int kExitResource = 6;
constexpr int kExitVerification = 7;

storyline::StorylineInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw storyline::ParseError(0, "cannot open '" + path + "'");
    return storyline::parse_instance(in);
}

storyline::Solution load_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw storyline::ParseError(0, "cannot open '" + path + "'");
    return storyline::parse_solution(in);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

std::string format_seconds(double seconds) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3f", seconds);
    return buffer;
}

// Accepts "5", "3..7", or "2,4,8".
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::size_t dots = text.find("..");
    if (dots != std::string::npos) {
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        for (int v = lo; v <= hi; ++v) values.push_back(v);
        return values;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        values.push_back(std::stoi(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return values;
}

struct SolveOutcome {
    int lambda = 0;
    int block_crossings = 0;
    long long pairwise_crossings = 0;
    double seconds = 0;
    storyline::Solution solution;
};

struct SolveFlags {
    std::string algo = "sat";
    std::string solver_path;
    bool force_fallback = false;
    bool linear_search = false;
    int fallback_ceiling = 5000;
    int max_depth = 30;
    std::uint64_t fpt_memory = std::uint64_t(2) << 30;
    std::string dimacs_dir;
};

storyline::SolverConfig make_solver_config(const SolveFlags& flags) {
    storyline::SolverConfig config = storyline::SolverConfig::from_environment();
    if (!flags.solver_path.empty()) config.executable = flags.solver_path;
    if (flags.force_fallback) config.executable.reset();
    config.fallback_variable_ceiling = flags.fallback_ceiling;
    return config;
}

SolveOutcome run_solve(const storyline::StorylineInstance& instance, const SolveFlags& flags) {
    storyline::MeetingGroupSequence groups = storyline::build_meeting_groups(instance);
    SolveOutcome outcome;
    auto start = std::chrono::steady_clock::now();

    if (flags.algo == "sat") {
        storyline::SearchOptions options;
        options.solver = make_solver_config(flags);
        options.linear = flags.linear_search;
        storyline::SearchResult result = storyline::find_min_lambda(instance, groups, options);
        for (const storyline::ProbeRecord& probe : result.trace.probes)
            std::cerr << "probe lambda=" << probe.lambda << " "
                      << (probe.status == storyline::SolverVerdict::Status::sat ? "SAT" : "UNSAT")
                      << " " << format_seconds(probe.wall_time.count()) << "s\n";
        std::cerr << "solver_time=" << format_seconds(result.trace.solver_time.count())
                  << "s total_time=" << format_seconds(result.trace.total_time.count()) << "s\n";
        outcome.lambda = result.lambda_opt;
        outcome.block_crossings = result.block_crossings;
        outcome.solution = std::move(result.solution);
    } else {
        storyline::SequentialInstance sequential = storyline::to_sequential(instance);
        storyline::SequentialSolution schedule;
        if (flags.algo == "itd") {
            storyline::ItdOptions options;
            options.depth_limit_max = flags.max_depth;
            schedule = storyline::solve_itd(sequential, options);
        } else {
            storyline::FptOptions options;
            options.memory_budget_bytes = flags.fpt_memory;
            schedule = storyline::solve_fpt(sequential, options);
        }
        outcome.block_crossings = schedule.crossings();
        outcome.solution = storyline::embed_sequential(groups, schedule);
        outcome.lambda = outcome.solution.lambda();
    }
    outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!flags.dimacs_dir.empty() && flags.algo == "sat") {
        auto [formula, catalog] = storyline::encode(instance, groups, outcome.lambda);
        (void)catalog;
        write_file(flags.dimacs_dir, storyline::write_dimacs(formula));
    }

    // Every emitted solution is re-verified, whatever produced it.
    if (auto violation = storyline::verify_solution(groups, outcome.solution))
        throw std::logic_error("produced solution failed verification: " + *violation);
    outcome.pairwise_crossings = storyline::count_pairwise_crossings(outcome.solution);
    return outcome;
}

int cmd_solve(const std::string& instance_path, const SolveFlags& flags,
              const std::string& output_path, const std::string& report_path) {
    storyline::StorylineInstance instance = load_instance(instance_path);
    std::vector<std::string> violations = storyline::validate(instance);
    if (!violations.empty()) {
        for (const std::string& v : violations) std::cerr << "violation: " << v << "\n";
        return kExitValidation;
    }
    SolveOutcome outcome = run_solve(instance, flags);
    std::string line = "lambda=" + std::to_string(outcome.lambda) +
                       " bc=" + std::to_string(outcome.block_crossings) +
                       " cr=" + std::to_string(outcome.pairwise_crossings) +
                       " time=" + format_seconds(outcome.seconds) + "\n";
    std::cout << line;
    if (!report_path.empty()) write_file(report_path, line);
    if (!output_path.empty()) write_file(output_path, storyline::write_solution(outcome.solution));
    return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path) {
    storyline::StorylineInstance instance = load_instance(instance_path);
    std::vector<std::string> violations = storyline::validate(instance);
    if (!violations.empty()) {
        for (const std::string& v : violations) std::cerr << "violation: " << v << "\n";
        return kExitValidation;
    }
    storyline::Solution solution = load_solution(solution_path);
    if (auto violation = storyline::verify_solution(instance, solution)) {
        std::cout << "inadmissible: " << *violation << "\n";
        return kExitVerification;
    }
    std::cout << "ok bc=" << storyline::count_block_crossings(solution)
              << " cr=" << storyline::count_pairwise_crossings(solution) << "\n";
    return kExitOk;
}

struct BenchTask {
    std::string id;
    std::string instance_path;
    std::string algo;
};

struct BenchRow {
    std::string id;
    std::string algo;
    std::string lambda;
    std::string bc;
    std::string cr;
    std::string time_s;
    std::string peak_memory;
    std::string status;
};

int cmd_bench(const std::vector<int>& k_values, const std::vector<int>& n_values, double p,
              int seeds, int beta, const std::string& model, std::vector<std::string> algos,
              double timeout, int jobs, const std::string& output_path, std::string keep_dir,
              const SolveFlags& flags) {
    namespace sl = storyline;
    if (keep_dir.empty()) {
        const char* tmp = std::getenv("TMPDIR");
        keep_dir = std::string(tmp && *tmp ? tmp : "/tmp") + "/storyline-bench-" +
                   std::to_string(::getpid());
    }
    if (::mkdir(keep_dir.c_str(), 0755) != 0 && errno != EEXIST)
        throw std::runtime_error("cannot create '" + keep_dir + "'");

    std::vector<BenchTask> tasks;
    for (int k : k_values)
        for (int n : n_values)
            for (int seed = 1; seed <= seeds; ++seed) {
                sl::StorylineInstance instance;
                std::string id = model + "-k" + std::to_string(k) + "-n" + std::to_string(n) +
                                 "-s" + std::to_string(seed);
                if (model == "uniform") {
                    instance = sl::gen_uniform({k, n, p, static_cast<std::uint64_t>(seed)});
                } else {
                    instance = sl::gen_small_opt({k, n, p, beta, static_cast<std::uint64_t>(seed)})
                                   .instance;
                }
                std::string path = keep_dir + "/" + id + ".story";
                write_file(path, sl::write_instance(instance));
                for (const std::string& algo : algos) tasks.push_back({id, path, algo});
            }

    std::string self = "/proc/self/exe";
    std::vector<BenchRow> rows(tasks.size());
    std::mutex queue_mutex;
    std::size_t next_task = 0;
    auto worker = [&] {
        while (true) {
            std::size_t index;
            {
                std::lock_guard<std::mutex> lock(queue_mutex);
                if (next_task >= tasks.size()) return;
                index = next_task++;
            }
            const BenchTask& task = tasks[index];
            BenchRow row;
            row.id = task.id;
            row.algo = task.algo;
            std::string line_file = keep_dir + "/" + task.id + "-" + task.algo + ".out";
            std::vector<std::string> argv = {self,
                                             "solve",
                                             task.instance_path,
                                             "--algo",
                                             task.algo,
                                             "--report",
                                             line_file};
            if (flags.force_fallback) argv.push_back("--fallback");
            if (!flags.solver_path.empty()) {
                argv.push_back("--solver");
                argv.push_back(flags.solver_path);
            }
            sl::ProcessResult process =
                sl::run_process(argv, std::chrono::duration<double>(timeout), true);
            row.time_s = format_seconds(process.wall_time.count());
            row.peak_memory = std::to_string(process.peak_memory_bytes);
            if (process.timed_out) {
                row.status = "timeout";
            } else if (process.exit_code != 0) {
                row.status = "error" + std::to_string(process.exit_code);
            } else {
                std::ifstream in(line_file);
                std::string line;
                std::getline(in, line);
                unsigned long long lambda = 0, bc = 0, cr = 0;
                double t = 0;
                if (std::sscanf(line.c_str(), "lambda=%llu bc=%llu cr=%llu time=%lf", &lambda, &bc,
                                &cr, &t) == 4) {
                    row.lambda = std::to_string(lambda);
                    row.bc = std::to_string(bc);
                    row.cr = std::to_string(cr);
                    row.status = "ok";
                } else {
                    row.status = "unparsable";
                }
            }
            rows[index] = row;
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < std::max(1, jobs); ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    // Agreement check: successful algorithms on one instance must report
    // the same optimal crossing count.
    int disagreements = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (rows[i].id == rows[j].id && rows[i].status == "ok" && rows[j].status == "ok" &&
                rows[i].bc != rows[j].bc)
                ++disagreements;

    std::ostringstream csv;
    csv << "instance,algorithm,lambda,bc,cr,time_s,peak_memory_bytes,status\n";
    for (const BenchRow& row : rows)
        csv << row.id << "," << row.algo << "," << row.lambda << "," << row.bc << "," << row.cr
            << "," << row.time_s << "," << row.peak_memory << "," << row.status << "\n";
    csv << "summary,agreement,,,,,," << disagreements << " disagreements\n";
    if (output_path.empty() || output_path == "-")
        std::cout << csv.str();
    else
        write_file(output_path, csv.str());
    std::cerr << "bench: " << tasks.size() << " runs, " << disagreements << " disagreements, "
              << "instances kept in " << keep_dir << "\n";
    return disagreements == 0 ? kExitOk : kExitVerification;
}

int cmd_sat_solve(const std::string& input_path, const std::string& output_path) {
    std::ifstream in(input_path);
    if (!in) throw storyline::ParseError(0, "cannot open '" + input_path + "'");
    storyline::CnfFormula formula = storyline::parse_dimacs(in);
    storyline::SolverConfig config;
    config.fallback_variable_ceiling = 50'000'000;  // this *is* the solver
    storyline::SolverVerdict verdict = storyline::solve(formula, config);
    storyline::DimacsResult result;
    result.sat = verdict.sat();
    result.model = verdict.model;
    std::ofstream out(output_path);
    storyline::write_result(result, out);
    if (!out) throw std::runtime_error("cannot write '" + output_path + "'");
    return result.sat ? 10 : 20;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solvers for storyline block crossing minimization"};
    app.require_subcommand(1);

    // solve
    std::string instance_path, output_path, report_path;
    SolveFlags flags;
    CLI::App* solve = app.add_subcommand("solve", "Solve one instance to optimality");
    solve->add_option("instance", instance_path, "instance file")->required();
    solve->add_option("--algo", flags.algo, "sat | itd | fpt")
        ->check(CLI::IsMember({"sat", "itd", "fpt"}))
        ->capture_default_str();
    solve->add_option("-o,--output", output_path, "write the solution file here");
    solve->add_option("--report", report_path, "also write the report line to this file");
    solve->add_option("--solver", flags.solver_path, "external minisat-style SAT executable");
    solve->add_flag("--fallback", flags.force_fallback, "force the built-in SAT solver");
    solve->add_flag("--linear-search", flags.linear_search, "probe lambda linearly");
    solve->add_option("--fallback-ceiling", flags.fallback_ceiling,
                      "variable limit for the built-in solver")
        ->capture_default_str();
    solve->add_option("--max-depth", flags.max_depth, "ItD crossing budget")->capture_default_str();
    solve->add_option("--fpt-memory", flags.fpt_memory, "Fpt memory budget in bytes")
        ->capture_default_str();
    solve->add_option("--dimacs", flags.dimacs_dir, "dump the final DIMACS formula to this file");

    // gen
    CLI::App* gen = app.add_subcommand("gen", "Generate random instances");
    gen->require_subcommand(1);
    int gen_k = 5, gen_n = 10, gen_beta = 0;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 1;
    std::string gen_out, witness_out;
    CLI::App* uniform = gen->add_subcommand("uniform", "uniform random model");
    uniform->add_option("--k", gen_k, "characters")->required();
    uniform->add_option("--n", gen_n, "meetings")->required();
    uniform->add_option("--p", gen_p, "membership probability")->capture_default_str();
    uniform->add_option("--seed", gen_seed, "seed")->capture_default_str();
    uniform->add_option("-o,--output", gen_out, "output file (default stdout)");
    CLI::App* smallopt = gen->add_subcommand("smallopt", "bounded-optimum model");
    smallopt->add_option("--k", gen_k, "characters")->required();
    smallopt->add_option("--n", gen_n, "meetings")->required();
    smallopt->add_option("--p", gen_p, "membership probability")->capture_default_str();
    smallopt->add_option("--beta", gen_beta, "block crossing budget")->required();
    smallopt->add_option("--seed", gen_seed, "seed")->capture_default_str();
    smallopt->add_option("-o,--output", gen_out, "output file (default stdout)");
    smallopt->add_option("--emit-witness", witness_out, "write the generating chain here");

    // render
    std::string render_out = "out.svg";
    storyline::LayoutConfig layout;
    std::string style = "orthogonal";
    std::string render_instance, render_solution;
    CLI::App* render = app.add_subcommand("render", "Render a solution as SVG");
    render->add_option("instance", render_instance, "instance file")->required();
    render->add_option("solution", render_solution, "solution file")->required();
    render->add_option("-o,--output", render_out, "output SVG")->capture_default_str();
    render->add_option("--column-width", layout.column_width)->capture_default_str();
    render->add_option("--row-height", layout.row_height)->capture_default_str();
    render->add_option("--style", style, "orthogonal | straight")
        ->check(CLI::IsMember({"orthogonal", "straight"}))
        ->capture_default_str();

    // verify
    std::string verify_instance, verify_solution_path;
    CLI::App* verify = app.add_subcommand("verify", "Check a solution file");
    verify->add_option("instance", verify_instance, "instance file")->required();
    verify->add_option("solution", verify_solution_path, "solution file")->required();

    // bench
    std::string bench_k = "3..5", bench_n = "2..8", bench_algos = "sat,itd,fpt";
    std::string bench_model = "uniform", bench_out = "-", bench_keep;
    double bench_p = 0.5, bench_timeout = 60.0;
    int bench_seeds = 5, bench_beta = 5, bench_jobs = 1;
    CLI::App* bench = app.add_subcommand("bench", "Run an algorithm comparison grid");
    bench->add_option("--k", bench_k, "characters: list or lo..hi")->capture_default_str();
    bench->add_option("--n", bench_n, "meetings: list or lo..hi")->capture_default_str();
    bench->add_option("--p", bench_p, "membership probability")->capture_default_str();
    bench->add_option("--seeds", bench_seeds, "seeds 1..N per cell")->capture_default_str();
    bench->add_option("--beta", bench_beta, "small-opt crossing budget")->capture_default_str();
    bench->add_option("--model", bench_model, "uniform | smallopt")
        ->check(CLI::IsMember({"uniform", "smallopt"}))
        ->capture_default_str();
    bench->add_option("--algos", bench_algos, "comma list of sat,itd,fpt")->capture_default_str();
    bench->add_option("--timeout", bench_timeout, "seconds per run")->capture_default_str();
    bench->add_option("--jobs", bench_jobs, "parallel workers")->capture_default_str();
    bench->add_option("-o,--output", bench_out, "CSV path or - for stdout")->capture_default_str();
    bench->add_option("--keep", bench_keep, "directory for generated instances");
    bench->add_option("--solver", flags.solver_path, "external SAT backend for sat runs");
    bench->add_flag("--fallback", flags.force_fallback, "force the built-in SAT solver");

    // sat-solve
    std::string cnf_in, cnf_out;
    CLI::App* satsolve =
        app.add_subcommand("sat-solve", "Solve a DIMACS file (minisat-style CLI contract)");
    satsolve->add_option("input", cnf_in, "DIMACS CNF file")->required();
    satsolve->add_option("output", cnf_out, "result file (SAT + model, or UNSAT)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(instance_path, flags, output_path, report_path);
        if (gen->parsed()) {
            std::string text;
            if (uniform->parsed()) {
                text = storyline::write_instance(
                    storyline::gen_uniform({gen_k, gen_n, gen_p, gen_seed}));
            } else {
                storyline::SmallOptOutput out =
                    storyline::gen_small_opt({gen_k, gen_n, gen_p, gen_beta, gen_seed});
                text = storyline::write_instance(out.instance);
                if (!witness_out.empty())
                    write_file(witness_out, storyline::write_solution(out.witness));
            }
            if (gen_out.empty() || gen_out == "-")
                std::cout << text;
            else
                write_file(gen_out, text);
            return kExitOk;
        }
        if (render->parsed()) {
            storyline::StorylineInstance instance = load_instance(render_instance);
            std::vector<std::string> violations = storyline::validate(instance);
            if (!violations.empty()) {
                for (const std::string& v : violations) std::cerr << "violation: " << v << "\n";
                return kExitValidation;
            }
            layout.curve_style = style == "straight"
                                     ? storyline::LayoutConfig::CurveStyle::straight
                                     : storyline::LayoutConfig::CurveStyle::orthogonal_with_diagonals;
            storyline::Solution solution = load_solution(render_solution);
            write_file(render_out, storyline::render_svg(instance, solution, layout));
            return kExitOk;
        }
        if (verify->parsed()) return cmd_verify(verify_instance, verify_solution_path);
        if (bench->parsed()) {
            std::vector<std::string> algos;
            std::size_t start = 0;
            while (start <= bench_algos.size()) {
                std::size_t comma = bench_algos.find(',', start);
                if (comma == std::string::npos) comma = bench_algos.size();
                algos.push_back(bench_algos.substr(start, comma - start));
                start = comma + 1;
            }
            return cmd_bench(parse_int_list(bench_k), parse_int_list(bench_n), bench_p,
                             bench_seeds, bench_beta, bench_model, algos, bench_timeout,
                             bench_jobs, bench_out, bench_keep, flags);
        }
        if (satsolve->parsed()) return cmd_sat_solve(cnf_in, cnf_out);
    } catch (const storyline::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const storyline::NotSequential& e) {
        std::cerr << "algorithm inapplicable: " << e.what() << "\n";
        return kExitInapplicable;
    } catch (const storyline::BackendLaunchError& e) {
        std::cerr << "SAT backend launch error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const storyline::BackendResultError& e) {
        std::cerr << "SAT backend result error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const storyline::FallbackCeilingError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const storyline::FptMemoryError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const storyline::ItdBudgetExhausted& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const storyline::DecodeError& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::logic_error& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
