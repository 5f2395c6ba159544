#pragma once

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <fcntl.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

namespace storyline {

struct ProcessResult {
    int exit_code = -1;               // -1 if killed by signal
    bool timed_out = false;
    std::chrono::duration<double> wall_time{0};
    std::uint64_t peak_memory_bytes = 0;  // child ru_maxrss
};

// Runs argv[0] with the given arguments, optionally killing it after
// `timeout`. Stdout/stderr are inherited unless `quiet` redirects them to
// /dev/null. Throws on launch failure.
inline ProcessResult run_process(const std::vector<std::string>& argv,
                                 std::optional<std::chrono::duration<double>> timeout = {},
                                 bool quiet = false) {
    std::vector<char*> args;
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    auto start = std::chrono::steady_clock::now();
    pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork failed: " + std::string(std::strerror(errno)));
    if (pid == 0) {
        if (quiet) {
            int devnull = open("/dev/null", O_WRONLY);
            if (devnull >= 0) {
                dup2(devnull, STDOUT_FILENO);
                dup2(devnull, STDERR_FILENO);
                close(devnull);
            }
        }
        execvp(args[0], args.data());
        _exit(127);
    }

    ProcessResult result;
    int status = 0;
    rusage usage{};
    if (timeout) {
        auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    *timeout);
        while (true) {
            pid_t done = wait4(pid, &status, WNOHANG, &usage);
            if (done == pid) break;
            if (done < 0) throw std::runtime_error("wait4 failed");
            if (std::chrono::steady_clock::now() >= deadline) {
                kill(pid, SIGKILL);
                wait4(pid, &status, 0, &usage);
                result.timed_out = true;
                break;
            }
            usleep(2000);
        }
    } else {
        if (wait4(pid, &status, 0, &usage) < 0) throw std::runtime_error("wait4 failed");
    }
    result.wall_time = std::chrono::steady_clock::now() - start;
    result.peak_memory_bytes = static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

}  // namespace storyline
