#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "khg/cnf.hpp"
#include "khg/error.hpp"
#include "khg/sat_solver.hpp"

namespace khg {

struct ProcessResult {
    bool started = false;
    bool exited = false;
    bool timed_out = false;
    int exit_code = -1;
    std::string out;
};

// Runs argv[0] with the given arguments, capturing stdout. SIGKILLs the
// child when the deadline passes.
inline ProcessResult run_process(const std::vector<std::string>& argv,
                                 std::optional<double> timeout_seconds = std::nullopt) {
    ProcessResult res;
    int fds[2];
    if (pipe(fds) != 0) return res;
    const pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        return res;
    }
    if (pid == 0) {
        close(fds[0]);
        dup2(fds[1], STDOUT_FILENO);
        close(fds[1]);
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        execvp(cargv[0], cargv.data());
        _exit(127);
    }
    res.started = true;
    close(fds[1]);
    const auto deadline = timeout_seconds
                              ? std::optional(std::chrono::steady_clock::now() +
                                              std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                  std::chrono::duration<double>(*timeout_seconds)))
                              : std::nullopt;
    char buf[4096];
    for (;;) {
        int wait_ms = 200;
        if (deadline) {
            const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*deadline -
                                                                                    std::chrono::steady_clock::now())
                                  .count();
            if (left <= 0) {
                kill(pid, SIGKILL);
                res.timed_out = true;
                wait_ms = 200;
            } else {
                wait_ms = static_cast<int>(std::min<long long>(left, 200));
            }
        }
        struct pollfd pfd{fds[0], POLLIN, 0};
        const int pr = poll(&pfd, 1, wait_ms);
        if (pr > 0) {
            const ssize_t n = read(fds[0], buf, sizeof(buf));
            if (n > 0) {
                res.out.append(buf, static_cast<std::size_t>(n));
                continue;
            }
            break; // EOF
        }
        if (res.timed_out) break;
    }
    close(fds[0]);
    int status = 0;
    if (waitpid(pid, &status, 0) == pid && WIFEXITED(status)) {
        res.exited = true;
        res.exit_code = WEXITSTATUS(status);
    }
    return res;
}

struct SolverVerdict {
    enum class Status { Sat, Unsat, Unknown };
    Status status = Status::Unknown;
    std::vector<bool> model; // indexed 1..n_vars when Sat
    std::string backend;
    double wall_seconds = 0.0;
    std::string message; // reason when Unknown
};

// Backend selection: the in-process CDCL solver, or an external command
// that takes a DIMACS CNF path as its last argument and prints a standard
// "s SATISFIABLE"/"s UNSATISFIABLE" line plus "v ..." model lines.
struct SatBackend {
    enum class Kind { Internal, External };
    Kind kind = Kind::Internal;
    std::string command;
    std::optional<double> timeout_seconds;
    SatSolver::Config internal_config{};

    static SatBackend internal() {
        SatBackend b;
        return b;
    }
    static SatBackend external(std::string cmd, std::optional<double> timeout = std::nullopt) {
        SatBackend b;
        b.kind = Kind::External;
        b.command = std::move(cmd);
        b.timeout_seconds = timeout;
        return b;
    }
    // KHG_SAT_CMD supplies the default external command.
    static std::optional<SatBackend> from_env() {
        if (const char* c = std::getenv("KHG_SAT_CMD"); c && *c) return external(c);
        return std::nullopt;
    }
};

namespace detail {

inline std::vector<std::string> split_command(const std::string& cmd) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : cmd) {
        if (ch == ' ' || ch == '\t') {
            if (!cur.empty()) parts.push_back(std::move(cur)), cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) parts.push_back(std::move(cur));
    return parts;
}

inline SolverVerdict parse_solver_output(const std::string& out, int n_vars) {
    SolverVerdict v;
    bool have_status = false, model_done = false;
    std::vector<bool> model(static_cast<std::size_t>(n_vars) + 1, false);
    std::size_t pos = 0;
    while (pos < out.size()) {
        std::size_t eol = out.find('\n', pos);
        std::string line = (eol == std::string::npos) ? out.substr(pos) : out.substr(pos, eol - pos);
        pos = (eol == std::string::npos) ? out.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("s ", 0) == 0) {
            if (line == "s SATISFIABLE")
                v.status = SolverVerdict::Status::Sat, have_status = true;
            else if (line == "s UNSATISFIABLE")
                v.status = SolverVerdict::Status::Unsat, have_status = true;
            else if (line == "s UNKNOWN")
                v.status = SolverVerdict::Status::Unknown, have_status = true, v.message = "solver reported UNKNOWN";
            else {
                v.status = SolverVerdict::Status::Unknown;
                v.message = "unrecognized status line: " + line;
                return v;
            }
        } else if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
            std::size_t i = 1;
            while (i < line.size() && !model_done) {
                while (i < line.size() && line[i] == ' ') ++i;
                if (i >= line.size()) break;
                long long lit = 0;
                auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), lit);
                if (ec != std::errc()) {
                    v.status = SolverVerdict::Status::Unknown;
                    v.message = "malformed model line";
                    return v;
                }
                i = static_cast<std::size_t>(ptr - line.data());
                if (lit == 0) {
                    model_done = true;
                } else if (std::llabs(lit) <= n_vars) {
                    model[static_cast<std::size_t>(std::llabs(lit))] = lit > 0;
                }
            }
        }
    }
    if (!have_status) {
        v.status = SolverVerdict::Status::Unknown;
        v.message = "no status line in solver output";
        return v;
    }
    if (v.status == SolverVerdict::Status::Sat) v.model = std::move(model);
    return v;
}

} // namespace detail

inline SolverVerdict run_backend(const CnfInstance& inst, const SatBackend& backend) {
    const auto t0 = std::chrono::steady_clock::now();
    SolverVerdict v;
    if (backend.kind == SatBackend::Kind::Internal) {
        v.backend = "internal";
        SatSolver solver(inst.n_vars, backend.internal_config);
        for (const auto& c : inst.clauses) solver.add_clause(c);
        switch (solver.solve()) {
            case SatSolver::Result::Sat:
                v.status = SolverVerdict::Status::Sat;
                v.model = solver.model();
                break;
            case SatSolver::Result::Unsat:
                v.status = SolverVerdict::Status::Unsat;
                break;
            case SatSolver::Result::Unknown:
                v.status = SolverVerdict::Status::Unknown;
                v.message = "conflict budget exhausted";
                break;
        }
    } else {
        v.backend = "external:" + backend.command;
        // unique temp file per invocation; concurrent runs never collide
        std::string tmpl = (std::filesystem::temp_directory_path() / "khg_cnf_XXXXXX").string();
        const int fd = mkstemp(tmpl.data());
        if (fd < 0) {
            v.status = SolverVerdict::Status::Unknown;
            v.message = "cannot create temp CNF file";
            return v;
        }
        {
            const std::string text = to_dimacs(inst);
            ssize_t off = 0;
            while (off < static_cast<ssize_t>(text.size())) {
                const ssize_t n = write(fd, text.data() + off, text.size() - static_cast<std::size_t>(off));
                if (n <= 0) break;
                off += n;
            }
            close(fd);
        }
        auto argv = detail::split_command(backend.command);
        if (argv.empty()) {
            std::filesystem::remove(tmpl);
            v.status = SolverVerdict::Status::Unknown;
            v.message = "empty external solver command";
            return v;
        }
        argv.push_back(tmpl);
        const ProcessResult pr = run_process(argv, backend.timeout_seconds);
        std::filesystem::remove(tmpl);
        if (!pr.started) {
            v.status = SolverVerdict::Status::Unknown;
            v.message = "failed to spawn external solver";
        } else if (pr.timed_out) {
            v.status = SolverVerdict::Status::Unknown;
            v.message = "external solver timed out";
        } else {
            v = detail::parse_solver_output(pr.out, inst.n_vars);
            v.backend = "external:" + backend.command;
            if (v.status == SolverVerdict::Status::Unknown && v.message.empty())
                v.message = "external solver produced no verdict (exit code " + std::to_string(pr.exit_code) + ")";
            if (v.status == SolverVerdict::Status::Unknown && !pr.exited)
                v.message += " (abnormal exit)";
        }
    }
    v.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

} // namespace khg
