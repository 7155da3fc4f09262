#include "rwprune/external_evaluator.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fmt/format.h>

#include "rwprune/error.hpp"

namespace rwprune {

nlohmann::ordered_json ExternalEvaluatorConfig::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = "external";
    j["cmd"] = argv;
    j["timeout_ms"] = timeout.count();
    j["epochs"] = epochs;
    return j;
}

ExternalEvaluatorConfig ExternalEvaluatorConfig::from_json(const nlohmann::json& j) {
    ExternalEvaluatorConfig c;
    try {
        if (j.contains("cmd")) c.argv = j["cmd"].get<std::vector<std::string>>();
        if (j.contains("timeout_ms")) c.timeout = std::chrono::milliseconds(j["timeout_ms"].get<std::int64_t>());
        c.epochs = j.value("epochs", c.epochs);
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(fmt::format("bad external evaluator config: {}", ex.what()));
    }
    if (c.argv.empty()) throw ConfigError("external evaluator needs a command");
    if (c.epochs < 1) throw ConfigError("external evaluator epochs must be >= 1");
    return c;
}

nlohmann::ordered_json make_eval_request(const StagedNetwork& net, const ArchitectureSpec& arch,
                                         std::uint64_t init_seed, int epochs) {
    nlohmann::ordered_json j;
    j["type"] = "evaluate";
    auto stages = nlohmann::ordered_json::array();
    for (const auto& g : net.stages) {
        auto list = nlohmann::ordered_json::array();
        for (const Edge& e : g.edges()) list.push_back({e.u, e.v});
        stages.push_back(std::move(list));
    }
    j["stages"] = std::move(stages);
    j["arch"] = arch.to_json();
    j["init_seed"] = init_seed;
    j["epochs"] = epochs;
    return j;
}

ExternalEvaluator::ExternalEvaluator(ExternalEvaluatorConfig config) : config_(std::move(config)) {
    if (config_.argv.empty()) throw ConfigError("external evaluator needs a command");
}

ExternalEvaluator::~ExternalEvaluator() { stop(); }

void ExternalEvaluator::start() {
    // A child that dies mid-request must surface as EPIPE, not kill us.
    std::signal(SIGPIPE, SIG_IGN);
    int in_pipe[2], out_pipe[2], err_pipe[2];
    if (pipe2(in_pipe, O_CLOEXEC) != 0 || pipe2(out_pipe, O_CLOEXEC) != 0 || pipe2(err_pipe, O_CLOEXEC) != 0) {
        throw EvaluationError(fmt::format("cannot create pipes: {}", std::strerror(errno)));
    }
    // Exec failure is reported through this pipe; it closes on successful exec.
    int exec_pipe[2];
    if (pipe2(exec_pipe, O_CLOEXEC) != 0) throw EvaluationError("cannot create pipes");

    const pid_t pid = fork();
    if (pid < 0) throw EvaluationError(fmt::format("fork failed: {}", std::strerror(errno)));
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        dup2(err_pipe[1], STDERR_FILENO);
        std::vector<char*> args;
        for (auto& a : config_.argv) args.push_back(a.data());
        args.push_back(nullptr);
        execvp(args[0], args.data());
        const int err = errno;
        [[maybe_unused]] auto n = write(exec_pipe[1], &err, sizeof err);
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[1]);
    close(exec_pipe[1]);
    child_ = pid;
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    child_err_ = err_pipe[0];
    fcntl(child_err_, F_SETFL, O_NONBLOCK);

    int exec_errno = 0;
    const auto got = read(exec_pipe[0], &exec_errno, sizeof exec_errno);
    close(exec_pipe[0]);
    if (got == static_cast<ssize_t>(sizeof exec_errno)) {
        stop();
        throw EvaluationError(
            fmt::format("cannot launch evaluator '{}': {}", config_.argv.front(), std::strerror(exec_errno)));
    }
}

void ExternalEvaluator::stop() {
    if (to_child_ >= 0) close(to_child_);
    to_child_ = -1;
    if (child_ > 0) {
        // Give the child a moment to exit on EOF, then make sure it is gone.
        int status = 0;
        for (int i = 0; i < 50; ++i) {
            if (waitpid(child_, &status, WNOHANG) == child_) {
                child_ = -1;
                break;
            }
            usleep(10000);
        }
        if (child_ > 0) {
            kill(child_, SIGKILL);
            waitpid(child_, &status, 0);
            child_ = -1;
        }
    }
    if (from_child_ >= 0) close(from_child_);
    if (child_err_ >= 0) close(child_err_);
    from_child_ = child_err_ = -1;
    pending_.clear();
}

std::string ExternalEvaluator::drain_stderr() {
    std::string out;
    if (child_err_ < 0) return out;
    char buf[4096];
    for (;;) {
        const auto n = read(child_err_, buf, sizeof buf);
        if (n <= 0) break;
        out.append(buf, static_cast<std::size_t>(n));
        if (out.size() > 65536) break;
    }
    return out;
}

void ExternalEvaluator::fail(const std::string& what) {
    std::string diagnostics = drain_stderr();
    if (child_ > 0) {
        int status = 0;
        kill(child_, SIGKILL);
        waitpid(child_, &status, 0);
        child_ = -1;
    }
    stop();
    throw EvaluationError(what, std::move(diagnostics));
}

std::string ExternalEvaluator::read_line() {
    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + config_.timeout;
    char buf[4096];
    for (;;) {
        if (const auto nl = pending_.find('\n'); nl != std::string::npos) {
            std::string line = pending_.substr(0, nl);
            pending_.erase(0, nl + 1);
            return line;
        }
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now());
        if (left.count() <= 0) fail(fmt::format("evaluator timed out after {} ms", config_.timeout.count()));
        pollfd fd{from_child_, POLLIN, 0};
        const int ready = poll(&fd, 1, static_cast<int>(std::min<std::int64_t>(left.count(), 1 << 30)));
        if (ready < 0 && errno == EINTR) continue;
        if (ready == 0) continue;
        const auto n = read(from_child_, buf, sizeof buf);
        if (n > 0) {
            pending_.append(buf, static_cast<std::size_t>(n));
            continue;
        }
        // EOF: the child exited or closed stdout before answering.
        int status = 0;
        waitpid(child_, &status, 0);
        child_ = -1;
        if (WIFEXITED(status)) {
            fail(fmt::format("evaluator exited with status {} before responding", WEXITSTATUS(status)));
        }
        fail("evaluator terminated by a signal before responding");
    }
}

EvalResponse ExternalEvaluator::evaluate(const StagedNetwork& net, std::uint64_t init_seed) {
    if (child_ < 0) start();
    const std::string request = make_eval_request(net, config_.arch, init_seed, config_.epochs).dump();
    transcript_.push_back(request);

    const std::string line = request + "\n";
    std::size_t sent = 0;
    while (sent < line.size()) {
        const auto n = write(to_child_, line.data() + sent, line.size() - sent);
        if (n < 0) {
            if (errno == EINTR) continue;
            fail(fmt::format("cannot write request to evaluator: {}", std::strerror(errno)));
        }
        sent += static_cast<std::size_t>(n);
    }

    const std::string reply = read_line();
    transcript_.push_back(reply);
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(reply);
    } catch (const nlohmann::json::parse_error& ex) {
        fail(fmt::format("evaluator sent malformed JSON: {}", ex.what()));
    }
    try {
        return EvalResponse::from_json(parsed);
    } catch (const EvaluationError& ex) {
        fail(ex.what());
    }
}

} // namespace rwprune
