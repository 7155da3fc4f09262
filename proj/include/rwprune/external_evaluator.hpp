#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <sys/types.h>
#include <vector>

#include <json.hpp>

#include "rwprune/complexity.hpp"
#include "rwprune/evaluator.hpp"

namespace rwprune {

struct ExternalEvaluatorConfig {
    std::vector<std::string> argv;  // program and arguments, run without a shell
    std::chrono::milliseconds timeout{std::chrono::hours(6)};
    int epochs = 100;
    ArchitectureSpec arch;

    nlohmann::ordered_json to_json() const;
    static ExternalEvaluatorConfig from_json(const nlohmann::json& j);
};

// One request line:
//   {"type":"evaluate","stages":[[[u,v],...],...],"arch":{"C":78,"N":32,"classes":2},
//    "init_seed":<u64>,"epochs":100}
nlohmann::ordered_json make_eval_request(const StagedNetwork& net, const ArchitectureSpec& arch,
                                         std::uint64_t init_seed, int epochs);

// Speaks newline-delimited JSON with a child process over its stdin/stdout.
// The child is started on first use and kept for the evaluator's lifetime;
// closing its stdin on destruction is its signal to exit.
class ExternalEvaluator : public Evaluator {
public:
    explicit ExternalEvaluator(ExternalEvaluatorConfig config);
    ~ExternalEvaluator() override;

    ExternalEvaluator(const ExternalEvaluator&) = delete;
    ExternalEvaluator& operator=(const ExternalEvaluator&) = delete;

    EvalResponse evaluate(const StagedNetwork& net, std::uint64_t init_seed) override;

    // Request/response lines exchanged so far, in order.
    const std::vector<std::string>& transcript() const { return transcript_; }

private:
    ExternalEvaluatorConfig config_;
    pid_t child_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    int child_err_ = -1;
    std::string pending_;  // bytes read past the last newline
    std::vector<std::string> transcript_;

    void start();
    void stop();
    std::string read_line();
    std::string drain_stderr();
    [[noreturn]] void fail(const std::string& what);
};

} // namespace rwprune
