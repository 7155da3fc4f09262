#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwprune/staged_network.hpp"

namespace rwprune {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t positives() const { return tp + fn; }
    std::int64_t negatives() const { return tn + fp; }
    std::int64_t total() const { return tp + tn + fp + fn; }

    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Percentages in [0, 100].
struct PerformanceMetrics {
    double accuracy = 0;
    double specificity = 0;
    double sensitivity = 0;
    std::optional<double> precision;  // absent when nothing was predicted positive
    std::optional<double> f1;         // absent when precision is, or both are zero
    std::optional<double> auc_roc;

    nlohmann::ordered_json to_json() const;
};

// Throws UndefinedMetricError when there are no positives or no negatives.
PerformanceMetrics metrics_from_confusion(const ConfusionCounts& c);

struct ScoredLabel {
    double score = 0;
    bool positive = false;
};

// Trapezoidal area under TPR vs FPR, one curve point per distinct score.
// Percent. Throws UndefinedMetricError unless both classes occur.
double auc_roc(std::vector<ScoredLabel> items);

// What a pruned candidate has to match. Counts, when present, make the
// comparison exact instead of going through rounded percentages.
struct BaselineScores {
    double accuracy = 0;
    double specificity = 0;
    double sensitivity = 0;
    std::optional<ConfusionCounts> counts;

    static BaselineScores from_counts(const ConfusionCounts& c);
    nlohmann::ordered_json to_json() const;
};

// acc >= acc_G and spec >= spec_G and sens >= sens_G.
bool meets_baseline(const ConfusionCounts& candidate, const BaselineScores& baseline);

struct EvalResponse {
    ConfusionCounts counts;
    std::optional<std::vector<ScoredLabel>> scores;

    nlohmann::ordered_json to_json() const;
    // Throws EvaluationError on missing/negative counts or inconsistent scores.
    static EvalResponse from_json(const nlohmann::json& j);
};

// Anything that can train-and-test a (pruned) network.
class Evaluator {
public:
    virtual ~Evaluator() = default;

    // init_seed is identical for every call within one search so that each
    // candidate starts from the same initial parameters.
    virtual EvalResponse evaluate(const StagedNetwork& net, std::uint64_t init_seed) = 0;
};

struct SurrogateParams {
    double tau = 0.6;
    double lambda = 200.0;
    ConfusionCounts base{90, 2929, 71, 10};

    nlohmann::ordered_json to_json() const;
    static SurrogateParams from_json(const nlohmann::json& j);
};

// Deterministic structural stand-in for training. The score is
//   r = mean over stages of E_label(pruned stage) / E_label(original stage)
// where E_label is global efficiency normalized by the stage's full label
// count, so nodes deleted by pruning count as unreachable and r can only
// fall as edges go. r >= tau returns the base counts untouched; otherwise
// d = ceil(lambda * (tau - r)) positives flip TP -> FN and
// ceil(d * negatives / positives) negatives flip TN -> FP, clamped at zero.
class SurrogateEvaluator : public Evaluator {
public:
    SurrogateEvaluator(SurrogateParams params, const StagedNetwork& original);

    EvalResponse evaluate(const StagedNetwork& net, std::uint64_t init_seed) override;

    double efficiency_ratio(const StagedNetwork& net) const;
    const SurrogateParams& params() const { return params_; }

private:
    SurrogateParams params_;
    std::vector<double> base_efficiency_;
};

// Returns the same counts for every network, so every candidate matches the
// baseline it produced.
class FixedEvaluator : public Evaluator {
public:
    explicit FixedEvaluator(ConfusionCounts counts) : counts_(counts) {}
    EvalResponse evaluate(const StagedNetwork&, std::uint64_t) override { return {counts_, std::nullopt}; }

private:
    ConfusionCounts counts_;
};

} // namespace rwprune
