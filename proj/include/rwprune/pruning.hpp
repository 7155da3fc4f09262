#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "rwprune/error.hpp"
#include "rwprune/evaluator.hpp"
#include "rwprune/graph.hpp"
#include "rwprune/measures.hpp"
#include "rwprune/staged_network.hpp"

namespace rwprune {

// The floor(fraction/100 * |ranking|) edges at the least significant end of
// a most-to-least ranking.
std::vector<Edge> select_victims(std::span<const Edge> ranking, double fraction);

// Removes select_victims(ranking, fraction) from every stage (each with its
// own ranking), deletes nodes left isolated and rebuilds the stage DAGs.
StagedNetwork prune_network(const StagedNetwork& original, std::span<const std::vector<Edge>> rankings,
                            double fraction);

struct BinarySearchState {
    int count = 1;
    double min = 0.0;
    double max = 100.0;

    double midpoint() const { return (min + max) / 2.0; }
};

struct PruneStep {
    double fraction = 0;
    bool passed = false;
    ConfusionCounts counts;
    PerformanceMetrics metrics;

    nlohmann::ordered_json to_json() const;
};

struct PruneResult {
    double best_fraction = 0;                       // 0 means the unpruned original
    StagedNetwork best;                             // retained network
    std::vector<PruneStep> trace;
    BaselineScores best_scores;

    std::vector<std::vector<Edge>> retained_edges() const { return best.stage_edges(); }
};

struct SearchOptions {
    int depth = 5;
    std::uint64_t init_seed = 0;
};

// Thrown when the evaluator fails mid-search; carries the steps completed so far.
class PruneAborted : public Error {
public:
    PruneAborted(const std::string& what, std::vector<PruneStep> trace, std::string diagnostics)
        : Error(what), trace_(std::move(trace)), diagnostics_(std::move(diagnostics)) {}

    const std::vector<PruneStep>& trace() const noexcept { return trace_; }
    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<PruneStep> trace_;
    std::string diagnostics_;
};

// Bisection over the prune percentage. Starting from [0, 100], each of the
// `depth` rounds prunes the midpoint fraction from the static rankings,
// evaluates the result with the same init seed, and moves `min` up on a pass
// (recording the candidate as best) or `max` down on a fail. A pass needs
// accuracy, specificity and sensitivity all at or above the baseline.
PruneResult binary_search_prune(const StagedNetwork& original, std::span<const std::vector<Edge>> rankings,
                                Evaluator& evaluator, const BaselineScores& baseline,
                                const SearchOptions& options = {});

// Same, ranking each stage of `original` by `measure` first.
PruneResult binary_search_prune(const StagedNetwork& original, MeasureKind measure, RankDirection direction,
                                Evaluator& evaluator, const BaselineScores& baseline,
                                const SearchOptions& options = {});

} // namespace rwprune
