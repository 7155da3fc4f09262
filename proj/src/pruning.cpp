#include "rwprune/pruning.hpp"

#include <cmath>

#include <fmt/format.h>

namespace rwprune {

std::vector<Edge> select_victims(std::span<const Edge> ranking, double fraction) {
    if (!(fraction >= 0.0 && fraction <= 100.0)) {
        throw ContractViolation(fmt::format("prune fraction {} outside [0, 100]", fraction));
    }
    const auto take = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(ranking.size()) / 100.0));
    return {ranking.end() - static_cast<std::ptrdiff_t>(take), ranking.end()};
}

StagedNetwork prune_network(const StagedNetwork& original, std::span<const std::vector<Edge>> rankings,
                            double fraction) {
    if (rankings.size() != original.stages.size()) throw ContractViolation("one ranking per stage required");
    std::vector<UndirectedGraph> stages;
    stages.reserve(original.stages.size());
    for (std::size_t s = 0; s < original.stages.size(); ++s) {
        const auto victims = select_victims(rankings[s], fraction);
        stages.push_back(remove_edges(original.stages[s], victims));
    }
    return StagedNetwork::build(std::move(stages));
}

nlohmann::ordered_json PruneStep::to_json() const {
    nlohmann::ordered_json j;
    j["fraction"] = fraction;
    j["passed"] = passed;
    j["counts"] = {{"tp", counts.tp}, {"tn", counts.tn}, {"fp", counts.fp}, {"fn", counts.fn}};
    j["metrics"] = metrics.to_json();
    return j;
}

PruneResult binary_search_prune(const StagedNetwork& original, std::span<const std::vector<Edge>> rankings,
                                Evaluator& evaluator, const BaselineScores& baseline,
                                const SearchOptions& options) {
    if (options.depth < 1) throw ConfigError("search depth must be at least 1");

    PruneResult result;
    result.best_fraction = 0;
    result.best = original;
    result.best_scores = baseline;

    BinarySearchState state;
    while (state.count <= options.depth) {
        const double fraction = state.midpoint();
        StagedNetwork candidate = prune_network(original, rankings, fraction);

        EvalResponse response;
        try {
            response = evaluator.evaluate(candidate, options.init_seed);
        } catch (const EvaluationError& ex) {
            throw PruneAborted(fmt::format("evaluation at {}% failed: {}", fraction, ex.what()), result.trace,
                               ex.diagnostics());
        }

        PruneStep step;
        step.fraction = fraction;
        step.counts = response.counts;
        step.passed = meets_baseline(response.counts, baseline);
        try {
            step.metrics = metrics_from_confusion(response.counts);
        } catch (const UndefinedMetricError& ex) {
            throw PruneAborted(fmt::format("evaluation at {}% returned unusable counts: {}", fraction, ex.what()),
                               result.trace, {});
        }
        result.trace.push_back(step);

        if (step.passed) {
            state.min = fraction;
            result.best_fraction = fraction;
            result.best = std::move(candidate);
            result.best_scores = BaselineScores::from_counts(response.counts);
        } else {
            state.max = fraction;
        }
        ++state.count;
    }
    return result;
}

PruneResult binary_search_prune(const StagedNetwork& original, MeasureKind measure, RankDirection direction,
                                Evaluator& evaluator, const BaselineScores& baseline,
                                const SearchOptions& options) {
    std::vector<std::vector<Edge>> rankings;
    for (const auto& g : original.stages) rankings.push_back(rank_edges(g, measure, direction));
    return binary_search_prune(original, rankings, evaluator, baseline, options);
}

} // namespace rwprune
