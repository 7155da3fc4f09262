#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwprune/analysis.hpp"
#include "rwprune/complexity.hpp"
#include "rwprune/evaluator.hpp"
#include "rwprune/external_evaluator.hpp"
#include "rwprune/graph.hpp"
#include "rwprune/measures.hpp"
#include "rwprune/pruning.hpp"

namespace rwprune {

enum class EvaluatorKind { Surrogate, External };

std::string to_string(EvaluatorKind kind);  // "surrogate", "external"
EvaluatorKind parse_evaluator_kind(const std::string& text);

struct EvaluatorConfig {
    EvaluatorKind kind = EvaluatorKind::Surrogate;
    SurrogateParams surrogate;
    ExternalEvaluatorConfig external;

    nlohmann::ordered_json to_json() const;
    static EvaluatorConfig from_json(const nlohmann::json& j);
};

struct ExperimentConfig {
    GeneratorConfig generator;  // seed field unused; see seeds
    MeasureKind measure = MeasureKind::ORC;
    RankDirection direction = RankDirection::Default;
    EvaluatorConfig evaluator;
    std::vector<std::uint64_t> seeds;
    int depth = 5;
    ArchitectureSpec arch;

    void validate() const;
    nlohmann::ordered_json to_json() const;
    // Unknown top-level keys are rejected so that typos fail loudly.
    static ExperimentConfig from_json(const nlohmann::json& j);
};

// The three stage graphs of one network: seeds s, s+1, s+2.
StagedNetwork generate_network(const GeneratorConfig& generator, std::uint64_t seed);

// One CSV line worth of results.
struct SummaryRow {
    std::string generator;  // "ER", "WS", "BA"
    std::uint64_t seed = 0;
    std::string measure;
    double best_fraction = 0;
    std::int64_t params_base = 0;
    std::int64_t params_pruned = 0;
    double compression = 1;
    std::int64_t flops_base = 0;
    std::int64_t flops_pruned = 0;
    double speedup = 1;
    double q_base = 0;  // means over the three stages
    double q_pruned = 0;
    double eff_base = 0;
    double eff_pruned = 0;

    nlohmann::ordered_json to_json() const;
    static SummaryRow from_json(const nlohmann::json& j);
};

struct SeedRun {
    SummaryRow row;
    ConfusionCounts baseline_counts;
    BaselineScores baseline;
    PruneResult search;
    ComplexityReport complexity_base;
    ComplexityReport complexity_pruned;
    std::vector<StructureReport> structure_base;    // per stage
    std::vector<StructureReport> structure_pruned;

    nlohmann::ordered_json to_json() const;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<SeedRun> runs;  // in config.seeds order

    nlohmann::ordered_json to_json() const;
    std::string serialize() const;  // pretty JSON plus trailing newline
    std::string csv() const;
};

extern const char* const kSummaryCsvHeader;
std::string summary_csv_line(const SummaryRow& row);

SeedRun run_seed(const ExperimentConfig& config, std::uint64_t seed);

// Seeds run on up to `jobs` threads, each with its own evaluator. The report
// does not depend on `jobs`.
ExperimentReport run_experiment(const ExperimentConfig& config, int jobs = 1);

} // namespace rwprune
