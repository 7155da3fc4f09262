#include "rwprune/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "rwprune/generators.hpp"

namespace rwprune {

std::string to_string(EvaluatorKind kind) { return kind == EvaluatorKind::Surrogate ? "surrogate" : "external"; }

EvaluatorKind parse_evaluator_kind(const std::string& text) {
    if (text == "surrogate") return EvaluatorKind::Surrogate;
    if (text == "external") return EvaluatorKind::External;
    throw ConfigError(fmt::format("unknown evaluator kind '{}'", text));
}

nlohmann::ordered_json EvaluatorConfig::to_json() const {
    if (kind == EvaluatorKind::External) return external.to_json();
    nlohmann::ordered_json j;
    j["kind"] = "surrogate";
    const auto params = surrogate.to_json();
    for (auto it = params.begin(); it != params.end(); ++it) j[it.key()] = it.value();
    return j;
}

EvaluatorConfig EvaluatorConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("evaluator must be an object");
    EvaluatorConfig c;
    c.kind = parse_evaluator_kind(j.value("kind", std::string("surrogate")));
    if (c.kind == EvaluatorKind::Surrogate) {
        c.surrogate = SurrogateParams::from_json(j);
    } else {
        c.external = ExternalEvaluatorConfig::from_json(j);
    }
    return c;
}

void ExperimentConfig::validate() const {
    generator.validate();
    if (seeds.empty()) throw ConfigError("experiment needs at least one seed");
    if (depth < 1 || depth > 30) throw ConfigError(fmt::format("search depth {} outside [1, 30]", depth));
    if (static_cast<std::size_t>(arch.node_count) != generator.n) {
        throw ConfigError(fmt::format("architecture N={} does not match generator n={}", arch.node_count, generator.n));
    }
    if (evaluator.kind == EvaluatorKind::External && evaluator.external.argv.empty()) {
        throw ConfigError("external evaluator needs a command");
    }
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    auto gen = generator.to_json();
    gen.erase("seed");
    j["generator"] = std::move(gen);
    j["measure"] = to_string(measure);
    j["direction"] = to_string(direction);
    j["evaluator"] = evaluator.to_json();
    j["seeds"] = seeds;
    j["depth"] = depth;
    j["arch"] = arch.to_json();
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
    static const std::vector<std::string> known{"generator", "measure", "direction", "evaluator", "seeds", "depth", "arch"};
    for (const auto& item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw ConfigError(fmt::format("unknown config key '{}'", item.key()));
        }
    }
    ExperimentConfig c;
    try {
        c.generator = GeneratorConfig::from_json(j.at("generator"));
        c.measure = parse_measure(j.at("measure").get<std::string>());
        c.direction = parse_direction(j.value("direction", std::string("default")));
        if (j.contains("evaluator")) c.evaluator = EvaluatorConfig::from_json(j["evaluator"]);
        c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        c.depth = j.value("depth", c.depth);
        c.arch.node_count = static_cast<int>(c.generator.n);
        if (j.contains("arch")) {
            nlohmann::json a = j["arch"];
            if (!a.contains("N")) a["N"] = c.arch.node_count;
            c.arch = ArchitectureSpec::from_json(a);
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(fmt::format("bad experiment config: {}", ex.what()));
    }
    c.evaluator.external.arch = c.arch;
    c.validate();
    return c;
}

StagedNetwork generate_network(const GeneratorConfig& generator, std::uint64_t seed) {
    std::vector<UndirectedGraph> stages;
    for (std::uint64_t s = 0; s < 3; ++s) {
        GeneratorConfig g = generator;
        g.seed = seed + s;
        stages.push_back(generate(g));
    }
    return StagedNetwork::build(std::move(stages));
}

nlohmann::ordered_json SummaryRow::to_json() const {
    nlohmann::ordered_json j;
    j["class"] = generator;
    j["seed"] = seed;
    j["measure"] = measure;
    j["best_fraction"] = best_fraction;
    j["params_base"] = params_base;
    j["params_pruned"] = params_pruned;
    j["compression"] = compression;
    j["flops_base"] = flops_base;
    j["flops_pruned"] = flops_pruned;
    j["speedup"] = speedup;
    j["Q_base"] = q_base;
    j["Q_pruned"] = q_pruned;
    j["eff_base"] = eff_base;
    j["eff_pruned"] = eff_pruned;
    return j;
}

SummaryRow SummaryRow::from_json(const nlohmann::json& j) {
    try {
        SummaryRow r;
        r.generator = j.at("class").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.measure = j.at("measure").get<std::string>();
        r.best_fraction = j.at("best_fraction").get<double>();
        r.params_base = j.at("params_base").get<std::int64_t>();
        r.params_pruned = j.at("params_pruned").get<std::int64_t>();
        r.compression = j.at("compression").get<double>();
        r.flops_base = j.at("flops_base").get<std::int64_t>();
        r.flops_pruned = j.at("flops_pruned").get<std::int64_t>();
        r.speedup = j.at("speedup").get<double>();
        r.q_base = j.at("Q_base").get<double>();
        r.q_pruned = j.at("Q_pruned").get<double>();
        r.eff_base = j.at("eff_base").get<double>();
        r.eff_pruned = j.at("eff_pruned").get<double>();
        return r;
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(fmt::format("malformed report row: {}", ex.what()));
    }
}

const char* const kSummaryCsvHeader =
    "class,seed,measure,best_fraction,params_base,params_pruned,compression,flops_base,flops_pruned,speedup,"
    "Q_base,Q_pruned,eff_base,eff_pruned";

std::string summary_csv_line(const SummaryRow& r) {
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.generator, r.seed, r.measure, r.best_fraction,
                       r.params_base, r.params_pruned, r.compression, r.flops_base, r.flops_pruned, r.speedup, r.q_base,
                       r.q_pruned, r.eff_base, r.eff_pruned);
}

namespace {

nlohmann::ordered_json counts_json(const ConfusionCounts& c) {
    return {{"tp", c.tp}, {"tn", c.tn}, {"fp", c.fp}, {"fn", c.fn}};
}

nlohmann::ordered_json edges_json(const std::vector<std::vector<Edge>>& stages) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& stage : stages) {
        auto list = nlohmann::ordered_json::array();
        for (const Edge& e : stage) list.push_back({e.u, e.v});
        out.push_back(std::move(list));
    }
    return out;
}

nlohmann::ordered_json structure_json(const std::vector<StructureReport>& reports) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& r : reports) out.push_back(r.to_json());
    return out;
}

std::vector<StructureReport> analyze_stages(const StagedNetwork& net) {
    std::vector<StructureReport> out;
    for (const auto& g : net.stages) out.push_back(analyze_structure(g));
    return out;
}

double mean_of(const std::vector<StructureReport>& reports, double StructureReport::*field) {
    double sum = 0;
    for (const auto& r : reports) sum += r.*field;
    return reports.empty() ? 0.0 : sum / static_cast<double>(reports.size());
}

std::unique_ptr<Evaluator> make_evaluator(const EvaluatorConfig& config, const StagedNetwork& original) {
    if (config.kind == EvaluatorKind::Surrogate) return std::make_unique<SurrogateEvaluator>(config.surrogate, original);
    return std::make_unique<ExternalEvaluator>(config.external);
}

template <class E>
[[noreturn]] void rethrow_as(const E& ex, const std::string& context) {
    throw E(context + ": " + ex.what());
}

} // namespace

nlohmann::ordered_json SeedRun::to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = row.seed;
    j["baseline"] = {{"counts", counts_json(baseline_counts)}, {"metrics", metrics_from_confusion(baseline_counts).to_json()}};
    auto trace = nlohmann::ordered_json::array();
    for (const auto& step : search.trace) trace.push_back(step.to_json());
    j["search"] = {{"best_fraction", search.best_fraction},
                   {"best_scores", search.best_scores.to_json()},
                   {"trace", std::move(trace)},
                   {"retained_edges", edges_json(search.retained_edges())}};
    j["complexity"] = {{"base", complexity_base.to_json()}, {"pruned", complexity_pruned.to_json()}};
    j["compression"] = row.compression;
    j["speedup"] = row.speedup;
    j["structure"] = {{"base", structure_json(structure_base)}, {"pruned", structure_json(structure_pruned)}};
    return j;
}

nlohmann::ordered_json ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["config"] = config.to_json();
    auto rows = nlohmann::ordered_json::array();
    auto detail = nlohmann::ordered_json::array();
    for (const auto& run : runs) {
        rows.push_back(run.row.to_json());
        detail.push_back(run.to_json());
    }
    j["rows"] = std::move(rows);
    j["runs"] = std::move(detail);
    return j;
}

std::string ExperimentReport::serialize() const { return to_json().dump(2) + "\n"; }

std::string ExperimentReport::csv() const {
    std::string out = std::string(kSummaryCsvHeader) + "\n";
    for (const auto& run : runs) out += summary_csv_line(run.row) + "\n";
    return out;
}

SeedRun run_seed(const ExperimentConfig& config, std::uint64_t seed) {
    const std::string context = fmt::format("seed {}", seed);
    try {
        SeedRun run;
        const StagedNetwork original = generate_network(config.generator, seed);
        auto evaluator = make_evaluator(config.evaluator, original);

        // Baseline before any measure is looked at.
        const EvalResponse base = evaluator->evaluate(original, seed);
        run.baseline_counts = base.counts;
        run.baseline = BaselineScores::from_counts(base.counts);

        SearchOptions options;
        options.depth = config.depth;
        options.init_seed = seed;
        run.search = binary_search_prune(original, config.measure, config.direction, *evaluator, run.baseline, options);

        run.complexity_base = count_complexity(original.dags, config.arch);
        run.complexity_pruned = count_complexity(run.search.best.dags, config.arch);
        run.structure_base = analyze_stages(original);
        run.structure_pruned = analyze_stages(run.search.best);

        SummaryRow& r = run.row;
        r.generator = to_string(config.generator.kind);
        std::transform(r.generator.begin(), r.generator.end(), r.generator.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
        r.seed = seed;
        r.measure = to_string(config.measure);
        r.best_fraction = run.search.best_fraction;
        r.params_base = run.complexity_base.parameters;
        r.params_pruned = run.complexity_pruned.parameters;
        r.compression = compression_ratio(run.complexity_base, run.complexity_pruned);
        r.flops_base = run.complexity_base.flops;
        r.flops_pruned = run.complexity_pruned.flops;
        r.speedup = theoretical_speedup(run.complexity_base, run.complexity_pruned);
        r.q_base = mean_of(run.structure_base, &StructureReport::modularity);
        r.q_pruned = mean_of(run.structure_pruned, &StructureReport::modularity);
        r.eff_base = mean_of(run.structure_base, &StructureReport::efficiency);
        r.eff_pruned = mean_of(run.structure_pruned, &StructureReport::efficiency);
        return run;
    } catch (const PruneAborted& ex) {
        throw PruneAborted(context + ": " + ex.what(), ex.trace(), ex.diagnostics());
    } catch (const EvaluationError& ex) {
        throw EvaluationError(context + ": " + ex.what(), ex.diagnostics());
    } catch (const ConfigError& ex) {
        rethrow_as(ex, context);
    } catch (const UndefinedMetricError& ex) {
        rethrow_as(ex, context);
    } catch (const DegenerateNetworkError& ex) {
        rethrow_as(ex, context);
    }
}

ExperimentReport run_experiment(const ExperimentConfig& config, int jobs) {
    config.validate();
    ExperimentReport report;
    report.config = config;
    const std::size_t count = config.seeds.size();
    report.runs.resize(count);

    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                report.runs[i] = run_seed(config, config.seeds[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const auto threads = static_cast<std::size_t>(std::clamp(jobs, 1, 64));
    if (threads == 1 || count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    // Report the failure of the earliest seed, whatever order they finished in.
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return report;
}

} // namespace rwprune
