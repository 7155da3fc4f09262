#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rwprune/analysis.hpp"
#include "rwprune/error.hpp"
#include "rwprune/experiment.hpp"
#include "rwprune/generators.hpp"
#include "rwprune/io.hpp"
#include "rwprune/measures.hpp"
#include "rwprune/summary.hpp"

namespace fs = std::filesystem;
using namespace rwprune;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kEvaluator = 3, kIo = 4 };

struct GeneratorFlags {
    std::string model = "er";
    std::size_t n = 32;
    double p = 0;
    int k = 0;
    int m = 0;
    CLI::Option* model_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* p_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* m_opt = nullptr;

    void add(CLI::App* cmd) {
        model_opt = cmd->add_option("--model", model, "graph model: er, ws or ba")
                        ->check(CLI::IsMember({"er", "ws", "ba"}, CLI::ignore_case));
        n_opt = cmd->add_option("--n", n, "nodes per stage graph");
        p_opt = cmd->add_option("--p", p, "edge (ER) or rewiring (WS) probability");
        k_opt = cmd->add_option("--k", k, "WS ring degree");
        m_opt = cmd->add_option("--m", m, "BA edges per arriving node");
    }

    // Explicitly given flags overwrite `base`; with no base the model's
    // defaults fill the rest.
    GeneratorConfig apply(std::optional<GeneratorConfig> base) const {
        GeneratorConfig c = base ? *base : GeneratorConfig::defaults(parse_generator_kind(model));
        if (model_opt->count() > 0 && parse_generator_kind(model) != c.kind) {
            const auto n_keep = c.n;
            c = GeneratorConfig::defaults(parse_generator_kind(model));
            c.n = n_keep;
        }
        if (n_opt->count() > 0) c.n = n;
        if (p_opt->count() > 0) c.p = p;
        if (k_opt->count() > 0) c.k = k;
        if (m_opt->count() > 0) c.m = m;
        c.validate();
        return c;
    }
};

std::vector<std::uint64_t> seed_range(std::uint64_t start, std::size_t count) {
    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 0; i < count; ++i) seeds.push_back(start + i);
    return seeds;
}

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    return words;
}

void emit(const fs::path& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
    } else {
        if (out.has_parent_path()) ensure_directory(out.parent_path());
        write_text_file(out, text);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Curvature-guided pruning of randomly wired networks"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write seeded stage graphs as JSON");
    GeneratorFlags gen_flags;
    gen_flags.add(gen);
    std::size_t gen_seeds = 1;
    std::uint64_t gen_seed = 0;
    std::string gen_out = ".";
    gen->add_option("--seeds", gen_seeds, "number of graphs")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "first seed");
    gen->add_option("--out", gen_out, "output directory");

    // rank
    auto* rank = app.add_subcommand("rank", "score and rank the edges of a graph file");
    std::string rank_graph;
    std::string rank_measure = "orc";
    std::string rank_direction = "default";
    std::string rank_out;
    rank->add_option("graph", rank_graph, "graph JSON file")->required();
    rank->add_option("--measure", rank_measure, "frc, orc or ebc");
    rank->add_option("--direction", rank_direction, "default or inverted");
    rank->add_option("--out", rank_out, "CSV file (stdout if absent)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "modularity and efficiency of graph files");
    std::vector<std::string> analyze_graphs;
    std::string analyze_out;
    analyze->add_option("graphs", analyze_graphs, "graph JSON files")->required();
    analyze->add_option("--out", analyze_out, "CSV file (stdout if absent)");

    // prune
    auto* prune = app.add_subcommand("prune", "run the pruning experiment");
    GeneratorFlags prune_flags;
    prune_flags.add(prune);
    std::string config_path;
    std::size_t seeds = 10;
    std::uint64_t seed = 0;
    std::string measure = "orc";
    std::string direction = "default";
    std::string evaluator = "surrogate";
    std::string external_cmd;
    int depth = 5;
    int jobs = 1;
    std::string prune_out = "out";
    prune->add_option("--config", config_path, "ExperimentConfig JSON");
    auto* seeds_opt = prune->add_option("--seeds", seeds, "number of seeds")->check(CLI::PositiveNumber);
    auto* seed_opt = prune->add_option("--seed", seed, "first seed");
    auto* measure_opt = prune->add_option("--measure", measure, "frc, orc or ebc");
    auto* direction_opt = prune->add_option("--direction", direction, "default or inverted");
    auto* evaluator_opt = prune->add_option("--evaluator", evaluator, "surrogate or external");
    auto* external_opt = prune->add_option("--external-cmd", external_cmd, "evaluator command line");
    auto* depth_opt = prune->add_option("--depth", depth, "binary search rounds");
    prune->add_option("--jobs", jobs, "seeds evaluated concurrently")->check(CLI::PositiveNumber);
    prune->add_option("--out", prune_out, "output directory");

    // report
    auto* report = app.add_subcommand("report", "aggregate experiment reports");
    std::vector<std::string> report_files;
    std::string report_out;
    report->add_option("reports", report_files, "report.json files")->required();
    report->add_option("--out", report_out, "directory for summary and box-plot CSVs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex);
        return code == 0 ? kOk : kConfig;
    }

    if (gen->parsed()) {
        GeneratorConfig base = gen_flags.apply(std::nullopt);
        ensure_directory(gen_out);
        for (std::uint64_t s : seed_range(gen_seed, gen_seeds)) {
            GeneratorConfig c = base;
            c.seed = s;
            const UndirectedGraph g = generate(c);
            const auto name = fmt::format("{}_n{}_seed{}.json", rwprune::to_string(c.kind), c.n, s);
            write_text_file(fs::path(gen_out) / name, g.serialize());
            std::cout << name << " " << g.edge_count() << " edges\n";
        }
        return kOk;
    }

    if (rank->parsed()) {
        const UndirectedGraph g = UndirectedGraph::from_json(read_json_file(rank_graph));
        const EdgeScoreTable table = edge_scores(g, parse_measure(rank_measure));
        emit(rank_out, scores_csv(table, parse_direction(rank_direction)));
        return kOk;
    }

    if (analyze->parsed()) {
        std::string csv = "graph_id,Q,efficiency,num_communities\n";
        for (const auto& file : analyze_graphs) {
            const StructureReport r = analyze_structure(UndirectedGraph::from_json(read_json_file(file)));
            csv += fmt::format("{},{},{},{}\n", fs::path(file).stem().string(), r.modularity, r.efficiency,
                               r.partition.community_count());
        }
        emit(analyze_out, csv);
        return kOk;
    }

    if (prune->parsed()) {
        ExperimentConfig config;
        std::optional<GeneratorConfig> base;
        if (!config_path.empty()) {
            config = ExperimentConfig::from_json(read_json_file(config_path));
            base = config.generator;
        } else {
            config.seeds = seed_range(0, 10);
        }
        config.generator = prune_flags.apply(base);
        config.arch.node_count = static_cast<int>(config.generator.n);
        if (seeds_opt->count() > 0 || seed_opt->count() > 0 || config_path.empty()) {
            config.seeds = seed_range(seed, seeds);
        }
        if (measure_opt->count() > 0 || config_path.empty()) config.measure = parse_measure(measure);
        if (direction_opt->count() > 0 || config_path.empty()) config.direction = parse_direction(direction);
        if (evaluator_opt->count() > 0) config.evaluator.kind = parse_evaluator_kind(evaluator);
        if (external_opt->count() > 0) {
            config.evaluator.external.argv = split_words(external_cmd);
            if (evaluator_opt->count() == 0) config.evaluator.kind = EvaluatorKind::External;
        }
        if (depth_opt->count() > 0) config.depth = depth;
        config.evaluator.external.arch = config.arch;
        config.validate();

        ensure_directory(prune_out);
        try {
            const ExperimentReport result = run_experiment(config, jobs);
            write_text_file(fs::path(prune_out) / "report.json", result.serialize());
            write_text_file(fs::path(prune_out) / "summary.csv", result.csv());
            std::cout << result.csv();
        } catch (const PruneAborted& ex) {
            auto trace = nlohmann::ordered_json::array();
            for (const auto& step : ex.trace()) trace.push_back(step.to_json());
            nlohmann::ordered_json j{{"error", ex.what()}, {"diagnostics", ex.diagnostics()}, {"trace", trace}};
            write_text_file(fs::path(prune_out) / "aborted.json", j.dump(2) + "\n");
            throw;
        }
        return kOk;
    }

    if (report->parsed()) {
        std::vector<SummaryRow> rows;
        for (const auto& file : report_files) {
            const auto part = report_rows(read_json_file(file));
            rows.insert(rows.end(), part.begin(), part.end());
        }
        const std::string table = summary_table_csv(summarize(rows));
        if (!report_out.empty()) {
            ensure_directory(report_out);
            std::string all = std::string(kSummaryCsvHeader) + "\n";
            for (const auto& r : rows) all += summary_csv_line(r) + "\n";
            write_text_file(fs::path(report_out) / "rows.csv", all);
            write_text_file(fs::path(report_out) / "summary.csv", table);
            write_text_file(fs::path(report_out) / "boxplot.csv", boxplot_csv(rows));
        }
        std::cout << table;
        return kOk;
    }
    return kConfig;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kConfig;
    } catch (const ContractViolation& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kConfig;
    } catch (const PruneAborted& ex) {
        std::cerr << "evaluator error: " << ex.what() << "\n";
        if (!ex.diagnostics().empty()) std::cerr << ex.diagnostics() << "\n";
        return kEvaluator;
    } catch (const EvaluationError& ex) {
        std::cerr << "evaluator error: " << ex.what() << "\n";
        if (!ex.diagnostics().empty()) std::cerr << ex.diagnostics() << "\n";
        return kEvaluator;
    } catch (const IoError& ex) {
        std::cerr << "i/o error: " << ex.what() << "\n";
        return kIo;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kFailure;
    }
}
