#include <doctest.h>

#include "rwprune/error.hpp"
#include "rwprune/experiment.hpp"
#include "rwprune/generators.hpp"

using namespace rwprune;

namespace {

ExperimentConfig config(GeneratorKind kind, MeasureKind measure, std::vector<std::uint64_t> seeds) {
    ExperimentConfig c;
    c.generator = GeneratorConfig::defaults(kind);
    c.measure = measure;
    c.seeds = std::move(seeds);
    return c;
}

} // namespace

TEST_CASE("config JSON round trip") {
    const auto j = nlohmann::json::parse(R"({
        "generator": {"kind": "WS", "n": 32, "k": 4, "p": 0.75},
        "measure": "FRC", "direction": "inverted",
        "evaluator": {"kind": "surrogate", "tau": 0.5},
        "seeds": [3, 16], "depth": 4})");
    const auto c = ExperimentConfig::from_json(j);
    CHECK(c.generator.kind == GeneratorKind::WS);
    CHECK(c.measure == MeasureKind::FRC);
    CHECK(c.direction == RankDirection::Inverted);
    CHECK(c.evaluator.surrogate.tau == 0.5);
    CHECK(c.seeds == std::vector<std::uint64_t>{3, 16});
    CHECK(c.depth == 4);
    const auto again = ExperimentConfig::from_json(nlohmann::json::parse(c.to_json().dump()));
    CHECK(again.to_json() == c.to_json());
}

TEST_CASE("config validation") {
    auto bad = [](const char* text) { return ExperimentConfig::from_json(nlohmann::json::parse(text)); };
    CHECK_THROWS_AS(bad(R"({"generator":{"kind":"ER"},"measure":"ORC","seeds":[]})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"generator":{"kind":"ER"},"measure":"XYZ","seeds":[1]})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"generator":{"kind":"ER"},"measure":"ORC","seeds":[1],"sedes":[2]})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"generator":{"kind":"ER","p":2},"measure":"ORC","seeds":[1]})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"generator":{"kind":"ER"},"measure":"ORC","seeds":[1],"depth":0})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"generator":{"kind":"ER"},"measure":"ORC","seeds":[1],"evaluator":{"kind":"external"}})"),
                    ConfigError);
    CHECK_THROWS_AS(bad(R"({"generator":{"kind":"ER"},"measure":"ORC","seeds":[1],"evaluator":{"kind":"gpu"}})"),
                    ConfigError);
    CHECK_THROWS_AS(bad("[]"), ConfigError);
}

TEST_CASE("stage graphs use consecutive seeds") {
    const auto net = generate_network(GeneratorConfig::defaults(GeneratorKind::ER), 10);
    REQUIRE(net.stages.size() == 3);
    for (std::uint64_t s = 0; s < 3; ++s) {
        auto c = GeneratorConfig::defaults(GeneratorKind::ER, 10 + s);
        CHECK(net.stages[s] == generate(c));
    }
}

TEST_CASE("ten-seed batch yields ten rows with compression >= 1") {
    const auto report = run_experiment(config(GeneratorKind::ER, MeasureKind::ORC,
                                              {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
    REQUIRE(report.runs.size() == 10);
    for (const auto& run : report.runs) {
        CHECK(run.row.compression >= 1.0);
        CHECK(run.row.speedup >= 1.0);
        CHECK(run.row.params_pruned <= run.row.params_base);
        CHECK(run.search.trace.size() == 5);
        CHECK(run.row.generator == "ER");
        CHECK(run.row.measure == "ORC");
    }
    const auto csv = report.csv();
    CHECK(csv.rfind(kSummaryCsvHeader, 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}

TEST_CASE("baseline does not depend on the measure") {
    const auto a = run_experiment(config(GeneratorKind::BA, MeasureKind::FRC, {5, 6}));
    const auto b = run_experiment(config(GeneratorKind::BA, MeasureKind::ORC, {5, 6}));
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a.runs[i].baseline_counts == b.runs[i].baseline_counts);
        CHECK(a.runs[i].complexity_base.parameters == b.runs[i].complexity_base.parameters);
        CHECK(a.runs[i].row.q_base == b.runs[i].row.q_base);
    }
}

TEST_CASE("reports do not depend on the thread count") {
    const auto c = config(GeneratorKind::WS, MeasureKind::EBC, {1, 2, 3, 4, 5});
    const auto one = run_experiment(c, 1).serialize();
    CHECK(run_experiment(c, 3).serialize() == one);
    CHECK(run_experiment(c, 1).serialize() == one);
}

TEST_CASE("always-pass surrogate prunes to 96.875") {
    auto c = config(GeneratorKind::WS, MeasureKind::ORC, {4});
    c.evaluator.surrogate.tau = 0.0;
    const auto report = run_experiment(c);
    CHECK(report.runs[0].row.best_fraction == 96.875);
    CHECK(report.runs[0].row.compression > 1.0);
}

TEST_CASE("summary row JSON round trip") {
    const auto report = run_experiment(config(GeneratorKind::ER, MeasureKind::FRC, {2}));
    const auto row = report.runs[0].row;
    const auto back = SummaryRow::from_json(nlohmann::json::parse(row.to_json().dump()));
    CHECK(summary_csv_line(back) == summary_csv_line(row));
    CHECK_THROWS_AS(SummaryRow::from_json(nlohmann::json::parse("{}")), ConfigError);
}

TEST_CASE("report JSON carries the pieces of a run") {
    const auto report = run_experiment(config(GeneratorKind::ER, MeasureKind::EBC, {8}));
    const auto j = nlohmann::json::parse(report.serialize());
    CHECK(j["config"]["measure"] == "EBC");
    CHECK(j["rows"].size() == 1);
    const auto& run = j["runs"][0];
    CHECK(run["baseline"]["counts"]["tp"] == 90);
    CHECK(run["search"]["trace"].size() == 5);
    CHECK(run["search"]["retained_edges"].size() == 3);
    CHECK(run["complexity"]["base"]["stages"].size() == 6);
    CHECK(run["structure"]["pruned"].size() == 3);
}
