#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "rwprune/graph.hpp"
#include "rwprune/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(RWPRUNE_CLI) + " " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "rwprune_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t edges_in(const fs::path& file) {
    return rwprune::UndirectedGraph::from_json(rwprune::read_json_file(file)).edge_count();
}

} // namespace

TEST_CASE("generate writes one file per seed") {
    const auto dir = scratch("ws");
    const auto r = run("generate --model ws --n 32 --k 4 --p 0.75 --seeds 10 --out " + dir.string());
    REQUIRE(r.code == 0);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        CHECK(edges_in(entry.path()) == 64);
        ++files;
    }
    CHECK(files == 10);
}

TEST_CASE("generate edge counts for ER and BA") {
    const auto dir = scratch("er_ba");
    REQUIRE(run("generate --model er --p 1.0 --out " + dir.string()).code == 0);
    CHECK(edges_in(dir / "er_n32_seed0.json") == 496);
    REQUIRE(run("generate --model ba --m 5 --out " + dir.string()).code == 0);
    CHECK(edges_in(dir / "ba_n32_seed0.json") == 135);
}

TEST_CASE("generate is idempotent") {
    const auto a = scratch("idem_a");
    const auto b = scratch("idem_b");
    REQUIRE(run("generate --model ba --seeds 3 --seed 5 --out " + a.string()).code == 0);
    REQUIRE(run("generate --model ba --seeds 3 --seed 5 --out " + b.string()).code == 0);
    for (const auto& entry : fs::directory_iterator(a)) {
        CHECK(rwprune::read_text_file(entry.path()) == rwprune::read_text_file(b / entry.path().filename()));
    }
}

TEST_CASE("rank prints the score table") {
    const auto dir = scratch("rank");
    const auto graph = dir / "p3.json";
    rwprune::write_text_file(graph, rwprune::UndirectedGraph(3, {{0, 1}, {1, 2}}).serialize());
    const auto r = run("rank " + graph.string() + " --measure ebc");
    CHECK(r.code == 0);
    CHECK(r.out == "edge_u,edge_v,measure,score,rank\n0,1,EBC,2,1\n1,2,EBC,2,2\n");
}

TEST_CASE("prune, rerun and report") {
    const auto a = scratch("prune_a");
    const auto b = scratch("prune_b");
    const std::string flags = "prune --model er --measure orc --seeds 4 --seed 3 ";
    REQUIRE(run(flags + "--out " + a.string()).code == 0);
    REQUIRE(run(flags + "--jobs 2 --out " + b.string()).code == 0);
    CHECK(rwprune::read_text_file(a / "report.json") == rwprune::read_text_file(b / "report.json"));
    CHECK(rwprune::read_text_file(a / "summary.csv") == rwprune::read_text_file(b / "summary.csv"));

    const auto out = scratch("report");
    const auto r = run("report " + (a / "report.json").string() + " --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("\nER,ORC,4,") != std::string::npos);
    CHECK(fs::exists(out / "boxplot.csv"));
    CHECK(fs::exists(out / "rows.csv"));
}

TEST_CASE("config file and flag precedence") {
    const auto dir = scratch("config");
    const auto config = dir / "config.json";
    rwprune::write_text_file(config, R"({"generator":{"kind":"WS"},"measure":"ORC","seeds":[4],"depth":5,
        "evaluator":{"kind":"surrogate","tau":0.0}})");
    REQUIRE(run("prune --config " + config.string() + " --out " + dir.string()).code == 0);
    auto report = rwprune::read_json_file(dir / "report.json");
    CHECK(report["rows"][0]["best_fraction"] == 96.875);
    CHECK(report["rows"][0]["class"] == "WS");

    REQUIRE(run("prune --config " + config.string() + " --depth 3 --measure frc --out " + dir.string()).code == 0);
    report = rwprune::read_json_file(dir / "report.json");
    CHECK(report["runs"][0]["search"]["trace"].size() == 3);
    CHECK(report["rows"][0]["measure"] == "FRC");
    CHECK(report["rows"][0]["best_fraction"] == 87.5);
    CHECK(report["rows"][0]["seed"] == 4);
}

TEST_CASE("external evaluator through the CLI") {
    const auto dir = scratch("external");
    const std::string cmd = std::string(MOCK_EVALUATOR) + " --replay " + FIXTURE_DIR + "/er_seed3_frc.jsonl";
    const auto r = run("prune --model er --measure frc --seeds 1 --seed 3 --external-cmd '" + cmd + "' --out " +
                       dir.string());
    REQUIRE(r.code == 0);
    const auto report = rwprune::read_json_file(dir / "report.json");
    CHECK(report["rows"][0]["best_fraction"] == 56.25);
    CHECK(report["runs"][0]["search"]["best_scores"]["counts"]["tp"] == 91);
}

TEST_CASE("exit codes") {
    const auto dir = scratch("codes");
    CHECK(run("generate --model xx").code == 2);
    CHECK(run("generate --model ws --k 3 --out " + dir.string()).code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("rank /nonexistent/graph.json").code == 4);
    const auto bad = dir / "bad.json";
    rwprune::write_text_file(bad, "{not json");
    CHECK(run("prune --config " + bad.string() + " --out " + dir.string()).code == 2);
    const std::string crash = std::string(MOCK_EVALUATOR) + " --exit 1";
    CHECK(run("prune --model ws --seeds 1 --external-cmd '" + crash + "' --out " + dir.string()).code == 3);
    CHECK(run("prune --model ws --seeds 1 --external-cmd '" + std::string(MOCK_EVALUATOR) +
              " --fail-after 2' --out " + dir.string())
              .code == 3);
    CHECK(fs::exists(dir / "aborted.json"));
    CHECK(run("prune --model ws --seeds 1 --out /proc/forbidden/out").code == 4);
}
