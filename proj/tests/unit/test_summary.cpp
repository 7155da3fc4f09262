#include <doctest.h>

#include "rwprune/error.hpp"
#include "rwprune/summary.hpp"

using namespace rwprune;

namespace {

SummaryRow row(const char* cls, const char* measure, std::uint64_t seed, double compression) {
    SummaryRow r;
    r.generator = cls;
    r.measure = measure;
    r.seed = seed;
    r.params_base = 1000;
    r.params_pruned = static_cast<std::int64_t>(1000 / compression);
    r.compression = compression;
    r.speedup = 1.0;
    return r;
}

} // namespace

TEST_CASE("quantiles of a hand-sorted set") {
    // Sorted: 1 2.5 3 4 4 6 7 9 12 15; positions 2.25, 4.5, 6.75.
    const auto q = quantiles({2.5, 7, 1, 12, 4, 4, 9, 3, 15, 6});
    CHECK(q.min == 1.0);
    CHECK(q.q1 == doctest::Approx(3.25));
    CHECK(q.median == doctest::Approx(5.0));
    CHECK(q.q3 == doctest::Approx(8.5));
    CHECK(q.max == 15.0);
    const auto one = quantiles({4});
    CHECK(one.q1 == 4.0);
    CHECK(one.max == 4.0);
    CHECK_THROWS_AS(quantiles({}), ContractViolation);
}

TEST_CASE("mean and max") {
    const auto s = mean_max({2.5, 7, 1, 12, 4, 4, 9, 3, 15, 6});
    CHECK(s.mean == doctest::Approx(6.35));
    CHECK(s.max == 15.0);
}

TEST_CASE("cells group by class and measure in first-seen order") {
    std::vector<SummaryRow> rows{row("WS", "ORC", 1, 2.0), row("ER", "ORC", 1, 1.0), row("WS", "ORC", 2, 4.0),
                                 row("WS", "FRC", 1, 1.5)};
    const auto cells = summarize(rows);
    REQUIRE(cells.size() == 3);
    CHECK(cells[0].generator == "WS");
    CHECK(cells[0].measure == "ORC");
    CHECK(cells[0].seeds == 2);
    CHECK(cells[0].compression.mean == doctest::Approx(3.0));
    CHECK(cells[0].compression.max == doctest::Approx(4.0));
    CHECK(cells[1].generator == "ER");
    CHECK(cells[2].measure == "FRC");
    const auto csv = summary_table_csv(cells);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find("\nWS,ORC,2,") != std::string::npos);
}

TEST_CASE("compression column is params_base / params_pruned") {
    const auto r = row("BA", "EBC", 1, 1.25);
    CHECK(static_cast<double>(r.params_base) / static_cast<double>(r.params_pruned) == doctest::Approx(r.compression));
}

TEST_CASE("box plot CSV") {
    std::vector<SummaryRow> rows;
    const std::vector<double> values{2.5, 7, 1, 12, 4, 4, 9, 3, 15, 6};
    for (std::size_t i = 0; i < values.size(); ++i) rows.push_back(row("ER", "ORC", i, values[i]));
    const auto csv = boxplot_csv(rows);
    CHECK(csv.rfind("class,measure,metric,min,q1,median,q3,max\n", 0) == 0);
    CHECK(csv.find("ER,ORC,compression,1,3.25,5,8.5,15\n") != std::string::npos);
}

TEST_CASE("report rows") {
    nlohmann::json report;
    report["rows"] = nlohmann::json::array({nlohmann::json::parse(row("ER", "ORC", 3, 2.0).to_json().dump())});
    const auto rows = report_rows(report);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].seed == 3);
    CHECK_THROWS_AS(report_rows(nlohmann::json::object()), ConfigError);
}
