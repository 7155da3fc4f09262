#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "rwprune/error.hpp"
#include "rwprune/measures.hpp"

using namespace rwprune;

namespace {

UndirectedGraph p3() { return UndirectedGraph(3, {{0, 1}, {1, 2}}); }
UndirectedGraph star3() { return UndirectedGraph(4, {{0, 1}, {0, 2}, {0, 3}}); }
UndirectedGraph c4() { return UndirectedGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
UndirectedGraph k3() { return UndirectedGraph(3, {{0, 1}, {0, 2}, {1, 2}}); }
UndirectedGraph k4() { return UndirectedGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// Triangles {0,1,2} and {3,4,5} joined by the bridge (2,3).
UndirectedGraph bridged_triangles() {
    return UndirectedGraph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
}

} // namespace

TEST_CASE("EBC small cases") {
    CHECK(ebc(p3()).score({0, 1}) == doctest::Approx(2.0));
    CHECK(ebc(star3()).score({0, 1}) == doctest::Approx(3.0));
    // Four adjacent pairs plus two antipodal pairs split over two routes.
    for (const Edge& e : c4().edges()) CHECK(ebc(c4()).score(e) == doctest::Approx(2.0));
    CHECK(ebc(bridged_triangles()).score({2, 3}) == doctest::Approx(9.0));
}

TEST_CASE("EBC matches shortest path enumeration on the small family") {
    const auto family = oracle::small_family(250, 7);
    std::size_t edges = 0;
    for (const auto& g : family) {
        const auto table = ebc(g);
        const auto expected = oracle::edge_betweenness(g);
        for (const Edge& e : g.edges()) {
            CHECK(std::abs(table.score(e) - expected.at(e).to_double()) <= 1e-9);
            ++edges;
        }
    }
    CHECK(edges >= 500);
}

TEST_CASE("per-pair path fractions sum to the pair distance") {
    for (const auto& g : oracle::small_family(60, 99)) {
        const auto pc = oracle::enumerate_shortest_paths(g);
        for (const auto& [pair, sigma] : pc.sigma) {
            Rational sum(0);
            for (const auto& [e, count] : pc.sigma_through.at(pair)) sum = sum + Rational(count, sigma);
            CHECK(sum == Rational(pc.distance.at(pair)));
        }
        double total = 0;
        for (double s : ebc(g).scores) total += s;
        std::int64_t distances = 0;
        for (const auto& [pair, dist] : pc.distance) distances += dist;
        CHECK(total == doctest::Approx(static_cast<double>(distances)));
    }
}

TEST_CASE("FRC closed form") {
    CHECK(frc(UndirectedGraph(2, {{0, 1}}), {0, 1}) == 2);
    for (const Edge& e : k4().edges()) CHECK(frc(k4(), e) == -2);
    CHECK(frc(p3(), {0, 1}) == 1);
    CHECK_THROWS_AS(frc(p3(), {0, 2}), ContractViolation);
}

TEST_CASE("weighted FRC reduces to the closed form under unit weights") {
    for (const auto& g : oracle::small_family(250, 7)) {
        const auto w = NodeEdgeWeights::unit(g);
        for (const Edge& e : g.edges()) CHECK(frc_weighted(g, e, w) == static_cast<double>(frc(g, e)));
    }
}

TEST_CASE("weighted FRC uses the weights") {
    // Path 0-1-2 with w_1 = 2, w_(1,2) = 4; edge (0,1) of weight 1:
    // 1 * (1/1 + 2/1 - 2/sqrt(1*4)) = 2
    const UndirectedGraph g = p3();
    NodeEdgeWeights w = NodeEdgeWeights::unit(g);
    w.node[1] = 2;
    w.edge[{1, 2}] = 4;
    CHECK(frc_weighted(g, {0, 1}, w) == doctest::Approx(2.0));
    w.node.erase(0);
    CHECK_THROWS_AS(frc_weighted(g, {0, 1}, w), ContractViolation);
}

TEST_CASE("ORC canonical values") {
    CHECK(orc_exact(k3(), {0, 1}) == Rational(1, 2));
    CHECK(orc_exact(c4(), {0, 1}) == Rational(0));
    CHECK(orc_exact(p3(), {0, 1}) == Rational(0));
    CHECK(orc_exact(bridged_triangles(), {2, 3}) == Rational(-2, 3));
    CHECK(oracle::orc(k3(), {0, 1}) == Rational(1, 2));
    CHECK(oracle::orc(c4(), {0, 1}) == Rational(0));
    CHECK(oracle::orc(p3(), {0, 1}) == Rational(0));
    CHECK(oracle::orc(bridged_triangles(), {2, 3}) == Rational(-2, 3));
    CHECK(orc(k3(), {0, 1}) == doctest::Approx(0.5));
}

TEST_CASE("ORC matches the transport oracle and stays in range") {
    std::size_t edges = 0;
    for (const auto& g : oracle::small_family(250, 7)) {
        for (const Edge& e : g.edges()) {
            const Rational value = orc_exact(g, e);
            CHECK(value == oracle::orc(g, e));
            CHECK(value >= Rational(-2));
            CHECK(value <= Rational(1));
            ++edges;
        }
    }
    CHECK(edges >= 500);
}

TEST_CASE("ranking direction and tie-break") {
    SUBCASE("EBC ties on P3 fall back to the smaller pair") {
        CHECK(rank_edges(p3(), MeasureKind::EBC) == std::vector<Edge>{{0, 1}, {1, 2}});
    }
    SUBCASE("ORC puts the bridge first") {
        CHECK(rank_edges(bridged_triangles(), MeasureKind::ORC).front() == Edge{2, 3});
    }
    SUBCASE("EBC puts the bridge first too") {
        CHECK(rank_edges(bridged_triangles(), MeasureKind::EBC).front() == Edge{2, 3});
    }
    SUBCASE("FRC star spokes tie") {
        CHECK(rank_edges(star3(), MeasureKind::FRC) == std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
    }
    SUBCASE("inverted flips scores but keeps the tie-break") {
        const auto table = edge_scores(bridged_triangles(), MeasureKind::ORC);
        const auto inv = rank_edges(table, RankDirection::Inverted);
        REQUIRE(inv.size() == table.edges.size());
        for (std::size_t i = 1; i < inv.size(); ++i) {
            const double a = table.score(inv[i - 1]);
            const double b = table.score(inv[i]);
            CHECK(a >= b);
            if (a == b) CHECK(inv[i - 1] < inv[i]);
        }
        CHECK(inv.back() == Edge{2, 3});
    }
    SUBCASE("repeated calls agree") {
        const auto g = oracle::small_family(1, 3).front();
        CHECK(rank_edges(g, MeasureKind::ORC) == rank_edges(g, MeasureKind::ORC));
    }
}

TEST_CASE("score CSV") {
    const std::string csv = scores_csv(ebc(p3()));
    CHECK(csv == "edge_u,edge_v,measure,score,rank\n0,1,EBC,2,1\n1,2,EBC,2,2\n");
    const std::string orc_csv = scores_csv(edge_scores(bridged_triangles(), MeasureKind::ORC));
    std::istringstream lines(orc_csv);
    std::string header, first_row;
    std::getline(lines, header);
    std::getline(lines, first_row);
    CHECK(first_row.rfind("2,3,ORC,", 0) == 0);
    CHECK(first_row.substr(first_row.size() - 2) == ",1");
}

TEST_CASE("measure names parse") {
    CHECK(parse_measure("orc") == MeasureKind::ORC);
    CHECK(parse_measure("EBC") == MeasureKind::EBC);
    CHECK_THROWS_AS(parse_measure("xyz"), ConfigError);
    CHECK(parse_direction("inverted") == RankDirection::Inverted);
    CHECK_THROWS_AS(parse_direction("up"), ConfigError);
}
