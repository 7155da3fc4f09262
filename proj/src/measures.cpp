#include "rwprune/measures.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include <fmt/format.h>

#include "rwprune/error.hpp"
#include "rwprune/transport.hpp"

namespace rwprune {

std::string to_string(MeasureKind kind) {
    switch (kind) {
    case MeasureKind::EBC: return "EBC";
    case MeasureKind::ORC: return "ORC";
    case MeasureKind::FRC: return "FRC";
    }
    return "?";
}

MeasureKind parse_measure(const std::string& text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "EBC") return MeasureKind::EBC;
    if (upper == "ORC") return MeasureKind::ORC;
    if (upper == "FRC") return MeasureKind::FRC;
    throw ConfigError(fmt::format("unknown edge measure '{}' (expected frc, orc or ebc)", text));
}

std::string to_string(RankDirection direction) {
    return direction == RankDirection::Default ? "default" : "inverted";
}

RankDirection parse_direction(const std::string& text) {
    if (text == "default") return RankDirection::Default;
    if (text == "inverted") return RankDirection::Inverted;
    throw ConfigError(fmt::format("unknown ranking direction '{}' (expected default or inverted)", text));
}

double EdgeScoreTable::score(Edge e) const {
    e = Edge::canonical(e.u, e.v);
    const auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) {
        throw ContractViolation(fmt::format("edge ({},{}) has no score", e.u, e.v));
    }
    return scores[static_cast<std::size_t>(it - edges.begin())];
}

namespace {

std::size_t edge_index(const UndirectedGraph& g, Edge e) {
    e = Edge::canonical(e.u, e.v);
    const auto& edges = g.edges();
    const auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) {
        throw ContractViolation(fmt::format("edge ({},{}) is not in the graph", e.u, e.v));
    }
    return static_cast<std::size_t>(it - edges.begin());
}

} // namespace

EdgeScoreTable ebc(const UndirectedGraph& g) {
    const std::size_t n = g.label_count();
    std::vector<double> credit(g.edge_count(), 0.0);

    std::vector<double> sigma(n), delta(n);
    std::vector<int> dist(n);
    std::vector<std::vector<NodeId>> preds(n);
    std::vector<NodeId> order;
    for (NodeId s : g.nodes()) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1);
        for (auto& p : preds) p.clear();
        order.clear();

        sigma[s] = 1.0;
        dist[s] = 0;
        std::deque<NodeId> queue{s};
        while (!queue.empty()) {
            const NodeId v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (NodeId w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        // Dependency accumulation in reverse BFS order.
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const NodeId w = *it;
            for (NodeId v : preds[w]) {
                const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                credit[edge_index(g, Edge::canonical(v, w))] += c;
                delta[v] += c;
            }
        }
    }

    EdgeScoreTable table;
    table.measure = MeasureKind::EBC;
    table.edges = g.edges();
    table.scores.reserve(credit.size());
    // Every unordered pair was credited once from each end.
    for (double c : credit) table.scores.push_back(c / 2.0);
    return table;
}

std::int64_t frc(const UndirectedGraph& g, Edge e) {
    if (!g.has_edge(e)) throw ContractViolation(fmt::format("edge ({},{}) is not in the graph", e.u, e.v));
    return 4 - static_cast<std::int64_t>(g.degree(e.u)) - static_cast<std::int64_t>(g.degree(e.v));
}

NodeEdgeWeights NodeEdgeWeights::unit(const UndirectedGraph& g) {
    NodeEdgeWeights w;
    for (NodeId x : g.nodes()) w.node[x] = 1.0;
    for (const Edge& e : g.edges()) w.edge[e] = 1.0;
    return w;
}

double frc_weighted(const UndirectedGraph& g, Edge e, const NodeEdgeWeights& w) {
    e = Edge::canonical(e.u, e.v);
    if (!g.has_edge(e)) throw ContractViolation(fmt::format("edge ({},{}) is not in the graph", e.u, e.v));
    auto node_weight = [&w](NodeId x) {
        const auto it = w.node.find(x);
        if (it == w.node.end()) throw ContractViolation(fmt::format("missing weight for node {}", x));
        return it->second;
    };
    auto edge_weight = [&w](Edge f) {
        const auto it = w.edge.find(f);
        if (it == w.edge.end()) throw ContractViolation(fmt::format("missing weight for edge ({},{})", f.u, f.v));
        return it->second;
    };

    const double we = edge_weight(e);
    const double wi = node_weight(e.u);
    const double wj = node_weight(e.v);
    double inner = wi / we + wj / we;
    for (NodeId y : g.neighbors(e.u)) {
        if (y == e.v) continue;
        inner -= wi / std::sqrt(we * edge_weight(Edge::canonical(e.u, y)));
    }
    for (NodeId y : g.neighbors(e.v)) {
        if (y == e.u) continue;
        inner -= wj / std::sqrt(we * edge_weight(Edge::canonical(e.v, y)));
    }
    return we * inner;
}

Rational orc_exact(const UndirectedGraph& g, Edge e, const DistanceTable& dist) {
    if (!g.has_edge(e)) throw ContractViolation(fmt::format("edge ({},{}) is not in the graph", e.u, e.v));
    const auto mu = DiscreteMeasure::uniform_neighbors(g, e.u);
    const auto nu = DiscreteMeasure::uniform_neighbors(g, e.v);
    const auto cost = CostMatrix::from_distances(dist, mu, nu);
    // d(i, j) = 1 for adjacent endpoints.
    return Rational(1) - wasserstein1(mu, nu, cost).value;
}

Rational orc_exact(const UndirectedGraph& g, Edge e) {
    return orc_exact(g, e, all_pairs_shortest_paths(g));
}

double orc(const UndirectedGraph& g, Edge e) { return orc_exact(g, e).to_double(); }

EdgeScoreTable edge_scores(const UndirectedGraph& g, MeasureKind measure) {
    if (measure == MeasureKind::EBC) return ebc(g);
    EdgeScoreTable table;
    table.measure = measure;
    table.edges = g.edges();
    table.scores.reserve(g.edge_count());
    if (measure == MeasureKind::FRC) {
        for (const Edge& e : g.edges()) table.scores.push_back(static_cast<double>(frc(g, e)));
    } else {
        const auto dist = all_pairs_shortest_paths(g);
        for (const Edge& e : g.edges()) table.scores.push_back(orc_exact(g, e, dist).to_double());
    }
    return table;
}

std::vector<Edge> rank_edges(const EdgeScoreTable& table, RankDirection direction) {
    // Scores are quantized so Brandes round-off cannot split true ties.
    // Significance key: larger key = more significant.
    const bool descending = (table.measure == MeasureKind::EBC) == (direction == RankDirection::Default);
    std::vector<std::pair<std::int64_t, Edge>> keyed;
    keyed.reserve(table.edges.size());
    for (std::size_t i = 0; i < table.edges.size(); ++i) {
        const auto q = static_cast<std::int64_t>(std::llround(table.scores[i] * 1e9));
        keyed.emplace_back(descending ? q : -q, table.edges[i]);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<Edge> ranking;
    ranking.reserve(keyed.size());
    for (const auto& [key, e] : keyed) ranking.push_back(e);
    return ranking;
}

std::vector<Edge> rank_edges(const UndirectedGraph& g, MeasureKind measure, RankDirection direction) {
    return rank_edges(edge_scores(g, measure), direction);
}

std::string scores_csv(const EdgeScoreTable& table, RankDirection direction) {
    std::string out = "edge_u,edge_v,measure,score,rank\n";
    const auto ranking = rank_edges(table, direction);
    const std::string name = to_string(table.measure);
    for (std::size_t r = 0; r < ranking.size(); ++r) {
        const Edge e = ranking[r];
        out += fmt::format("{},{},{},{},{}\n", e.u, e.v, name, table.score(e), r + 1);
    }
    return out;
}

} // namespace rwprune
