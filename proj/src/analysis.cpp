#include "rwprune/analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include <fmt/format.h>

#include "rwprune/error.hpp"

namespace rwprune {

int Partition::community_count() const {
    std::set<int> ids;
    for (int c : community) {
        if (c >= 0) ids.insert(c);
    }
    return static_cast<int>(ids.size());
}

double modularity(const UndirectedGraph& g, const Partition& part) {
    const auto m = static_cast<std::int64_t>(g.edge_count());
    if (m == 0) throw UndefinedMetricError("modularity is undefined on an edgeless graph");
    if (part.community.size() != g.label_count()) throw ContractViolation("partition does not cover the graph labels");
    for (NodeId x : g.nodes()) {
        if (part.community[x] < 0) throw ContractViolation(fmt::format("node {} has no community", x));
    }

    // Per community: internal edge count and degree sum.
    std::vector<std::int64_t> internal(g.label_count(), 0), degree_sum(g.label_count(), 0);
    for (const Edge& e : g.edges()) {
        if (part.community[e.u] == part.community[e.v]) ++internal[static_cast<std::size_t>(part.community[e.u])];
    }
    for (NodeId x : g.nodes()) {
        degree_sum[static_cast<std::size_t>(part.community[x])] += static_cast<std::int64_t>(g.degree(x));
    }
    // Q = sum_c [ L_c/m - (D_c/2m)^2 ], accumulated as an integer over (2m)^2.
    std::int64_t numer = 0;
    for (std::size_t c = 0; c < internal.size(); ++c) {
        numer += 4 * m * internal[c] - degree_sum[c] * degree_sum[c];
    }
    return static_cast<double>(numer) / static_cast<double>(4 * m * m);
}

Partition greedy_communities(const UndirectedGraph& g) {
    const auto m = static_cast<std::int64_t>(g.edge_count());
    if (m == 0) throw UndefinedMetricError("community detection needs at least one edge");

    // Dense community state indexed by lowest member label; dead slots unused.
    const std::size_t n = g.label_count();
    std::vector<std::vector<std::int64_t>> between(n, std::vector<std::int64_t>(n, 0));
    std::vector<std::int64_t> degree_sum(n, 0);
    std::vector<bool> alive(n, false);
    std::vector<int> owner(n, -1);
    for (NodeId x : g.nodes()) {
        alive[x] = true;
        owner[x] = static_cast<int>(x);
        degree_sum[x] = static_cast<std::int64_t>(g.degree(x));
    }
    for (const Edge& e : g.edges()) {
        ++between[e.u][e.v];
        ++between[e.v][e.u];
    }

    // Gain of merging a and b, times (2m)^2 / 2:  E_ab * 2m - D_a * D_b.
    auto gain = [&](std::size_t a, std::size_t b) { return between[a][b] * 2 * m - degree_sum[a] * degree_sum[b]; };

    for (;;) {
        std::int64_t best = 0;
        std::size_t best_a = n, best_b = n;
        for (std::size_t a = 0; a < n; ++a) {
            if (!alive[a]) continue;
            for (std::size_t b = a + 1; b < n; ++b) {
                if (!alive[b] || between[a][b] == 0) continue;
                const std::int64_t d = gain(a, b);
                if (d > best) {
                    best = d;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_a == n) break;
        // Fold b into a (a < b keeps the lowest label as the id).
        for (std::size_t c = 0; c < n; ++c) {
            if (c == best_a || c == best_b) continue;
            between[best_a][c] += between[best_b][c];
            between[c][best_a] = between[best_a][c];
            between[best_b][c] = between[c][best_b] = 0;
        }
        between[best_a][best_b] = between[best_b][best_a] = 0;
        degree_sum[best_a] += degree_sum[best_b];
        degree_sum[best_b] = 0;
        alive[best_b] = false;
        for (int& o : owner) {
            if (o == static_cast<int>(best_b)) o = static_cast<int>(best_a);
        }
    }

    Partition part;
    part.community.assign(n, -1);
    std::vector<int> renumber(n, -1);
    int next = 0;
    for (NodeId x : g.nodes()) {
        const auto o = static_cast<std::size_t>(owner[x]);
        if (renumber[o] < 0) renumber[o] = next++;
        part.community[x] = renumber[o];
    }
    return part;
}

namespace {

double inverse_distance_sum(const UndirectedGraph& g) {
    double total = 0;
    for (NodeId s : g.nodes()) {
        const auto dist = bfs_distances(g, s);
        for (NodeId t : g.nodes()) {
            if (t != s && dist[t] != DistanceTable::kUnreachable) total += 1.0 / dist[t];
        }
    }
    return total;
}

} // namespace

double global_efficiency(const UndirectedGraph& g) {
    const auto n = static_cast<double>(g.node_count());
    if (g.node_count() < 2) throw ContractViolation("global efficiency needs at least two nodes");
    return inverse_distance_sum(g) / (n * (n - 1));
}

double label_efficiency(const UndirectedGraph& g) {
    const auto n = static_cast<double>(g.label_count());
    if (g.label_count() < 2) throw ContractViolation("global efficiency needs at least two labels");
    return inverse_distance_sum(g) / (n * (n - 1));
}

StructureReport analyze_structure(const UndirectedGraph& g) {
    StructureReport r;
    r.partition = greedy_communities(g);
    r.modularity = modularity(g, r.partition);
    r.efficiency = global_efficiency(g);
    return r;
}

nlohmann::ordered_json StructureReport::to_json() const {
    nlohmann::ordered_json j;
    j["Q"] = modularity;
    j["efficiency"] = efficiency;
    j["num_communities"] = partition.community_count();
    return j;
}

} // namespace rwprune
