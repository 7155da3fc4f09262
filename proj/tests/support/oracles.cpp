#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace oracle {

using rwprune::NodeId;

std::vector<UndirectedGraph> small_family(std::size_t count, std::uint64_t seed) {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    std::vector<UndirectedGraph> out;
    while (out.size() < count) {
        const std::size_t n = 3 + rng() % 6;
        std::vector<int> deg(n, 0);
        std::vector<Edge> edges;
        auto has = [&](NodeId a, NodeId b) {
            return std::find(edges.begin(), edges.end(), Edge::canonical(a, b)) != edges.end();
        };
        // Random tree first, attaching each node to an earlier one with spare degree.
        bool ok = true;
        for (NodeId v = 1; v < n && ok; ++v) {
            std::vector<NodeId> open;
            for (NodeId u = 0; u < v; ++u) {
                if (deg[u] < 4) open.push_back(u);
            }
            if (open.empty()) {
                ok = false;
                break;
            }
            const NodeId u = open[rng() % open.size()];
            edges.push_back({u, v});
            ++deg[u];
            ++deg[v];
        }
        if (!ok) continue;
        const unsigned extra = rng() % (n + 2);
        for (unsigned t = 0; t < extra; ++t) {
            const auto a = static_cast<NodeId>(rng() % n);
            const auto b = static_cast<NodeId>(rng() % n);
            if (a == b || has(a, b) || deg[a] >= 4 || deg[b] >= 4) continue;
            edges.push_back(Edge::canonical(a, b));
            ++deg[a];
            ++deg[b];
        }
        out.emplace_back(n, edges);
    }
    return out;
}

std::vector<std::vector<int>> hop_distances(const UndirectedGraph& g) {
    const std::size_t n = g.label_count();
    const int inf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& row : d)
        for (int& x : row)
            if (x >= inf) x = -1;
    return d;
}

Rational brute_force_w1(const rwprune::DiscreteMeasure& mu, const rwprune::DiscreteMeasure& nu,
                        const std::vector<std::vector<std::int64_t>>& cost) {
    const std::size_t r = mu.support.size();
    const std::size_t c = nu.support.size();
    if (r > 4 || c > 4) throw std::length_error("oracle: support larger than 4");
    std::int64_t scale = 1;
    for (const auto* m : {&mu, &nu})
        for (const Rational& x : m->mass) scale = std::lcm(scale, x.den());
    if (scale > 24) throw std::length_error("oracle: more than 24 units");
    std::vector<std::int64_t> supply(r);
    std::vector<std::int64_t> demand(c);
    for (std::size_t i = 0; i < r; ++i) supply[i] = (mu.mass[i] * Rational(scale)).num();
    for (std::size_t j = 0; j < c; ++j) demand[j] = (nu.mass[j] * Rational(scale)).num();

    std::int64_t best = -1;
    std::vector<std::int64_t> left = demand;
    // Fill row i, column j with every feasible amount; the last column of each
    // row takes whatever supply remains.
    std::function<void(std::size_t, std::size_t, std::int64_t, std::int64_t)> fill =
        [&](std::size_t i, std::size_t j, std::int64_t row_left, std::int64_t acc) {
            if (i == r) {
                if (std::all_of(left.begin(), left.end(), [](std::int64_t x) { return x == 0; })) {
                    if (best < 0 || acc < best) best = acc;
                }
                return;
            }
            if (j + 1 == c) {
                if (row_left > left[j]) return;
                if (row_left > 0 && cost[i][j] < 0) return;
                left[j] -= row_left;
                fill(i + 1, 0, i + 1 < r ? supply[i + 1] : 0, acc + row_left * std::max<std::int64_t>(cost[i][j], 0));
                left[j] += row_left;
                return;
            }
            const std::int64_t top = std::min(row_left, left[j]);
            for (std::int64_t x = 0; x <= top; ++x) {
                if (x > 0 && cost[i][j] < 0) break;
                left[j] -= x;
                fill(i, j + 1, row_left - x, acc + x * std::max<std::int64_t>(cost[i][j], 0));
                left[j] += x;
            }
        };
    fill(0, 0, supply[0], 0);
    if (best < 0) throw std::domain_error("oracle: no feasible plan");
    return Rational(best, scale);
}

Rational orc(const UndirectedGraph& g, Edge e) {
    const auto d = hop_distances(g);
    auto measure = [&](NodeId x) {
        rwprune::DiscreteMeasure m;
        for (NodeId y = 0; y < g.label_count(); ++y) {
            if (g.has_edge(Edge::canonical(x, y)) && x != y) {
                m.support.push_back(y);
            }
        }
        for (std::size_t k = 0; k < m.support.size(); ++k) {
            m.mass.emplace_back(1, static_cast<std::int64_t>(m.support.size()));
        }
        return m;
    };
    const auto mu = measure(e.u);
    const auto nu = measure(e.v);
    std::vector<std::vector<std::int64_t>> cost(mu.support.size(), std::vector<std::int64_t>(nu.support.size()));
    for (std::size_t a = 0; a < mu.support.size(); ++a)
        for (std::size_t b = 0; b < nu.support.size(); ++b) cost[a][b] = d[mu.support[a]][nu.support[b]];
    return Rational(1) - brute_force_w1(mu, nu, cost) / Rational(d[e.u][e.v]);
}

PathCounts enumerate_shortest_paths(const UndirectedGraph& g) {
    const std::size_t n = g.label_count();
    PathCounts out;
    std::vector<NodeId> path;
    std::vector<bool> on(n, false);
    for (NodeId s = 0; s < n; ++s) {
        if (!g.has_node(s)) continue;
        for (NodeId t = s + 1; t < n; ++t) {
            if (!g.has_node(t)) continue;
            std::vector<std::vector<NodeId>> found;
            std::function<void(NodeId)> walk = [&](NodeId x) {
                if (x == t) {
                    found.push_back(path);
                    return;
                }
                for (NodeId y = 0; y < n; ++y) {
                    if (on[y] || !g.has_edge(Edge::canonical(x, y)) || x == y) continue;
                    on[y] = true;
                    path.push_back(y);
                    walk(y);
                    path.pop_back();
                    on[y] = false;
                }
            };
            path = {s};
            on[s] = true;
            walk(s);
            on[s] = false;
            if (found.empty()) continue;
            std::size_t shortest = found.front().size();
            for (const auto& p : found) shortest = std::min(shortest, p.size());
            const auto key = std::make_pair(s, t);
            out.distance[key] = static_cast<int>(shortest - 1);
            for (const auto& p : found) {
                if (p.size() != shortest) continue;
                ++out.sigma[key];
                for (std::size_t k = 0; k + 1 < p.size(); ++k) ++out.sigma_through[key][Edge::canonical(p[k], p[k + 1])];
            }
        }
    }
    return out;
}

std::map<Edge, Rational> edge_betweenness(const UndirectedGraph& g) {
    const PathCounts pc = enumerate_shortest_paths(g);
    std::map<Edge, Rational> out;
    for (const Edge& e : g.edges()) out[e] = Rational(0);
    for (const auto& [pair, through] : pc.sigma_through) {
        const std::int64_t sigma = pc.sigma.at(pair);
        for (const auto& [e, count] : through) out[e] = out[e] + Rational(count, sigma);
    }
    return out;
}

Rational modularity(const UndirectedGraph& g, const std::vector<int>& community) {
    const auto m2 = static_cast<std::int64_t>(2 * g.edge_count());
    Rational sum(0);
    for (NodeId i : g.nodes()) {
        for (NodeId j : g.nodes()) {
            if (community[i] != community[j]) continue;
            const std::int64_t a = (i != j && g.has_edge(Edge::canonical(i, j))) ? 1 : 0;
            const auto ki = static_cast<std::int64_t>(g.degree(i));
            const auto kj = static_cast<std::int64_t>(g.degree(j));
            sum = sum + Rational(a) - Rational(ki * kj, m2);
        }
    }
    return sum / Rational(m2);
}

Rational best_modularity(const UndirectedGraph& g) {
    const auto nodes = g.nodes();
    std::vector<int> community(g.label_count(), -1);
    Rational best(-1);
    // Restricted growth strings enumerate each set partition once.
    std::function<void(std::size_t, int)> assign = [&](std::size_t k, int used) {
        if (k == nodes.size()) {
            best = std::max(best, modularity(g, community));
            return;
        }
        for (int c = 0; c <= used; ++c) {
            community[nodes[k]] = c;
            assign(k + 1, std::max(used, c + 1));
        }
    };
    assign(0, 0);
    return best;
}

} // namespace oracle
