#include "rwprune/generators.hpp"

#include <algorithm>
#include <set>

#include "rwprune/rng.hpp"

namespace rwprune {

UndirectedGraph generate_er(std::size_t n, double p, std::uint64_t seed) {
    GeneratorConfig config{GeneratorKind::ER, n, p, 0, 0, seed};
    config.validate();
    Rng rng(seed);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (rng.uniform() < p) edges.push_back({i, j});
        }
    }
    return UndirectedGraph(n, std::move(edges), config);
}

UndirectedGraph generate_ws(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
    GeneratorConfig config{GeneratorKind::WS, n, p, k, 0, seed};
    config.validate();
    Rng rng(seed);

    std::vector<std::set<NodeId>> adj(n);
    const auto half = static_cast<NodeId>(k / 2);
    const auto count = static_cast<NodeId>(n);
    for (NodeId offset = 1; offset <= half; ++offset) {
        for (NodeId i = 0; i < count; ++i) {
            const NodeId j = (i + offset) % count;
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    for (NodeId offset = 1; offset <= half; ++offset) {
        for (NodeId i = 0; i < count; ++i) {
            const NodeId j = (i + offset) % count;
            if (rng.uniform() >= p) continue;
            if (adj[i].size() >= n - 1) continue;  // nowhere left to go
            NodeId w = static_cast<NodeId>(rng.below(n));
            while (w == i || adj[i].contains(w)) {
                w = static_cast<NodeId>(rng.below(n));
            }
            adj[i].erase(j);
            adj[j].erase(i);
            adj[i].insert(w);
            adj[w].insert(i);
        }
    }

    std::vector<Edge> edges;
    for (NodeId i = 0; i < count; ++i) {
        for (NodeId j : adj[i]) {
            if (i < j) edges.push_back({i, j});
        }
    }
    return UndirectedGraph(n, std::move(edges), config);
}

UndirectedGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
    GeneratorConfig config{GeneratorKind::BA, n, 0.0, 0, m, seed};
    config.validate();
    Rng rng(seed);

    std::vector<Edge> edges;
    std::vector<NodeId> repeated;  // each node appears once per unit of degree
    std::vector<NodeId> targets(m);
    for (NodeId i = 0; i < m; ++i) targets[i] = i;

    for (auto source = static_cast<NodeId>(m); source < n; ++source) {
        for (NodeId t : targets) edges.push_back(Edge::canonical(t, source));
        repeated.insert(repeated.end(), targets.begin(), targets.end());
        repeated.insert(repeated.end(), m, source);

        // Next arrival's targets: m distinct draws, degree-proportional.
        targets.clear();
        while (targets.size() < m && source + 1 < n) {
            const NodeId pick = repeated[rng.below(repeated.size())];
            if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
                targets.push_back(pick);
            }
        }
    }
    return UndirectedGraph(n, std::move(edges), config);
}

UndirectedGraph generate(const GeneratorConfig& config) {
    config.validate();
    switch (config.kind) {
    case GeneratorKind::ER: return generate_er(config.n, config.p, config.seed);
    case GeneratorKind::WS: return generate_ws(config.n, config.k, config.p, config.seed);
    case GeneratorKind::BA: return generate_ba(config.n, config.m, config.seed);
    }
    return {};
}

} // namespace rwprune
