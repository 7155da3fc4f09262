#include "rwprune/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <fmt/format.h>

#include "rwprune/error.hpp"

namespace rwprune {

std::string to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::ER: return "er";
    case GeneratorKind::WS: return "ws";
    case GeneratorKind::BA: return "ba";
    }
    return "?";
}

GeneratorKind parse_generator_kind(const std::string& text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "er") return GeneratorKind::ER;
    if (lower == "ws") return GeneratorKind::WS;
    if (lower == "ba") return GeneratorKind::BA;
    throw ConfigError(fmt::format("unknown graph model '{}' (expected er, ws or ba)", text));
}

void GeneratorConfig::validate() const {
    if (n < 2) {
        throw ConfigError(fmt::format("node count must be at least 2, got {}", n));
    }
    const bool p_ok = p >= 0.0 && p <= 1.0;
    switch (kind) {
    case GeneratorKind::ER:
        if (!p_ok) throw ConfigError(fmt::format("ER probability must lie in [0,1], got {}", p));
        break;
    case GeneratorKind::WS:
        if (!p_ok) throw ConfigError(fmt::format("WS rewiring probability must lie in [0,1], got {}", p));
        if (k == 0 || k % 2 != 0) throw ConfigError(fmt::format("WS degree k must be even and positive, got {}", k));
        if (k >= n) throw ConfigError(fmt::format("WS degree k={} must be below n={}", k, n));
        break;
    case GeneratorKind::BA:
        if (m < 1 || m >= n) throw ConfigError(fmt::format("BA attachment count m={} must satisfy 1 <= m < n={}", m, n));
        break;
    }
}

GeneratorConfig GeneratorConfig::defaults(GeneratorKind kind, std::uint64_t seed) {
    GeneratorConfig c;
    c.kind = kind;
    c.n = 32;
    c.seed = seed;
    switch (kind) {
    case GeneratorKind::ER: c.p = 0.2; break;
    case GeneratorKind::WS: c.k = 4; c.p = 0.75; break;
    case GeneratorKind::BA: c.m = 5; c.p = 0.0; break;
    }
    return c;
}

nlohmann::ordered_json GeneratorConfig::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = to_string(kind);
    j["n"] = n;
    switch (kind) {
    case GeneratorKind::ER: j["p"] = p; break;
    case GeneratorKind::WS: j["k"] = k; j["p"] = p; break;
    case GeneratorKind::BA: j["m"] = m; break;
    }
    j["seed"] = seed;
    return j;
}

GeneratorConfig GeneratorConfig::from_json(const nlohmann::json& j) {
    try {
        const auto kind = parse_generator_kind(j.at("kind").get<std::string>());
        GeneratorConfig c = defaults(kind, j.value("seed", std::uint64_t{0}));
        c.n = j.value("n", c.n);
        c.p = j.value("p", c.p);
        c.k = j.value("k", c.k);
        c.m = j.value("m", c.m);
        return c;
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(fmt::format("bad generator config: {}", ex.what()));
    }
}

UndirectedGraph::UndirectedGraph(std::size_t n, std::vector<Edge> edges,
                                 std::optional<GeneratorConfig> provenance)
    : n_(n), present_(n, true), provenance_(std::move(provenance)) {
    nodes_.resize(n);
    std::iota(nodes_.begin(), nodes_.end(), NodeId{0});
    build(std::move(edges));
}

UndirectedGraph::UndirectedGraph(std::size_t n, std::vector<NodeId> nodes, std::vector<Edge> edges,
                                 std::optional<GeneratorConfig> provenance)
    : n_(n), nodes_(std::move(nodes)), present_(n, false), provenance_(std::move(provenance)) {
    std::sort(nodes_.begin(), nodes_.end());
    if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
        throw ContractViolation("duplicate node label");
    }
    for (NodeId x : nodes_) {
        if (x >= n_) throw ContractViolation(fmt::format("node label {} out of range for n={}", x, n_));
        present_[x] = true;
    }
    build(std::move(edges));
}

void UndirectedGraph::build(std::vector<Edge> edges) {
    for (Edge& e : edges) {
        if (e.u == e.v) throw ContractViolation(fmt::format("self-loop at node {}", e.u));
        e = Edge::canonical(e.u, e.v);
        if (e.v >= n_) throw ContractViolation(fmt::format("edge ({},{}) exceeds n={}", e.u, e.v, n_));
        if (!present_[e.u] || !present_[e.v]) {
            throw ContractViolation(fmt::format("edge ({},{}) touches an absent node", e.u, e.v));
        }
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw ContractViolation("duplicate edge");
    }
    edges_ = std::move(edges);
    adjacency_.assign(n_, {});
    for (const Edge& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool UndirectedGraph::has_edge(Edge e) const {
    e = Edge::canonical(e.u, e.v);
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

nlohmann::ordered_json UndirectedGraph::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    if (nodes_.size() != n_) j["nodes"] = nodes_;
    auto list = nlohmann::ordered_json::array();
    for (const Edge& e : edges_) list.push_back({e.u, e.v});
    j["edges"] = std::move(list);
    if (provenance_) {
        j["provenance"] = provenance_->to_json();
    } else {
        j["provenance"] = "derived";
    }
    return j;
}

UndirectedGraph UndirectedGraph::from_json(const nlohmann::json& j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        std::vector<Edge> edges;
        for (const auto& pair : j.at("edges")) {
            edges.push_back(Edge::canonical(pair.at(0).get<NodeId>(), pair.at(1).get<NodeId>()));
        }
        std::optional<GeneratorConfig> prov;
        if (j.contains("provenance") && j["provenance"].is_object()) {
            prov = GeneratorConfig::from_json(j["provenance"]);
        }
        if (j.contains("nodes")) {
            return UndirectedGraph(n, j["nodes"].get<std::vector<NodeId>>(), std::move(edges), prov);
        }
        return UndirectedGraph(n, std::move(edges), prov);
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(fmt::format("malformed graph JSON: {}", ex.what()));
    }
}

std::string UndirectedGraph::serialize() const { return to_json().dump() + "\n"; }

std::size_t StageDag::in_degree(NodeId x) const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [x](const Edge& e) { return e.v == x; }));
}

std::size_t StageDag::out_degree(NodeId x) const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [x](const Edge& e) { return e.u == x; }));
}

namespace {

// Dense index of interior labels for the small per-stage passes below.
struct InteriorIndex {
    std::vector<NodeId> labels;
    std::vector<std::size_t> slot;  // label -> index, or npos

    explicit InteriorIndex(const std::vector<NodeId>& interior) : labels(interior) {
        const NodeId top = interior.empty() ? 0 : interior.back() + 1;
        slot.assign(top, npos);
        for (std::size_t i = 0; i < labels.size(); ++i) slot[labels[i]] = i;
    }

    std::size_t operator[](NodeId x) const { return slot.at(x); }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

} // namespace

bool StageDag::acyclic() const {
    InteriorIndex idx(interior);
    std::vector<std::size_t> indeg(interior.size(), 0);
    std::vector<std::vector<std::size_t>> out(interior.size());
    for (const Edge& e : edges) {
        out[idx[e.u]].push_back(idx[e.v]);
        ++indeg[idx[e.v]];
    }
    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < indeg.size(); ++i) {
        if (indeg[i] == 0) ready.push_back(i);
    }
    std::size_t peeled = 0;
    while (!ready.empty()) {
        const std::size_t x = ready.front();
        ready.pop_front();
        ++peeled;
        for (std::size_t y : out[x]) {
            if (--indeg[y] == 0) ready.push_back(y);
        }
    }
    return peeled == interior.size();
}

bool StageDag::data_flows() const {
    InteriorIndex idx(interior);
    const std::size_t count = interior.size();
    std::vector<std::vector<std::size_t>> fwd(count), back(count);
    for (const Edge& e : edges) {
        fwd[idx[e.u]].push_back(idx[e.v]);
        back[idx[e.v]].push_back(idx[e.u]);
    }
    auto sweep = [count](const std::vector<std::size_t>& seeds,
                         const std::vector<std::vector<std::size_t>>& next) {
        std::vector<bool> seen(count, false);
        std::vector<std::size_t> stack(seeds);
        for (std::size_t s : seeds) seen[s] = true;
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y : next[x]) {
                if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    std::vector<std::size_t> in_seeds, out_seeds;
    for (NodeId x : inputs) in_seeds.push_back(idx[x]);
    for (NodeId x : outputs) out_seeds.push_back(idx[x]);
    return sweep(in_seeds, fwd) && sweep(out_seeds, back);
}

StageDag to_dag(const UndirectedGraph& g) {
    StageDag dag;
    dag.interior = g.nodes();
    dag.edges = g.edges();
    for (NodeId x : dag.interior) {
        const auto nbrs = g.neighbors(x);
        // Neighbors are sorted: a lower neighbor exists iff the first one is below x.
        if (nbrs.empty() || nbrs.front() > x) dag.inputs.push_back(x);
        if (nbrs.empty() || nbrs.back() < x) dag.outputs.push_back(x);
    }
    return dag;
}

UndirectedGraph remove_edges(const UndirectedGraph& g, std::span<const Edge> victims) {
    std::vector<Edge> doomed;
    doomed.reserve(victims.size());
    for (Edge e : victims) {
        e = Edge::canonical(e.u, e.v);
        if (!g.has_edge(e)) {
            throw ContractViolation(fmt::format("edge ({},{}) is not in the graph", e.u, e.v));
        }
        doomed.push_back(e);
    }
    std::sort(doomed.begin(), doomed.end());
    doomed.erase(std::unique(doomed.begin(), doomed.end()), doomed.end());

    std::vector<Edge> kept;
    kept.reserve(g.edge_count() - doomed.size());
    std::set_difference(g.edges().begin(), g.edges().end(), doomed.begin(), doomed.end(),
                        std::back_inserter(kept));

    std::vector<std::size_t> degree(g.label_count(), 0);
    for (const Edge& e : kept) {
        ++degree[e.u];
        ++degree[e.v];
    }
    std::vector<bool> touched(g.label_count(), false);
    for (const Edge& e : doomed) touched[e.u] = touched[e.v] = true;

    std::vector<NodeId> nodes;
    for (NodeId x : g.nodes()) {
        if (!(touched[x] && degree[x] == 0)) nodes.push_back(x);
    }
    return UndirectedGraph(g.label_count(), std::move(nodes), std::move(kept));
}

StageDag repair_connectivity(StageDag dag) {
    InteriorIndex idx(dag.interior);
    const std::size_t count = dag.interior.size();

    // Union-find over the interior for weak components.
    std::vector<std::size_t> parent(count);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Edge& e : dag.edges) {
        const auto a = find(idx[e.u]);
        const auto b = find(idx[e.v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::vector<bool> fed(count, false);
    for (NodeId x : dag.inputs) fed[find(idx[x])] = true;
    // Interior is sorted, so the first member met is the lowest label of its component.
    for (std::size_t i = 0; i < count; ++i) {
        const auto root = find(i);
        if (!fed[root]) {
            fed[root] = true;
            dag.inputs.push_back(dag.interior[i]);
        }
    }

    // A node with no interior predecessor receives nothing unless in_node feeds it.
    std::vector<bool> has_pred(count, false), has_succ(count, false);
    for (const Edge& e : dag.edges) {
        has_succ[idx[e.u]] = true;
        has_pred[idx[e.v]] = true;
    }
    std::vector<bool> is_input(count, false), is_output(count, false);
    for (NodeId x : dag.inputs) is_input[idx[x]] = true;
    for (NodeId x : dag.outputs) is_output[idx[x]] = true;
    for (std::size_t i = 0; i < count; ++i) {
        if (!has_pred[i] && !is_input[i]) dag.inputs.push_back(dag.interior[i]);
        if (!has_succ[i] && !is_output[i]) dag.outputs.push_back(dag.interior[i]);
    }

    std::sort(dag.inputs.begin(), dag.inputs.end());
    dag.inputs.erase(std::unique(dag.inputs.begin(), dag.inputs.end()), dag.inputs.end());
    std::sort(dag.outputs.begin(), dag.outputs.end());
    return dag;
}

std::vector<int> bfs_distances(const UndirectedGraph& g, NodeId source) {
    std::vector<int> dist(g.label_count(), DistanceTable::kUnreachable);
    if (!g.has_node(source)) return dist;
    std::deque<NodeId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const NodeId x = queue.front();
        queue.pop_front();
        for (NodeId y : g.neighbors(x)) {
            if (dist[y] == DistanceTable::kUnreachable) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

DistanceTable all_pairs_shortest_paths(const UndirectedGraph& g) {
    DistanceTable table(g.label_count());
    for (NodeId s : g.nodes()) {
        const auto row = bfs_distances(g, s);
        for (NodeId t = 0; t < row.size(); ++t) table.at(s, t) = row[t];
    }
    return table;
}

} // namespace rwprune
