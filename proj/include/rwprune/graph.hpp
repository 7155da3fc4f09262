#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace rwprune {

using NodeId = std::uint32_t;

// Unordered edge stored canonically with u < v. For a stage DAG the same pair
// reads as the oriented edge u -> v (lower label is the source).
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    static Edge canonical(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class GeneratorKind { ER, WS, BA };

std::string to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& text);

struct GeneratorConfig {
    GeneratorKind kind = GeneratorKind::ER;
    std::size_t n = 32;
    double p = 0.2;     // ER edge probability, WS rewiring probability
    std::size_t k = 4;  // WS lattice degree
    std::size_t m = 5;  // BA attachments per arriving node
    std::uint64_t seed = 0;

    // Throws ConfigError when the parameters for `kind` are out of range.
    void validate() const;

    // Table I parameters for the given model.
    static GeneratorConfig defaults(GeneratorKind kind, std::uint64_t seed = 0);

    nlohmann::ordered_json to_json() const;
    static GeneratorConfig from_json(const nlohmann::json& j);
};

// Simple undirected graph over labels 0..n-1. Every label starts out as a node;
// structural surgery may delete nodes, after which the label is simply absent.
class UndirectedGraph {
public:
    UndirectedGraph() = default;

    // All labels 0..n-1 present. Throws ContractViolation on self-loops,
    // duplicates or out-of-range endpoints.
    UndirectedGraph(std::size_t n, std::vector<Edge> edges,
                    std::optional<GeneratorConfig> provenance = std::nullopt);

    // Explicit node subset. Every edge endpoint must be in `nodes`.
    UndirectedGraph(std::size_t n, std::vector<NodeId> nodes, std::vector<Edge> edges,
                    std::optional<GeneratorConfig> provenance = std::nullopt);

    // Size of the label universe (the n the graph was generated with).
    std::size_t label_count() const { return n_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<NodeId>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_node(NodeId x) const { return x < n_ && present_[x]; }
    bool has_edge(Edge e) const;

    std::size_t degree(NodeId x) const { return adjacency_.at(x).size(); }
    std::span<const NodeId> neighbors(NodeId x) const { return adjacency_.at(x); }

    // nullopt means the graph is derived (pruned, hand-built, parsed).
    const std::optional<GeneratorConfig>& provenance() const { return provenance_; }

    nlohmann::ordered_json to_json() const;
    static UndirectedGraph from_json(const nlohmann::json& j);

    // Canonical serialization: edges sorted, fixed key order, trailing newline.
    std::string serialize() const;

    friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
        return a.n_ == b.n_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<NodeId> nodes_;
    std::vector<bool> present_;
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::optional<GeneratorConfig> provenance_;

    void build(std::vector<Edge> edges);
};

// One hidden-stage block: interior nodes, edges oriented low -> high, and the
// interior nodes wired to the virtual input and output nodes.
struct StageDag {
    std::vector<NodeId> interior;  // sorted
    std::vector<Edge> edges;       // sorted, each read as u -> v
    std::vector<NodeId> inputs;    // sorted; in_node -> x for each x
    std::vector<NodeId> outputs;   // sorted; x -> out_node for each x

    std::size_t in_degree(NodeId x) const;   // interior edges only
    std::size_t out_degree(NodeId x) const;  // interior edges only

    // Kahn peeling over the interior edges; true when every node is removed.
    bool acyclic() const;

    // Every interior node reachable from in_node and reaching out_node.
    bool data_flows() const;

    friend bool operator==(const StageDag&, const StageDag&) = default;
};

StageDag to_dag(const UndirectedGraph& g);

// Deletes `victims` and then every node that lost all of its edges in the
// process. Nodes that were already isolated stay. Throws ContractViolation
// if a victim is not an edge of g.
UndirectedGraph remove_edges(const UndirectedGraph& g, std::span<const Edge> victims);

// Feeds every weakly connected component lacking an input link from in_node
// (at its lowest label), then patches any node still unreachable from in_node
// or not draining to out_node.
StageDag repair_connectivity(StageDag dag);

// Hop distances between all labels. Pairs in different components, and any
// pair involving an absent label, are kUnreachable.
class DistanceTable {
public:
    static constexpr int kUnreachable = std::numeric_limits<int>::max();

    explicit DistanceTable(std::size_t n) : n_(n), d_(n * n, kUnreachable) {}

    int operator()(NodeId a, NodeId b) const { return d_[a * n_ + b]; }
    int& at(NodeId a, NodeId b) { return d_[a * n_ + b]; }
    bool reachable(NodeId a, NodeId b) const { return (*this)(a, b) != kUnreachable; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<int> d_;
};

DistanceTable all_pairs_shortest_paths(const UndirectedGraph& g);

// Single-source BFS hop distances indexed by label; kUnreachable elsewhere.
std::vector<int> bfs_distances(const UndirectedGraph& g, NodeId source);

} // namespace rwprune
