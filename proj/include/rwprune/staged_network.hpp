#pragma once

#include <vector>

#include "rwprune/graph.hpp"

namespace rwprune {

// The three hidden-stage blocks of one network: the undirected stage graphs
// (what measures and structure analysis see) and their repaired DAGs (what
// the cost model and evaluators see).
struct StagedNetwork {
    std::vector<UndirectedGraph> stages;
    std::vector<StageDag> dags;

    static StagedNetwork build(std::vector<UndirectedGraph> stages);

    std::size_t edge_count() const;
    // Interior edge list per stage, as sent over the evaluator protocol.
    std::vector<std::vector<Edge>> stage_edges() const;
};

} // namespace rwprune
