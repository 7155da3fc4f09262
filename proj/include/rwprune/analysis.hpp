#pragma once

#include <vector>

#include <json.hpp>

#include "rwprune/graph.hpp"

namespace rwprune {

// Community id per label; labels absent from the graph carry -1.
struct Partition {
    std::vector<int> community;

    int community_count() const;
};

// Q = 1/(2m) sum_ij [A_ij - k_i k_j / (2m)] delta(c_i, c_j) over ordered
// pairs including i == j. Throws UndefinedMetricError on an edgeless graph.
double modularity(const UndirectedGraph& g, const Partition& part);

// Clauset-Newman-Moore agglomeration from singletons: merge the connected
// community pair with the largest gain while the gain is positive; ties go to
// the smallest (id, id) pair. Gains are compared exactly in integer units of
// 1/(2m)^2. Community ids are renumbered by lowest member label.
Partition greedy_communities(const UndirectedGraph& g);

// 1/(N(N-1)) * sum over ordered pairs i != j of 1/d_ij, with N the node
// count and unreachable pairs contributing zero. Throws ContractViolation
// when N < 2.
double global_efficiency(const UndirectedGraph& g);

// Same sum, normalized by the full label count n instead of the surviving
// node count: nodes deleted by pruning count as unreachable.
double label_efficiency(const UndirectedGraph& g);

struct StructureReport {
    double modularity = 0;
    double efficiency = 0;
    Partition partition;

    nlohmann::ordered_json to_json() const;
};

StructureReport analyze_structure(const UndirectedGraph& g);

} // namespace rwprune
