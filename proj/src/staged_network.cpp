#include "rwprune/staged_network.hpp"

namespace rwprune {

StagedNetwork StagedNetwork::build(std::vector<UndirectedGraph> stages) {
    StagedNetwork net;
    net.dags.reserve(stages.size());
    for (const auto& g : stages) net.dags.push_back(repair_connectivity(to_dag(g)));
    net.stages = std::move(stages);
    return net;
}

std::size_t StagedNetwork::edge_count() const {
    std::size_t total = 0;
    for (const auto& g : stages) total += g.edge_count();
    return total;
}

std::vector<std::vector<Edge>> StagedNetwork::stage_edges() const {
    std::vector<std::vector<Edge>> out;
    out.reserve(stages.size());
    for (const auto& g : stages) out.push_back(g.edges());
    return out;
}

} // namespace rwprune
