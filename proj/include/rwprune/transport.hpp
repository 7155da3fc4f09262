#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rwprune/graph.hpp"
#include "rwprune/rational.hpp"

namespace rwprune {

// Probability mass on a list of graph nodes. Masses are positive and sum to 1.
struct DiscreteMeasure {
    std::vector<NodeId> support;
    std::vector<Rational> mass;

    // Throws ContractViolation unless sizes agree, masses > 0 and sum == 1.
    void validate() const;

    // Uniform mass 1/deg(x) on each neighbor of x (no mass kept at x).
    static DiscreteMeasure uniform_neighbors(const UndirectedGraph& g, NodeId x);
};

// Ground costs between source support (rows) and target support (columns).
// Negative entries mark unreachable pairs.
struct CostMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int64_t> cost;

    static constexpr std::int64_t kInfinite = -1;

    CostMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), cost(r * c, 0) {}

    std::int64_t operator()(std::size_t a, std::size_t b) const { return cost[a * cols + b]; }
    std::int64_t& at(std::size_t a, std::size_t b) { return cost[a * cols + b]; }

    // Hop distances between the two supports; unreachable pairs become kInfinite.
    static CostMatrix from_distances(const DistanceTable& d, const DiscreteMeasure& mu,
                                     const DiscreteMeasure& nu);
};

// Coupling of two measures, dense rows x cols.
struct TransportPlan {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> flow;

    Rational operator()(std::size_t a, std::size_t b) const { return flow[a * cols + b]; }

    Rational cost(const CostMatrix& c) const;
    // Row sums equal mu.mass, column sums equal nu.mass, all flows >= 0.
    bool feasible_for(const DiscreteMeasure& mu, const DiscreteMeasure& nu) const;
};

struct TransportResult {
    Rational value;
    TransportPlan plan;
};

// Least common multiple of every mass denominator in both measures.
std::int64_t common_scale(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Exact W1: masses are scaled to integers by their common denominator and the
// transportation problem is solved as min-cost flow by successive shortest
// paths (Dijkstra with node potentials). Throws DisconnectedMeasuresError when
// a needed cost is infinite.
TransportResult wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostMatrix& cost);

} // namespace rwprune
