#pragma once

#include <cstdint>

#include "rwprune/graph.hpp"

namespace rwprune {

// Erdos-Renyi G(n, p): every pair (i < j), in lexicographic order, is kept
// independently with probability p.
UndirectedGraph generate_er(std::size_t n, double p, std::uint64_t seed);

// Watts-Strogatz: ring lattice with k/2 neighbors per side, then each lattice
// edge (visited by offset, then by node) has its far endpoint rewired with
// probability p to a uniform node that is neither a self-loop nor a duplicate.
// Always n*k/2 edges; the result may be disconnected.
UndirectedGraph generate_ws(std::size_t n, std::size_t k, double p, std::uint64_t seed);

// Barabasi-Albert: m isolated seed nodes, the first arrival links to all of
// them, later arrivals pick m distinct targets from the degree-weighted
// repeated-node list. Always m*(n-m) edges.
UndirectedGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed);

// Dispatch on config.kind after validation.
UndirectedGraph generate(const GeneratorConfig& config);

} // namespace rwprune
