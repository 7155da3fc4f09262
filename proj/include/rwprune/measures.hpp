#pragma once

#include <map>
#include <string>
#include <vector>

#include "rwprune/graph.hpp"
#include "rwprune/rational.hpp"

namespace rwprune {

enum class MeasureKind { EBC, ORC, FRC };

// Default: EBC high-to-low, curvatures most-negative first. Inverted flips
// which end of the score order counts as significant.
enum class RankDirection { Default, Inverted };

std::string to_string(MeasureKind kind);       // "EBC", "ORC", "FRC"
MeasureKind parse_measure(const std::string& text);  // case-insensitive
std::string to_string(RankDirection direction);  // "default", "inverted"
RankDirection parse_direction(const std::string& text);

// One score per graph edge, aligned with `edges` (which is sorted).
struct EdgeScoreTable {
    MeasureKind measure = MeasureKind::FRC;
    std::vector<Edge> edges;
    std::vector<double> scores;

    // Throws ContractViolation if e is not in the table.
    double score(Edge e) const;
};

// Unnormalized edge betweenness over unordered node pairs (Brandes).
EdgeScoreTable ebc(const UndirectedGraph& g);

// Unweighted Forman-Ricci curvature 4 - deg(i) - deg(j).
std::int64_t frc(const UndirectedGraph& g, Edge e);

struct NodeEdgeWeights {
    std::map<NodeId, double> node;
    std::map<Edge, double> edge;

    static NodeEdgeWeights unit(const UndirectedGraph& g);
};

// Weighted Forman-Ricci curvature:
//   w_e * ( w_i/w_e + w_j/w_e
//           - sum_{e_i ~ e} w_i / sqrt(w_e w_{e_i})
//           - sum_{e_j ~ e} w_j / sqrt(w_e w_{e_j}) )
// where e_i ranges over the other edges at i and e_j over the other edges at j.
double frc_weighted(const UndirectedGraph& g, Edge e, const NodeEdgeWeights& w);

// Ollivier-Ricci curvature 1 - W1(m_i, m_j) with m_x uniform over the
// neighbors of x and hop-distance ground cost on the whole graph.
Rational orc_exact(const UndirectedGraph& g, Edge e, const DistanceTable& dist);
Rational orc_exact(const UndirectedGraph& g, Edge e);
double orc(const UndirectedGraph& g, Edge e);

EdgeScoreTable edge_scores(const UndirectedGraph& g, MeasureKind measure);

// Most significant first. Equal scores fall back to the smaller edge pair.
std::vector<Edge> rank_edges(const EdgeScoreTable& table, RankDirection direction = RankDirection::Default);
std::vector<Edge> rank_edges(const UndirectedGraph& g, MeasureKind measure,
                             RankDirection direction = RankDirection::Default);

// CSV with header `edge_u,edge_v,measure,score,rank`, one row per edge in
// rank order (rank 1 = most significant).
std::string scores_csv(const EdgeScoreTable& table, RankDirection direction = RankDirection::Default);

} // namespace rwprune
