#pragma once

#include "swnet/graph.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace swnet {

enum class CentralityKind { closeness, sociocentric, egocentric };

struct CentralityScores {
    CentralityKind kind = CentralityKind::closeness;
    std::vector<NodeId> nodes;  // ids in the graph the scores were computed on
    std::vector<double> values; // aligned with nodes
};

// 1 / (sum of hop distances to the other scope nodes), within the subgraph
// induced by scope. A node that cannot reach every other scope node scores 0,
// and so does every node when |scope| < 2.
CentralityScores closeness(const MixedGraph& g, std::span<const NodeId> scope);
CentralityScores closeness(const MixedGraph& g);

// Unnormalized betweenness over ordered (s, t) pairs on the directed traversal
// relation (Brandes' accumulation).
CentralityScores sociocentric_betweenness(const MixedGraph& g);

// Everett's ego betweenness: in the undirected ego network of v, the sum of
// 1 / (A^2)[i][j] over unordered non-adjacent pairs with (A^2)[i][j] > 0.
double egocentric_betweenness(const MixedGraph& g, NodeId v);

// Nodes attaining the maximum value (within 1e-9 relative tolerance).
std::vector<NodeId> argmax_nodes(const CentralityScores& scores);

void write_scores_csv(std::ostream& os, const CentralityScores& scores);

} // namespace swnet
