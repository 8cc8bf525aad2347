#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swnet {

using NodeId = std::int32_t;

// Hop distance used by every BFS in the project; unreachable nodes carry this value.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

// Node set carrying two edge kinds.
//
// Omni links are stored as arcs in both directions; a node that switches to a
// directional beam silences its outgoing omni arcs while the incoming ones stay
// (reception remains omnidirectional), so an omni link may become one-way.
// Beam edges are always directed. Traversal from u follows every outgoing omni
// arc and every beam edge.
class MixedGraph {
public:
    MixedGraph() = default;
    explicit MixedGraph(std::size_t node_count);

    std::size_t node_count() const { return omni_out_.size(); }

    void add_omni_edge(NodeId u, NodeId v);
    void add_omni_arc(NodeId u, NodeId v);
    void add_beam_edge(NodeId u, NodeId v);
    // Drops every outgoing omni arc of u; arcs into u are kept.
    void silence_omni(NodeId u);

    bool has_omni_arc(NodeId u, NodeId v) const;
    bool has_beam_edge(NodeId u, NodeId v) const;
    bool has_arc(NodeId u, NodeId v) const { return has_omni_arc(u, v) || has_beam_edge(u, v); }

    std::span<const NodeId> omni_out(NodeId u) const { return omni_out_.at(u); }
    std::span<const NodeId> beam_out(NodeId u) const { return beam_out_.at(u); }

    std::size_t omni_arc_count() const;
    std::size_t beam_edge_count() const;

    const std::vector<Position>& positions() const { return positions_; }
    bool has_positions() const { return !positions_.empty(); }
    void set_positions(std::vector<Position> positions);

    bool valid(NodeId u) const { return u >= 0 && static_cast<std::size_t>(u) < node_count(); }

    friend bool operator==(const MixedGraph&, const MixedGraph&) = default;

private:
    void check(NodeId u, NodeId v) const;

    std::vector<std::vector<NodeId>> omni_out_;
    std::vector<std::vector<NodeId>> beam_out_;
    std::vector<Position> positions_;
};

// Compressed adjacency snapshot used by the traversal kernels.
class Adjacency {
public:
    enum class Direction { forward, reverse, undirected };

    Adjacency() = default;
    Adjacency(const MixedGraph& g, Direction direction);

    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::span<const NodeId> neighbors(NodeId u) const
    {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<NodeId> targets_;
};

// Breadth-first hop counts from source; unreached nodes hold kUnreachable.
// max_hops bounds the search depth (nodes beyond it stay unreachable).
std::vector<int> bfs_hops(const Adjacency& adj, NodeId source, int max_hops = kUnreachable);

std::vector<int> shortest_hops(const MixedGraph& g, NodeId source);

class NoReachablePairs : public std::domain_error {
public:
    NoReachablePairs() : std::domain_error("no ordered pair of nodes is connected by a directed path") {}
};

struct PathLengthStats {
    double mean = 0.0;
    std::uint64_t reachable_pairs = 0;
};

// Mean hop count over ordered pairs (u, v), u != v, with a directed path u -> v.
// Throws NoReachablePairs when there is none.
PathLengthStats average_path_length(const MixedGraph& g);

// Watts-Strogatz clustering on the undirected projection; nodes of degree < 2 count as 0.
double clustering_coefficient(const MixedGraph& g);
std::vector<double> local_clustering(const MixedGraph& g);

using Components = std::vector<std::vector<NodeId>>;

// Components are sorted internally and ordered by their smallest member.
Components weak_components(const MixedGraph& g);
Components strong_components(const MixedGraph& g);

// Largest strongly connected component; ties go to the one with the smaller minimum id.
std::vector<NodeId> gscc(const MixedGraph& g);
// Nodes with a directed path into the GSCC, the GSCC included.
std::vector<NodeId> gin(const MixedGraph& g);

std::vector<NodeId> largest_component(const Components& components);

struct InducedSubgraph {
    MixedGraph graph;
    std::vector<NodeId> original; // local id -> id in the parent graph
};

// Keeps the arcs of g whose endpoints both lie in scope; ids are re-indexed in scope order.
InducedSubgraph induced_subgraph(const MixedGraph& g, std::span<const NodeId> scope);

// Edge-list text: "N <count>", then "O u v" for two-way omni links (u < v),
// "D u v" for one-way omni arcs and "B u v" for beam edges.
void write_edge_list(std::ostream& os, const MixedGraph& g);
MixedGraph read_edge_list(std::istream& is);

} // namespace swnet
