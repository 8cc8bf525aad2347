#pragma once

#include "swnet/graph.hpp"
#include "swnet/sync_engine.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace swnet {

// Which relay guard bounds a region: `within` accepts records with hop + 1 <= g,
// `strict` only hop + 1 < g.
enum class HopGuard { within, strict };

// Ordering among candidate heads of equal degree.
enum class TieBreak { lowest_id, seeded_random };

enum Role : std::uint8_t {
    kStandard = 0,
    kCentroid = 1 << 0,
    kPeripheral = 1 << 1,
};

std::string role_name(std::uint8_t role);

struct NodeRegion {
    NodeId head = -1;
    int hop = 0;
    std::size_t head_degree = 0;
    NodeId region = -1; // head id after region formation, centroid id after broadcast
    std::uint8_t role = kStandard;

    bool is_centroid() const { return (role & kCentroid) != 0; }
    bool is_peripheral() const { return (role & kPeripheral) != 0; }

    friend bool operator==(const NodeRegion&, const NodeRegion&) = default;
};

struct RegionState {
    std::vector<NodeRegion> nodes;
    std::size_t rounds = 0; // synchronous rounds spent in region formation

    std::size_t size() const { return nodes.size(); }
    friend bool operator==(const RegionState&, const RegionState&) = default;
};

struct InhibitionOptions {
    int gradient = 3;
    HopGuard guard = HopGuard::within;
    TieBreak tie_break = TieBreak::lowest_id;
    std::uint64_t seed = 0;           // used by TieBreak::seeded_random only
    std::ostream* trace = nullptr;    // "round,node,head,hop,head_degree" lines
    SyncEngine<int>::ReadObserver read_observer; // test hook: every inbox read
};

// Lateral-inhibition region formation over the omni graph.
//
// Waves alternate two relay phases until every node is decided. In the
// inhibition phase every node relays the strongest (degree, then tie-break)
// undecided candidate record it has heard, up to the region radius; an
// undecided node that hears no stronger candidate becomes a head. In the
// gradient phase the heads' (head, hop, degree) records spread the same radius
// and each node keeps the nearest head, preferring the stronger one at equal
// hop; undecided nodes reached this way are inhibited.
//
// Heads end up more than `radius` hops apart, every node sits within `radius`
// hops of its head, and regions are connected.
RegionState lateral_inhibition(const MixedGraph& omni, const InhibitionOptions& options);

int region_radius(int gradient, HopGuard guard);

// Partition of the node set by region id, ordered by region id; members ascend.
std::vector<std::vector<NodeId>> regions(const RegionState& rs);

struct VirtualCoord {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const VirtualCoord&, const VirtualCoord&) = default;
};

struct ConsensusState {
    std::vector<NodeId> members;
    std::vector<VirtualCoord> initial;
    std::vector<VirtualCoord> current;
    bool converged = false;
    std::size_t rounds = 0;

    // Mean of the current estimates; equal to every estimate once converged.
    VirtualCoord consensus_point() const;
};

// Closed-neighborhood averaging of random virtual coordinates inside a region.
// Each member draws its coordinates uniformly from [0, 1)^2 from a stream keyed
// by (seed, node id). Stops once all estimates agree to within tol in each
// coordinate, or after max_rounds (0 selects 10 * |region|).
ConsensusState centroid_consensus(std::span<const NodeId> region, const MixedGraph& omni,
                                  std::uint64_t seed, double tol = 1e-9, std::size_t max_rounds = 0);

// Same, from given starting coordinates (aligned with region).
ConsensusState centroid_consensus(std::span<const NodeId> region, const MixedGraph& omni,
                                  std::vector<VirtualCoord> initial, double tol = 1e-9, std::size_t max_rounds = 0,
                                  const SyncEngine<VirtualCoord>::ReadObserver& observer = {});

// Members whose initial coordinates lie in the eps box around the consensus
// point compete on degree + egocentric betweenness (ties to the lower id).
// With no such member the node whose initial coordinates are nearest wins.
NodeId elect_centroid(const ConsensusState& cs, double eps, const MixedGraph& omni);

// RC tables: for every node, the centroids within g_max omni hops.
class CentroidTable {
public:
    struct Entry {
        NodeId centroid;
        int hops;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    CentroidTable() = default;
    CentroidTable(std::size_t node_count, int g_max) : entries_(node_count), g_max_(g_max) {}

    std::span<const Entry> entries(NodeId v) const { return entries_.at(v); }
    std::optional<int> hops(NodeId v, NodeId centroid) const;
    int g_max() const { return g_max_; }
    std::size_t node_count() const { return entries_.size(); }

    void add(NodeId v, NodeId centroid, int hops);

    friend bool operator==(const CentroidTable&, const CentroidTable&) = default;

private:
    std::vector<std::vector<Entry>> entries_; // sorted by centroid id
    int g_max_ = 0;
};

CentroidTable broadcast_centroids(const MixedGraph& omni, std::span<const NodeId> centroids, int g_max);

// Same, and re-homes every node onto the centroid of its region: region and
// head become the centroid id, hop the omni hop count to it, and the centroid
// role flag is set.
CentroidTable broadcast_centroids(const MixedGraph& omni, std::span<const NodeId> centroids, int g_max,
                                  RegionState& rs);

struct OrganizationParams {
    InhibitionOptions inhibition;
    double eps = 0.05;
    double tol = 1e-9;
    std::size_t max_rounds = 0; // 0 selects 10 * |region|
    int g_max = 0;              // 0 selects 3 * gradient
    std::uint64_t seed = 0;
};

struct Organization {
    RegionState regions;
    std::vector<NodeId> centroids; // one per region, ascending
    CentroidTable rc;
    std::size_t unconverged_regions = 0;
};

// Region formation, per-region consensus and election, then centroid broadcast.
Organization organize(const MixedGraph& omni, const OrganizationParams& params);

void write_region_csv(std::ostream& os, const RegionState& rs);

} // namespace swnet
