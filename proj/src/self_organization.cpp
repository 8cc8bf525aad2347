#include "swnet/self_organization.hpp"

#include "swnet/centrality.hpp"
#include "swnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace swnet {

std::string role_name(std::uint8_t role)
{
    if ((role & kCentroid) && (role & kPeripheral))
        return "centroid|peripheral";
    if (role & kCentroid)
        return "centroid";
    if (role & kPeripheral)
        return "peripheral";
    return "standard";
}

int region_radius(int gradient, HopGuard guard)
{
    if (gradient < 1)
        throw std::invalid_argument("gradient must be at least 1");
    return guard == HopGuard::within ? gradient : gradient - 1;
}

namespace {

constexpr NodeId kNone = -1;

// A (head, hop, head degree) record as exchanged between neighbors.
struct Record {
    NodeId head = kNone;
    int hop = 0;
    std::size_t degree = 0;

    bool empty() const { return head == kNone; }
    friend bool operator==(const Record&, const Record&) = default;
};

class Strength {
public:
    Strength(const Adjacency& adj, TieBreak tie, std::uint64_t seed) : priority_(adj.node_count())
    {
        for (NodeId v = 0; v < static_cast<NodeId>(priority_.size()); ++v)
            priority_[v] = tie == TieBreak::lowest_id ? static_cast<std::uint64_t>(v)
                                                      : derive_seed(seed, Stream::tie_break, v);
    }

    // True if head a (degree da) beats head b (degree db).
    bool stronger(NodeId a, std::size_t da, NodeId b, std::size_t db) const
    {
        if (da != db)
            return da > db;
        return std::tie(priority_[a], a) < std::tie(priority_[b], b);
    }

private:
    std::vector<std::uint64_t> priority_;
};

void trace_changes(std::ostream* os, std::size_t round, const std::vector<Record>& before,
                   const std::vector<Record>& after)
{
    if (os == nullptr)
        return;
    for (std::size_t v = 0; v < after.size(); ++v)
        if (!(after[v] == before[v]) && !after[v].empty())
            *os << round << ',' << v << ',' << after[v].head << ',' << after[v].hop << ',' << after[v].degree
                << '\n';
}

} // namespace

RegionState lateral_inhibition(const MixedGraph& omni, const InhibitionOptions& options)
{
    const int radius = region_radius(options.gradient, options.guard);
    const Adjacency adj(omni, Adjacency::Direction::undirected);
    const auto n = static_cast<NodeId>(omni.node_count());
    const Strength strength(adj, options.tie_break, options.seed);

    enum class Status : std::uint8_t { undecided, head, member };
    std::vector<Status> status(n, Status::undecided);
    std::vector<Record> assignment(n);
    std::size_t rounds = 0;
    std::size_t undecided = static_cast<std::size_t>(n);

    auto relay = [&](std::vector<Record> initial, auto better) {
        SyncEngine<Record> engine(adj, std::move(initial));
        if (options.read_observer)
            engine.set_read_observer(options.read_observer);
        for (;;) {
            const auto before = engine.states();
            const bool changed = engine.step([&](NodeId, const Record& own, const auto& inbox) {
                Record best = own;
                inbox.for_each([&](NodeId, const Record& msg) {
                    if (msg.empty() || msg.hop + 1 > radius)
                        return;
                    const Record offer{msg.head, msg.hop + 1, msg.degree};
                    if (best.empty() || better(offer, best))
                        best = offer;
                });
                return best;
            });
            if (!changed)
                break;
            ++rounds;
            trace_changes(options.trace, rounds, before, engine.states());
        }
        return engine.states();
    };

    auto stronger_candidate = [&](const Record& a, const Record& b) {
        return strength.stronger(a.head, a.degree, b.head, b.degree);
    };
    auto nearer_head = [&](const Record& a, const Record& b) {
        if (a.hop != b.hop)
            return a.hop < b.hop;
        return a.head != b.head && strength.stronger(a.head, a.degree, b.head, b.degree);
    };

    while (undecided > 0) {
        // Inhibition: undecided nodes advertise themselves; everyone relays the strongest.
        std::vector<Record> candidates(n);
        for (NodeId v = 0; v < n; ++v)
            if (status[v] == Status::undecided)
                candidates[v] = {v, 0, adj.degree(v)};
        candidates = relay(std::move(candidates), stronger_candidate);

        for (NodeId v = 0; v < n; ++v)
            if (status[v] == Status::undecided && candidates[v].head == v) {
                status[v] = Status::head;
                assignment[v] = {v, 0, adj.degree(v)};
                --undecided;
            }

        // Gradient: heads' records spread; nodes settle on the nearest head.
        assignment = relay(std::move(assignment), nearer_head);
        for (NodeId v = 0; v < n; ++v)
            if (status[v] == Status::undecided && !assignment[v].empty()) {
                status[v] = Status::member;
                --undecided;
            }
    }

    RegionState rs;
    rs.rounds = rounds;
    rs.nodes.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        const Record& a = assignment[v];
        rs.nodes[v] = {a.head, a.hop, a.degree, a.head, kStandard};
    }
    return rs;
}

std::vector<std::vector<NodeId>> regions(const RegionState& rs)
{
    std::map<NodeId, std::vector<NodeId>> by_region;
    for (NodeId v = 0; v < static_cast<NodeId>(rs.size()); ++v)
        by_region[rs.nodes[v].region].push_back(v);
    std::vector<std::vector<NodeId>> out;
    out.reserve(by_region.size());
    for (auto& [id, members] : by_region)
        out.push_back(std::move(members));
    return out;
}

VirtualCoord ConsensusState::consensus_point() const
{
    VirtualCoord p;
    if (current.empty())
        return p;
    for (const auto& c : current) {
        p.x += c.x;
        p.y += c.y;
    }
    p.x /= static_cast<double>(current.size());
    p.y /= static_cast<double>(current.size());
    return p;
}

ConsensusState centroid_consensus(std::span<const NodeId> region, const MixedGraph& omni, std::uint64_t seed,
                                  double tol, std::size_t max_rounds)
{
    std::vector<VirtualCoord> initial;
    initial.reserve(region.size());
    for (NodeId v : region) {
        Rng rng = make_rng(seed, Stream::consensus, static_cast<std::uint64_t>(v));
        const double x = uniform01(rng);
        const double y = uniform01(rng);
        initial.push_back({x, y});
    }
    return centroid_consensus(region, omni, std::move(initial), tol, max_rounds);
}

ConsensusState centroid_consensus(std::span<const NodeId> region, const MixedGraph& omni,
                                  std::vector<VirtualCoord> initial, double tol, std::size_t max_rounds,
                                  const SyncEngine<VirtualCoord>::ReadObserver& observer)
{
    if (initial.size() != region.size())
        throw std::invalid_argument("one initial coordinate per region member is required");
    ConsensusState cs;
    cs.members.assign(region.begin(), region.end());
    if (max_rounds == 0)
        max_rounds = 10 * region.size();
    cs.initial = std::move(initial);
    cs.current = cs.initial;

    auto spread = [](const std::vector<VirtualCoord>& cs) {
        auto [xmin, xmax] = std::minmax_element(cs.begin(), cs.end(),
                                                [](const auto& a, const auto& b) { return a.x < b.x; });
        auto [ymin, ymax] = std::minmax_element(cs.begin(), cs.end(),
                                                [](const auto& a, const auto& b) { return a.y < b.y; });
        return std::max(xmax->x - xmin->x, ymax->y - ymin->y);
    };
    if (region.size() <= 1 || spread(cs.current) <= tol) {
        cs.converged = true;
        return cs;
    }

    // Averaging only sees region-internal links.
    const auto sub = induced_subgraph(omni, region);
    const Adjacency adj(sub.graph, Adjacency::Direction::undirected);
    SyncEngine<VirtualCoord> engine(adj, cs.initial);
    if (observer)
        engine.set_read_observer([&](NodeId reader, NodeId sender) { observer(sub.original[reader], sub.original[sender]); });
    while (engine.rounds() < max_rounds) {
        engine.step([&](NodeId, const VirtualCoord& own, const auto& inbox) {
            VirtualCoord sum = own;
            std::size_t count = 1;
            inbox.for_each([&](NodeId, const VirtualCoord& c) {
                sum.x += c.x;
                sum.y += c.y;
                ++count;
            });
            return VirtualCoord{sum.x / static_cast<double>(count), sum.y / static_cast<double>(count)};
        });
        // Agreement to within tol also bounds every node's last move by tol.
        if (spread(engine.states()) <= tol) {
            cs.converged = true;
            break;
        }
    }
    cs.rounds = engine.rounds();
    cs.current = engine.states();
    return cs;
}

NodeId elect_centroid(const ConsensusState& cs, double eps, const MixedGraph& omni)
{
    if (cs.members.empty())
        throw std::invalid_argument("cannot elect a centroid of an empty region");
    const VirtualCoord target = cs.consensus_point();
    const Adjacency adj(omni, Adjacency::Direction::undirected);

    NodeId winner = kNone;
    double best_score = -1.0;
    for (std::size_t i = 0; i < cs.members.size(); ++i) {
        const auto& c = cs.initial[i];
        if (std::abs(c.x - target.x) > eps || std::abs(c.y - target.y) > eps)
            continue;
        const NodeId v = cs.members[i];
        const double score = static_cast<double>(adj.degree(v)) + egocentric_betweenness(omni, v);
        if (winner == kNone || score > best_score + 1e-12 || (std::abs(score - best_score) <= 1e-12 && v < winner)) {
            winner = v;
            best_score = score;
        }
    }
    if (winner != kNone)
        return winner;

    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cs.members.size(); ++i) {
        const double d = std::hypot(cs.initial[i].x - target.x, cs.initial[i].y - target.y);
        const NodeId v = cs.members[i];
        if (d < best_distance || (d == best_distance && v < winner)) {
            best_distance = d;
            winner = v;
        }
    }
    return winner;
}

std::optional<int> CentroidTable::hops(NodeId v, NodeId centroid) const
{
    const auto& list = entries_.at(v);
    auto it = std::lower_bound(list.begin(), list.end(), centroid,
                               [](const Entry& e, NodeId c) { return e.centroid < c; });
    if (it == list.end() || it->centroid != centroid)
        return std::nullopt;
    return it->hops;
}

void CentroidTable::add(NodeId v, NodeId centroid, int hops)
{
    auto& list = entries_.at(v);
    auto it = std::lower_bound(list.begin(), list.end(), centroid,
                               [](const Entry& e, NodeId c) { return e.centroid < c; });
    if (it != list.end() && it->centroid == centroid)
        it->hops = std::min(it->hops, hops);
    else
        list.insert(it, Entry{centroid, hops});
}

CentroidTable broadcast_centroids(const MixedGraph& omni, std::span<const NodeId> centroids, int g_max)
{
    const Adjacency adj(omni, Adjacency::Direction::forward);
    CentroidTable table(omni.node_count(), g_max);
    for (NodeId c : centroids) {
        const auto dist = bfs_hops(adj, c, g_max);
        for (NodeId v = 0; v < static_cast<NodeId>(dist.size()); ++v)
            if (dist[v] <= g_max)
                table.add(v, c, dist[v]);
    }
    return table;
}

CentroidTable broadcast_centroids(const MixedGraph& omni, std::span<const NodeId> centroids, int g_max,
                                  RegionState& rs)
{
    auto table = broadcast_centroids(omni, centroids, g_max);
    const Adjacency adj(omni, Adjacency::Direction::forward);
    // Map each old region (head id) onto the centroid elected inside it.
    std::map<NodeId, NodeId> centroid_of;
    for (NodeId c : centroids)
        centroid_of[rs.nodes.at(c).region] = c;
    std::map<NodeId, std::vector<int>> dist_from;
    for (NodeId c : centroids)
        dist_from[c] = bfs_hops(adj, c);
    for (NodeId v = 0; v < static_cast<NodeId>(rs.size()); ++v) {
        auto& node = rs.nodes[v];
        const auto it = centroid_of.find(node.region);
        if (it == centroid_of.end())
            throw std::logic_error("region without an elected centroid");
        const NodeId c = it->second;
        node.region = c;
        node.head = c;
        node.head_degree = adj.degree(c);
        node.hop = dist_from[c][v];
        if (v == c)
            node.role |= kCentroid;
    }
    return table;
}

Organization organize(const MixedGraph& omni, const OrganizationParams& params)
{
    Organization org;
    org.regions = lateral_inhibition(omni, params.inhibition);
    const int g_max = params.g_max > 0 ? params.g_max : 3 * params.inhibition.gradient;
    if (g_max <= params.inhibition.gradient)
        throw std::invalid_argument("g_max must exceed the gradient");
    for (const auto& members : regions(org.regions)) {
        const auto cs = centroid_consensus(members, omni, params.seed, params.tol, params.max_rounds);
        if (!cs.converged)
            ++org.unconverged_regions;
        org.centroids.push_back(elect_centroid(cs, params.eps, omni));
    }
    std::sort(org.centroids.begin(), org.centroids.end());
    org.rc = broadcast_centroids(omni, org.centroids, g_max, org.regions);
    return org;
}

void write_region_csv(std::ostream& os, const RegionState& rs)
{
    os << "id,head,hop,role\n";
    for (std::size_t v = 0; v < rs.size(); ++v)
        os << v << ',' << rs.nodes[v].head << ',' << rs.nodes[v].hop << ',' << role_name(rs.nodes[v].role) << '\n';
}

} // namespace swnet
