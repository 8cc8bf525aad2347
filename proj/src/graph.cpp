#include "swnet/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace swnet {

namespace {

bool insert_sorted(std::vector<NodeId>& list, NodeId v)
{
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it != list.end() && *it == v)
        return false;
    list.insert(it, v);
    return true;
}

bool contains_sorted(const std::vector<NodeId>& list, NodeId v)
{
    return std::binary_search(list.begin(), list.end(), v);
}

} // namespace

MixedGraph::MixedGraph(std::size_t node_count)
    : omni_out_(node_count), beam_out_(node_count)
{
}

void MixedGraph::check(NodeId u, NodeId v) const
{
    if (!valid(u) || !valid(v))
        throw std::out_of_range("node id out of range");
    if (u == v)
        throw std::invalid_argument("self-loops are not allowed");
}

void MixedGraph::add_omni_edge(NodeId u, NodeId v)
{
    check(u, v);
    insert_sorted(omni_out_[u], v);
    insert_sorted(omni_out_[v], u);
}

void MixedGraph::add_omni_arc(NodeId u, NodeId v)
{
    check(u, v);
    insert_sorted(omni_out_[u], v);
}

void MixedGraph::add_beam_edge(NodeId u, NodeId v)
{
    check(u, v);
    insert_sorted(beam_out_[u], v);
}

void MixedGraph::silence_omni(NodeId u)
{
    omni_out_.at(u).clear();
}

bool MixedGraph::has_omni_arc(NodeId u, NodeId v) const
{
    return valid(u) && contains_sorted(omni_out_[u], v);
}

bool MixedGraph::has_beam_edge(NodeId u, NodeId v) const
{
    return valid(u) && contains_sorted(beam_out_[u], v);
}

std::size_t MixedGraph::omni_arc_count() const
{
    std::size_t n = 0;
    for (const auto& l : omni_out_)
        n += l.size();
    return n;
}

std::size_t MixedGraph::beam_edge_count() const
{
    std::size_t n = 0;
    for (const auto& l : beam_out_)
        n += l.size();
    return n;
}

void MixedGraph::set_positions(std::vector<Position> positions)
{
    if (!positions.empty() && positions.size() != node_count())
        throw std::invalid_argument("position count does not match node count");
    positions_ = std::move(positions);
}

Adjacency::Adjacency(const MixedGraph& g, Direction direction)
{
    const std::size_t n = g.node_count();
    std::vector<std::vector<NodeId>> lists(n);
    for (NodeId u = 0; u < static_cast<NodeId>(n); ++u) {
        auto add = [&](NodeId v) {
            if (direction != Direction::reverse)
                lists[u].push_back(v);
            if (direction != Direction::forward)
                lists[v].push_back(u);
        };
        for (NodeId v : g.omni_out(u))
            add(v);
        for (NodeId v : g.beam_out(u))
            add(v);
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t u = 0; u < n; ++u) {
        auto& l = lists[u];
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        offsets_[u + 1] = offsets_[u] + static_cast<std::uint32_t>(l.size());
    }
    targets_.reserve(offsets_[n]);
    for (const auto& l : lists)
        targets_.insert(targets_.end(), l.begin(), l.end());
}

std::vector<int> bfs_hops(const Adjacency& adj, NodeId source, int max_hops)
{
    const std::size_t n = adj.node_count();
    std::vector<int> dist(n, kUnreachable);
    if (source < 0 || static_cast<std::size_t>(source) >= n)
        throw std::out_of_range("BFS source out of range");
    std::vector<NodeId> queue;
    queue.reserve(n);
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        if (dist[u] >= max_hops)
            continue;
        for (NodeId v : adj.neighbors(u)) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::vector<int> shortest_hops(const MixedGraph& g, NodeId source)
{
    if (!g.valid(source))
        throw std::out_of_range("source node out of range");
    return bfs_hops(Adjacency(g, Adjacency::Direction::forward), source);
}

PathLengthStats average_path_length(const MixedGraph& g)
{
    const Adjacency adj(g, Adjacency::Direction::forward);
    const auto n = static_cast<NodeId>(g.node_count());
    std::uint64_t total = 0;
    std::uint64_t pairs = 0;
    for (NodeId s = 0; s < n; ++s) {
        for (int d : bfs_hops(adj, s)) {
            if (d != kUnreachable && d > 0) {
                total += static_cast<std::uint64_t>(d);
                ++pairs;
            }
        }
    }
    if (pairs == 0)
        throw NoReachablePairs();
    return {static_cast<double>(total) / static_cast<double>(pairs), pairs};
}

std::vector<double> local_clustering(const MixedGraph& g)
{
    const Adjacency adj(g, Adjacency::Direction::undirected);
    const auto n = static_cast<NodeId>(g.node_count());
    std::vector<char> mark(n, 0);
    std::vector<double> cc(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        const auto nb = adj.neighbors(v);
        const std::size_t k = nb.size();
        if (k < 2)
            continue;
        for (NodeId w : nb)
            mark[w] = 1;
        std::size_t links = 0;
        for (NodeId w : nb)
            for (NodeId x : adj.neighbors(w))
                if (x > w && mark[x])
                    ++links;
        for (NodeId w : nb)
            mark[w] = 0;
        cc[v] = static_cast<double>(links) / (static_cast<double>(k * (k - 1)) / 2.0);
    }
    return cc;
}

double clustering_coefficient(const MixedGraph& g)
{
    if (g.node_count() == 0)
        return 0.0;
    double sum = 0.0;
    for (double c : local_clustering(g))
        sum += c;
    return sum / static_cast<double>(g.node_count());
}

namespace {

void normalize(Components& comps)
{
    for (auto& c : comps)
        std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

} // namespace

Components weak_components(const MixedGraph& g)
{
    const Adjacency adj(g, Adjacency::Direction::undirected);
    const auto n = static_cast<NodeId>(g.node_count());
    std::vector<char> seen(n, 0);
    Components comps;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        std::vector<NodeId> comp;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (NodeId v : adj.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        comps.push_back(std::move(comp));
    }
    normalize(comps);
    return comps;
}

// Iterative Tarjan.
Components strong_components(const MixedGraph& g)
{
    const Adjacency adj(g, Adjacency::Direction::forward);
    const auto n = static_cast<NodeId>(g.node_count());
    constexpr int kUnvisited = -1;
    std::vector<int> index(n, kUnvisited), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<NodeId> scc_stack;
    struct Frame {
        NodeId node;
        std::size_t next;
    };
    std::vector<Frame> call;
    Components comps;
    int counter = 0;

    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != kUnvisited)
            continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        scc_stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto nb = adj.neighbors(f.node);
            if (f.next < nb.size()) {
                const NodeId w = nb[f.next++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    scc_stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            const NodeId v = f.node;
            call.pop_back();
            if (!call.empty())
                low[call.back().node] = std::min(low[call.back().node], low[v]);
            if (low[v] == index[v]) {
                std::vector<NodeId> comp;
                NodeId w;
                do {
                    w = scc_stack.back();
                    scc_stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                comps.push_back(std::move(comp));
            }
        }
    }
    normalize(comps);
    return comps;
}

std::vector<NodeId> largest_component(const Components& components)
{
    const std::vector<NodeId>* best = nullptr;
    for (const auto& c : components)
        if (best == nullptr || c.size() > best->size())
            best = &c; // components arrive ordered by min id, so the first maximum wins ties
    return best ? *best : std::vector<NodeId>{};
}

std::vector<NodeId> gscc(const MixedGraph& g)
{
    return largest_component(strong_components(g));
}

std::vector<NodeId> gin(const MixedGraph& g)
{
    const auto core = gscc(g);
    if (core.empty())
        return {};
    const Adjacency rev(g, Adjacency::Direction::reverse);
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack(core.begin(), core.end());
    for (NodeId c : core)
        seen[c] = 1;
    std::vector<NodeId> result;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        result.push_back(u);
        for (NodeId v : rev.neighbors(u))
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
    }
    std::sort(result.begin(), result.end());
    return result;
}

InducedSubgraph induced_subgraph(const MixedGraph& g, std::span<const NodeId> scope)
{
    std::vector<NodeId> local(g.node_count(), -1);
    for (std::size_t i = 0; i < scope.size(); ++i) {
        if (!g.valid(scope[i]))
            throw std::out_of_range("scope node out of range");
        if (local[scope[i]] != -1)
            throw std::invalid_argument("duplicate node in scope");
        local[scope[i]] = static_cast<NodeId>(i);
    }
    InducedSubgraph sub{MixedGraph(scope.size()), {scope.begin(), scope.end()}};
    for (std::size_t i = 0; i < scope.size(); ++i) {
        const NodeId u = scope[i];
        for (NodeId v : g.omni_out(u))
            if (local[v] != -1)
                sub.graph.add_omni_arc(static_cast<NodeId>(i), local[v]);
        for (NodeId v : g.beam_out(u))
            if (local[v] != -1)
                sub.graph.add_beam_edge(static_cast<NodeId>(i), local[v]);
    }
    if (g.has_positions()) {
        std::vector<Position> pos;
        pos.reserve(scope.size());
        for (NodeId u : scope)
            pos.push_back(g.positions()[u]);
        sub.graph.set_positions(std::move(pos));
    }
    return sub;
}

void write_edge_list(std::ostream& os, const MixedGraph& g)
{
    const auto n = static_cast<NodeId>(g.node_count());
    os << "N " << n << '\n';
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : g.omni_out(u)) {
            const bool both = g.has_omni_arc(v, u);
            if (both && u < v)
                os << "O " << u << ' ' << v << '\n';
            else if (!both)
                os << "D " << u << ' ' << v << '\n';
        }
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : g.beam_out(u))
            os << "B " << u << ' ' << v << '\n';
}

MixedGraph read_edge_list(std::istream& is)
{
    std::string line;
    std::optional<MixedGraph> g;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        char kind = 0;
        ls >> kind;
        auto fail = [&](const char* what) {
            throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + what);
        };
        if (kind == 'N') {
            long long count = -1;
            if (g || !(ls >> count) || count < 0)
                fail("bad node-count header");
            g.emplace(static_cast<std::size_t>(count));
            continue;
        }
        if (!g)
            fail("missing 'N <count>' header");
        NodeId u = 0, v = 0;
        if (!(ls >> u >> v))
            fail("expected two node ids");
        switch (kind) {
        case 'O': g->add_omni_edge(u, v); break;
        case 'D': g->add_omni_arc(u, v); break;
        case 'B': g->add_beam_edge(u, v); break;
        default: fail("unknown edge kind");
        }
    }
    if (!g)
        throw std::runtime_error("edge list: missing 'N <count>' header");
    return std::move(*g);
}

} // namespace swnet
