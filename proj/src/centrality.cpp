#include "swnet/centrality.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace swnet {

CentralityScores closeness(const MixedGraph& g, std::span<const NodeId> scope)
{
    CentralityScores scores{CentralityKind::closeness, {scope.begin(), scope.end()},
                            std::vector<double>(scope.size(), 0.0)};
    if (scope.size() < 2)
        return scores;
    const auto sub = induced_subgraph(g, scope);
    const Adjacency adj(sub.graph, Adjacency::Direction::forward);
    for (NodeId v = 0; v < static_cast<NodeId>(scope.size()); ++v) {
        long long sum = 0;
        bool complete = true;
        for (int d : bfs_hops(adj, v)) {
            if (d == kUnreachable) {
                complete = false;
                break;
            }
            sum += d;
        }
        if (complete)
            scores.values[v] = 1.0 / static_cast<double>(sum);
    }
    return scores;
}

CentralityScores closeness(const MixedGraph& g)
{
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), 0);
    return closeness(g, all);
}

CentralityScores sociocentric_betweenness(const MixedGraph& g)
{
    const auto n = static_cast<NodeId>(g.node_count());
    const Adjacency adj(g, Adjacency::Direction::forward);
    CentralityScores scores{CentralityKind::sociocentric, std::vector<NodeId>(n), std::vector<double>(n, 0.0)};
    std::iota(scores.nodes.begin(), scores.nodes.end(), 0);

    std::vector<int> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<NodeId> order;
    order.reserve(n);
    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const NodeId u = order[head];
            for (NodeId w : adj.neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[u] + 1)
                    sigma[w] += sigma[u];
            }
        }
        // Predecessors of w are the u with an arc u -> w and dist[u] + 1 == dist[w].
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const NodeId u = *it;
            for (NodeId w : adj.neighbors(u))
                if (dist[w] == dist[u] + 1)
                    delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
            if (u != s)
                scores.values[u] += delta[u];
        }
    }
    return scores;
}

double egocentric_betweenness(const MixedGraph& g, NodeId v)
{
    if (!g.valid(v))
        throw std::out_of_range("ego node out of range");
    const Adjacency und(g, Adjacency::Direction::undirected);
    std::vector<NodeId> ego{v};
    for (NodeId w : und.neighbors(v))
        ego.push_back(w);
    const std::size_t k = ego.size();
    if (k < 3)
        return 0.0;

    std::vector<char> a(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const auto nb = und.neighbors(ego[i]);
            if (std::binary_search(nb.begin(), nb.end(), ego[j]))
                a[i * k + j] = a[j * k + i] = 1;
        }

    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            if (a[i * k + j])
                continue;
            int walks = 0;
            for (std::size_t m = 0; m < k; ++m)
                walks += a[i * k + m] * a[m * k + j];
            if (walks > 0)
                sum += 1.0 / walks;
        }
    return sum;
}

std::vector<NodeId> argmax_nodes(const CentralityScores& scores)
{
    if (scores.values.empty())
        return {};
    const double best = *std::max_element(scores.values.begin(), scores.values.end());
    const double slack = 1e-9 * std::max(1.0, std::abs(best));
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < scores.values.size(); ++i)
        if (scores.values[i] >= best - slack)
            out.push_back(scores.nodes[i]);
    return out;
}

void write_scores_csv(std::ostream& os, const CentralityScores& scores)
{
    const auto precision = os.precision();
    os << "id,value\n" << std::setprecision(17);
    for (std::size_t i = 0; i < scores.values.size(); ++i)
        os << scores.nodes[i] << ',' << scores.values[i] << '\n';
    os.precision(precision);
}

} // namespace swnet
