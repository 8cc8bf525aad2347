#pragma once

// Slow, independent reference implementations used to cross-check the library.
// Everything works on a dense arc matrix built by the test itself, never on
// the library's own traversal structures.

#include "swnet/graph.hpp"
#include "swnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using swnet::NodeId;

constexpr int kInf = 1 << 29;

struct Digraph {
    int n = 0;
    std::vector<char> a; // a[u*n+v] = arc u -> v

    explicit Digraph(int nodes = 0) : n(nodes), a(static_cast<std::size_t>(nodes) * nodes, 0) {}
    bool arc(int u, int v) const { return a[u * n + v] != 0; }
    void set(int u, int v, bool on = true) { a[u * n + v] = on ? 1 : 0; }
    bool linked(int u, int v) const { return arc(u, v) || arc(v, u); }
};

// Builds a MixedGraph with exactly the arcs of d, choosing omni or beam
// representations at random so both code paths get exercised.
inline swnet::MixedGraph to_mixed(const Digraph& d, swnet::Rng& rng)
{
    swnet::MixedGraph g(d.n);
    for (int u = 0; u < d.n; ++u)
        for (int v = u + 1; v < d.n; ++v) {
            const bool f = d.arc(u, v), b = d.arc(v, u);
            if (f && b && swnet::uniform01(rng) < 0.5) {
                g.add_omni_edge(u, v);
                continue;
            }
            if (f)
                swnet::uniform01(rng) < 0.5 ? g.add_omni_arc(u, v) : g.add_beam_edge(u, v);
            if (b)
                swnet::uniform01(rng) < 0.5 ? g.add_omni_arc(v, u) : g.add_beam_edge(v, u);
        }
    return g;
}

inline Digraph undirected_from_mask(int n, unsigned long long mask)
{
    Digraph d(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1ULL) {
                d.set(u, v);
                d.set(v, u);
            }
    return d;
}

inline Digraph directed_from_mask(int n, unsigned long long mask)
{
    Digraph d(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v)
                continue;
            if (mask >> bit & 1ULL)
                d.set(u, v);
            ++bit;
        }
    return d;
}

inline Digraph random_digraph(int n, double p_arc, double p_sym, swnet::Rng& rng)
{
    Digraph d(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (swnet::uniform01(rng) < p_sym) {
                d.set(u, v);
                d.set(v, u);
                continue;
            }
            if (swnet::uniform01(rng) < p_arc)
                d.set(u, v);
            if (swnet::uniform01(rng) < p_arc)
                d.set(v, u);
        }
    return d;
}

inline std::vector<std::vector<int>> floyd_warshall(const Digraph& d)
{
    std::vector<std::vector<int>> dist(d.n, std::vector<int>(d.n, kInf));
    for (int u = 0; u < d.n; ++u) {
        dist[u][u] = 0;
        for (int v = 0; v < d.n; ++v)
            if (u != v && d.arc(u, v))
                dist[u][v] = 1;
    }
    for (int k = 0; k < d.n; ++k)
        for (int i = 0; i < d.n; ++i)
            for (int j = 0; j < d.n; ++j)
                if (dist[i][k] + dist[k][j] < dist[i][j])
                    dist[i][j] = dist[i][k] + dist[k][j];
    return dist;
}

inline std::optional<double> apl(const Digraph& d)
{
    const auto dist = floyd_warshall(d);
    long long sum = 0, pairs = 0;
    for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j)
            if (i != j && dist[i][j] < kInf) {
                sum += dist[i][j];
                ++pairs;
            }
    if (pairs == 0)
        return std::nullopt;
    return static_cast<double>(sum) / static_cast<double>(pairs);
}

// Mean over all nodes of (triangles through v) / (k choose 2) on the undirected projection.
inline double clustering(const Digraph& d)
{
    if (d.n == 0)
        return 0.0;
    double total = 0.0;
    for (int v = 0; v < d.n; ++v) {
        std::vector<int> nb;
        for (int w = 0; w < d.n; ++w)
            if (w != v && d.linked(v, w))
                nb.push_back(w);
        const std::size_t k = nb.size();
        if (k < 2)
            continue;
        int closed = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (d.linked(nb[i], nb[j]))
                    ++closed;
        total += closed / (static_cast<double>(k) * (k - 1) / 2.0);
    }
    return total / d.n;
}

inline std::vector<std::vector<char>> reach(const Digraph& d)
{
    std::vector<std::vector<char>> r(d.n, std::vector<char>(d.n, 0));
    for (int u = 0; u < d.n; ++u) {
        r[u][u] = 1;
        for (int v = 0; v < d.n; ++v)
            if (d.arc(u, v))
                r[u][v] = 1;
    }
    for (int k = 0; k < d.n; ++k)
        for (int i = 0; i < d.n; ++i)
            if (r[i][k])
                for (int j = 0; j < d.n; ++j)
                    if (r[k][j])
                        r[i][j] = 1;
    return r;
}

// Strongly connected components via mutual reachability, as a set of sorted sets.
inline std::set<std::vector<NodeId>> sccs(const Digraph& d)
{
    const auto r = reach(d);
    std::set<std::vector<NodeId>> out;
    for (int u = 0; u < d.n; ++u) {
        std::vector<NodeId> c;
        for (int v = 0; v < d.n; ++v)
            if (r[u][v] && r[v][u])
                c.push_back(v);
        out.insert(c);
    }
    return out;
}

inline std::set<std::vector<NodeId>> weak_components(const Digraph& d)
{
    Digraph s(d.n);
    for (int u = 0; u < d.n; ++u)
        for (int v = 0; v < d.n; ++v)
            if (d.linked(u, v))
                s.set(u, v);
    return sccs(s);
}

// Largest SCC, ties to the one holding the smallest id.
inline std::vector<NodeId> gscc(const Digraph& d)
{
    std::vector<NodeId> best;
    for (const auto& c : sccs(d))
        if (c.size() > best.size() || (c.size() == best.size() && !best.empty() && c.front() < best.front()))
            best = c;
    return best;
}

inline std::vector<NodeId> gin(const Digraph& d)
{
    const auto core = gscc(d);
    const auto r = reach(d);
    std::vector<NodeId> out;
    for (int u = 0; u < d.n; ++u)
        if (std::any_of(core.begin(), core.end(), [&](NodeId c) { return r[u][c]; }))
            out.push_back(u);
    return out;
}

// Betweenness by listing every shortest path explicitly.
inline std::vector<double> betweenness(const Digraph& d)
{
    const auto dist = floyd_warshall(d);
    std::vector<double> bc(d.n, 0.0);
    std::vector<int> path;
    for (int s = 0; s < d.n; ++s)
        for (int t = 0; t < d.n; ++t) {
            if (s == t || dist[s][t] >= kInf)
                continue;
            std::vector<long long> through(d.n, 0);
            long long total = 0;
            // depth-first over walks of exactly dist[s][t] steps ending in t
            auto walk = [&](auto&& self, int u, int depth) -> void {
                if (depth == dist[s][t]) {
                    if (u == t) {
                        ++total;
                        for (int x : path)
                            ++through[x];
                    }
                    return;
                }
                for (int w = 0; w < d.n; ++w)
                    if (d.arc(u, w)) {
                        path.push_back(w);
                        self(self, w, depth + 1);
                        path.pop_back();
                    }
            };
            path.clear();
            walk(walk, s, 0);
            for (int v = 0; v < d.n; ++v)
                if (v != s && v != t && through[v] > 0)
                    bc[v] += static_cast<double>(through[v]) / static_cast<double>(total);
        }
    return bc;
}

// Ego betweenness by counting 2-paths between non-adjacent ego members.
inline double ego_betweenness(const Digraph& d, int v)
{
    std::vector<int> ego{v};
    for (int w = 0; w < d.n; ++w)
        if (w != v && d.linked(v, w))
            ego.push_back(w);
    double sum = 0.0;
    for (std::size_t i = 0; i < ego.size(); ++i)
        for (std::size_t j = i + 1; j < ego.size(); ++j) {
            if (d.linked(ego[i], ego[j]))
                continue;
            int mids = 0;
            for (int k : ego)
                if (k != ego[i] && k != ego[j] && d.linked(ego[i], k) && d.linked(k, ego[j]))
                    ++mids;
            if (mids > 0)
                sum += 1.0 / mids;
        }
    return sum;
}

inline Digraph induced(const Digraph& d, const std::vector<NodeId>& scope)
{
    Digraph s(static_cast<int>(scope.size()));
    for (std::size_t i = 0; i < scope.size(); ++i)
        for (std::size_t j = 0; j < scope.size(); ++j)
            if (i != j && d.arc(scope[i], scope[j]))
                s.set(static_cast<int>(i), static_cast<int>(j));
    return s;
}

inline std::vector<double> closeness(const Digraph& d, const std::vector<NodeId>& scope)
{
    std::vector<double> out(scope.size(), 0.0);
    if (scope.size() < 2)
        return out;
    const auto dist = floyd_warshall(induced(d, scope));
    for (std::size_t i = 0; i < scope.size(); ++i) {
        long long sum = 0;
        bool all = true;
        for (std::size_t j = 0; j < scope.size(); ++j)
            if (dist[i][j] >= kInf)
                all = false;
            else
                sum += dist[i][j];
        if (all)
            out[i] = 1.0 / static_cast<double>(sum);
    }
    return out;
}

// RC oracle: (centroid, hops) pairs within g_max for every node.
inline std::vector<std::vector<std::pair<NodeId, int>>> centroid_table(const Digraph& d,
                                                                       const std::vector<NodeId>& centroids, int g_max)
{
    const auto dist = floyd_warshall(d);
    std::vector<std::vector<std::pair<NodeId, int>>> out(d.n);
    for (int v = 0; v < d.n; ++v)
        for (NodeId c : centroids)
            if (dist[v][c] <= g_max)
                out[v].push_back({c, dist[v][c]});
    return out;
}

inline double wrap_offset(double a, double b)
{
    double x = std::fabs(std::remainder(a - b, 2.0 * std::numbers::pi));
    return x;
}

// Sector sweep oracle: rebuild the whole arc matrix for every sector and run
// Floyd-Warshall. Returns (centroid, hops, first sector) sorted by centroid.
struct SweepHit {
    NodeId centroid;
    int hops;
    int sector;
    bool operator==(const SweepHit&) const = default;
};

inline std::vector<SweepHit> sweep(const Digraph& d, const std::vector<swnet::Position>& pos, NodeId p, int m,
                                   double r, const std::vector<NodeId>& centroids, int g_max,
                                   const std::vector<double>& forbidden)
{
    const double two_pi = 2.0 * std::numbers::pi;
    const int sectors = m * m;
    const double width = two_pi / sectors;
    const double length = m * r;
    std::vector<SweepHit> best;
    for (int k = 0; k < sectors; ++k) {
        const double bore = (k + 0.5) * width;
        bool blocked = false;
        for (double f : forbidden)
            if (wrap_offset(bore, f) <= width / 2.0 + 1e-12)
                blocked = true;
        if (blocked)
            continue;
        Digraph t = d;
        for (int v = 0; v < d.n; ++v) {
            t.set(p, v, false);
            if (v == p)
                continue;
            const double dx = pos[v].x - pos[p].x, dy = pos[v].y - pos[p].y;
            const double dd = std::hypot(dx, dy);
            if (dd == 0.0 || dd > length)
                continue;
            double ang = std::atan2(dy, dx);
            if (ang < 0)
                ang += two_pi;
            if (wrap_offset(ang, bore) <= width / 2.0 + 1e-12)
                t.set(p, v);
        }
        const auto dist = floyd_warshall(t);
        for (NodeId c : centroids) {
            if (c == p || dist[p][c] > g_max)
                continue;
            auto it = std::find_if(best.begin(), best.end(), [&](const SweepHit& h) { return h.centroid == c; });
            if (it == best.end())
                best.push_back({c, dist[p][c], k});
            else if (dist[p][c] < it->hops) {
                it->hops = dist[p][c];
                it->sector = k;
            }
        }
    }
    std::sort(best.begin(), best.end(), [](const SweepHit& a, const SweepHit& b) { return a.centroid < b.centroid; });
    return best;
}

} // namespace oracle
