#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "properties.hpp"

#include <algorithm>
#include <numeric>

using namespace swnet;

TEST_CASE("pipeline invariants on 200 randomized instances")
{
    const auto c = props::run_suite(200, 20240601);
    for (const auto& e : c.examples())
        MESSAGE(e);
    for (const auto& [name, count] : c.checks())
        CHECK_MESSAGE(c.failures().count(name) == 0, name, " failed ", c.failures().count(name) ? c.failures().at(name) : 0,
                      " of ", count);
    // every property was exercised at least once
    for (const char* name : {"heads more than g hops apart", "one centroid per region", "members reach their centroid",
                             "isolated node is centroid and peripheral", "peripheral condition", "separation",
                             "reception preserved", "GSCC within GIN", "beam links equal coverage",
                             "farthest target at least two hops"})
        CHECK_MESSAGE(c.checks().count(name) == 1, name);
}

TEST_CASE("strict hop guard keeps heads farther apart than g - 1")
{
    for (std::uint64_t i = 0; i < 30; ++i) {
        auto in = props::make_instance(77, i);
        in.config.hop_guard = HopGuard::strict;
        in.key.gradient = std::max(2, in.key.gradient);
        props::Checker c;
        props::check_instance(in, c);
        // the instance checker tests radius g, which strict regions satisfy a fortiori,
        // except the head spacing which is only g - 1 here
        auto failures = c.failures();
        failures.erase("heads more than g hops apart");
        CHECK(failures.empty());

        InhibitionOptions o;
        o.gradient = in.key.gradient;
        o.guard = HopGuard::strict;
        const auto omni = build_omni_graph(in.placement, in.config.r);
        const auto rs = lateral_inhibition(omni, o);
        const Adjacency und(omni, Adjacency::Direction::undirected);
        for (NodeId a = 0; a < static_cast<NodeId>(rs.size()); ++a) {
            if (rs.nodes[a].head != a)
                continue;
            const auto d = bfs_hops(und, a);
            for (NodeId b = a + 1; b < static_cast<NodeId>(rs.size()); ++b)
                if (rs.nodes[b].head == b && d[b] != kUnreachable)
                    CHECK(d[b] > in.key.gradient - 1);
        }
    }
}

TEST_CASE("adding beam edges never disconnects")
{
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(uniform_int(rng, 0, 18));
        const auto d = oracle::random_digraph(n, 0.1, 0.2, rng);
        auto g = oracle::to_mixed(d, rng);
        auto unreachable = [](const MixedGraph& h) {
            std::size_t count = 0;
            for (NodeId u = 0; u < static_cast<NodeId>(h.node_count()); ++u)
                for (int x : shortest_hops(h, u))
                    count += x == kUnreachable ? 1 : 0;
            return count;
        };
        const auto before_pairs = unreachable(g);
        const auto before_weak = weak_components(g).size();
        const auto u = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
        const auto v = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
        if (u == v)
            continue;
        g.add_beam_edge(u, v);
        CHECK(unreachable(g) <= before_pairs);
        CHECK(weak_components(g).size() <= before_weak);
    }
}

TEST_CASE("path length is label invariant and hop distances are metric")
{
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(uniform_int(rng, 0, 12));
        const auto d = oracle::random_digraph(n, 0.15, 0.2, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        oracle::Digraph e(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (d.arc(u, v))
                    e.set(perm[u], perm[v]);
        const auto g = oracle::to_mixed(d, rng);
        const auto h = oracle::to_mixed(e, rng);
        const auto want = oracle::apl(d);
        if (want) {
            CHECK(average_path_length(g).mean == doctest::Approx(average_path_length(h).mean).epsilon(1e-12));
        } else {
            CHECK_THROWS_AS(average_path_length(h), NoReachablePairs);
        }
        CHECK(clustering_coefficient(g) == doctest::Approx(clustering_coefficient(h)).epsilon(1e-12));

        std::vector<std::vector<int>> dist;
        for (NodeId u = 0; u < n; ++u)
            dist.push_back(shortest_hops(g, u));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (dist[a][b] != kUnreachable && dist[b][c] != kUnreachable)
                        REQUIRE(dist[a][c] <= dist[a][b] + dist[b][c]);
    }
}

TEST_CASE("thinning is a single pass over the original counts")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = place_uniform(2e-3, 300, seed);
        ThinningParams tp;
        const auto t = thin(p, tp);
        const auto counts = neighbor_counts(p, tp.r_b);
        std::vector<Position> kept;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (counts[i] >= tp.l_min)
                kept.push_back(p.positions[i]);
        CHECK(t.positions == kept);
    }
}

TEST_CASE("consensus ends with estimates within tolerance of each other")
{
    for (std::uint64_t i = 0; i < 40; ++i) {
        const auto in = props::make_instance(3, i);
        const auto omni = build_omni_graph(in.placement, in.config.r);
        InhibitionOptions o;
        o.gradient = in.key.gradient;
        const auto rs = lateral_inhibition(omni, o);
        for (const auto& members : regions(rs)) {
            const auto cs = centroid_consensus(members, omni, in.key.seed, 1e-9, 1000000);
            REQUIRE(cs.converged);
            for (const auto& a : cs.current)
                for (const auto& b : cs.current) {
                    CHECK(std::abs(a.x - b.x) <= 1e-9);
                    CHECK(std::abs(a.y - b.y) <= 1e-9);
                }
            const auto winner = elect_centroid(cs, 0.05, omni);
            CHECK(std::find(members.begin(), members.end(), winner) != members.end());
        }
    }
}
