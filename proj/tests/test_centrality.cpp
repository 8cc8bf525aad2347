#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "swnet/centrality.hpp"
#include "test_util.hpp"

#include <numeric>
#include <sstream>

using namespace swnet;
using namespace testutil;

TEST_CASE("closeness examples")
{
    const auto c = closeness(path(3));
    CHECK(c.values[0] == doctest::Approx(1.0 / 3.0));
    CHECK(c.values[1] == doctest::Approx(0.5));
    CHECK(c.values[2] == doctest::Approx(1.0 / 3.0));
    for (double v : closeness(complete(4)).values)
        CHECK(v == doctest::Approx(1.0 / 3.0));

    // scope is induced: without node 1 the path falls apart
    const std::vector<NodeId> scope{0, 2};
    for (double v : closeness(path(3), scope).values)
        CHECK(v == 0.0);
    const std::vector<NodeId> one{1};
    CHECK(closeness(path(3), one).values == std::vector<double>{0.0});
}

TEST_CASE("betweenness examples")
{
    const auto p = sociocentric_betweenness(path(3));
    CHECK(p.values[1] == doctest::Approx(2.0));
    CHECK(p.values[0] == 0.0);
    for (double v : sociocentric_betweenness(complete(4)).values)
        CHECK(v == 0.0);

    CHECK(egocentric_betweenness(star(3), 0) == doctest::Approx(3.0));
    CHECK(egocentric_betweenness(complete(3), 0) == 0.0);
    CHECK(egocentric_betweenness(path(3), 1) == doctest::Approx(1.0));
    CHECK(egocentric_betweenness(MixedGraph(2), 0) == 0.0);
    CHECK_THROWS(egocentric_betweenness(path(3), 5));
}

TEST_CASE("region closeness matches the all-pairs oracle")
{
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = oracle::random_digraph(12, 0.1, 0.3, rng);
        const auto g = oracle::to_mixed(d, rng);
        std::vector<NodeId> scope;
        for (NodeId v = 0; v < 12; ++v)
            if (uniform01(rng) < 0.75)
                scope.push_back(v);
        const auto got = closeness(g, scope);
        const auto want = oracle::closeness(d, scope);
        REQUIRE(got.nodes == scope);
        for (std::size_t i = 0; i < scope.size(); ++i)
            REQUIRE(got.values[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("ego betweenness ignores nodes outside the closed neighborhood")
{
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        auto d = oracle::random_digraph(10, 0.15, 0.3, rng);
        const double before = oracle::ego_betweenness(d, 0);
        CHECK(egocentric_betweenness(oracle::to_mixed(d, rng), 0) == doctest::Approx(before));
        // cut every link of nodes not adjacent to 0
        for (int w = 1; w < 10; ++w)
            if (!d.linked(0, w))
                for (int x = 0; x < 10; ++x) {
                    d.set(w, x, false);
                    d.set(x, w, false);
                }
        CHECK(egocentric_betweenness(oracle::to_mixed(d, rng), 0) == doctest::Approx(before));
    }
}

TEST_CASE("closeness ranking survives relabeling")
{
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 9;
        const auto d = oracle::random_digraph(n, 0.0, 0.35, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        oracle::Digraph e(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (d.arc(u, v))
                    e.set(perm[u], perm[v]);
        const auto a = closeness(oracle::to_mixed(d, rng));
        const auto b = closeness(oracle::to_mixed(e, rng));
        for (int v = 0; v < n; ++v)
            REQUIRE(a.values[v] == doctest::Approx(b.values[perm[v]]));
    }
}

TEST_CASE("tree centers: at most two closeness maxima and they are adjacent")
{
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(uniform_int(rng, 0, 12));
        MixedGraph t(n);
        for (int v = 1; v < n; ++v)
            t.add_omni_edge(v, static_cast<NodeId>(uniform_int(rng, 0, v - 1)));
        const auto best = argmax_nodes(closeness(t));
        REQUIRE(!best.empty());
        REQUIRE(best.size() <= 2);
        if (best.size() == 2)
            REQUIRE(t.has_omni_arc(best[0], best[1]));
    }
}

TEST_CASE("argmax keeps ties and scores export as csv")
{
    CentralityScores s{CentralityKind::sociocentric, {4, 7, 9}, {1.0, 3.0, 3.0}};
    CHECK(argmax_nodes(s) == std::vector<NodeId>{7, 9});
    std::ostringstream os;
    write_scores_csv(os, s);
    CHECK(os.str().rfind("id,value\n4,1\n", 0) == 0);
}
