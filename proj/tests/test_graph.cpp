#include <gtest/gtest.h>

#include <bit>

#include "redld/graph.hpp"

using namespace redld;

TEST(Builders, PathAndCycle)
{
    auto p = build_path(6);
    EXPECT_EQ(p.order(), 6u);
    EXPECT_EQ(p.size(), 5u);
    EXPECT_TRUE(is_tree(p));
    auto c = build_cycle(7);
    EXPECT_EQ(c.size(), 7u);
    for (VertexId v = 0; v < 7; ++v)
        EXPECT_EQ(c.degree(v), 2u);
    EXPECT_THROW(build_cycle(2), DomainError);
    EXPECT_THROW(build_path(0), DomainError);
}

TEST(Builders, Ladder)
{
    auto g = build_ladder(5);
    EXPECT_EQ(g.order(), 10u);
    EXPECT_EQ(g.size(), 3u * 5 - 2);
    EXPECT_TRUE(g.has_edge(ladder_vertex(1, 1), ladder_vertex(1, 2)));
    EXPECT_TRUE(g.has_edge(ladder_vertex(2, 2), ladder_vertex(3, 2)));
    EXPECT_FALSE(g.has_edge(ladder_vertex(2, 1), ladder_vertex(3, 2)));
}

TEST(Builders, HypercubeIsHammingGraph)
{
    for (std::size_t d = 1; d <= 6; ++d) {
        auto g = build_hypercube(d);
        ASSERT_EQ(g.order(), std::size_t{1} << d);
        EXPECT_EQ(g.size(), d << (d - 1));
        for (VertexId u = 0; u < g.order(); ++u)
            for (VertexId v = 0; v < g.order(); ++v)
                EXPECT_EQ(g.has_edge(u, v), std::popcount(u ^ v) == 1);
    }
}

TEST(Builders, KaryTree)
{
    auto g = build_kary_tree(3, 2);
    EXPECT_EQ(g.order(), 13u);
    EXPECT_TRUE(is_tree(g));
    for (VertexId c = 1; c <= 3; ++c)
        EXPECT_TRUE(g.has_edge(0, c));
    for (VertexId c = 4; c <= 6; ++c)
        EXPECT_TRUE(g.has_edge(1, c));
    EXPECT_THROW(build_kary_tree(1, 3), DomainError);
}

TEST(Builders, Petersen)
{
    auto g = build_petersen();
    EXPECT_EQ(g.order(), 10u);
    EXPECT_EQ(g.size(), 15u);
    for (VertexId v = 0; v < 10; ++v) {
        EXPECT_EQ(g.degree(v), 3u);
        // girth 5: every vertex at distance 1 or 2 is reached along a unique path
        auto d = bfs_distances(g, v, 2);
        EXPECT_EQ(std::count(d.begin(), d.end(), 1u), 3);
        EXPECT_EQ(std::count(d.begin(), d.end(), 2u), 6);
    }
    // closed neighborhood of v_5 is {v_1, v_4, v_5, v_10}
    EXPECT_EQ(closed_neighborhood(g, 4), (std::vector<VertexId>{0, 3, 4, 9}));
}

TEST(Builders, CompleteMultipartite)
{
    auto g = build_complete_multipartite({2, 3, 1});
    EXPECT_EQ(g.order(), 6u);
    EXPECT_EQ(g.size(), 2u * 3 + 2 * 1 + 3 * 1);
    EXPECT_FALSE(g.has_edge(0, 1));
    EXPECT_TRUE(g.has_edge(0, 2));
    EXPECT_EQ(build_complete(5).size(), 10u);
}

TEST(Structure, ComponentsUnionAndInduced)
{
    auto g = disjoint_union(build_path(3), build_cycle(4));
    EXPECT_EQ(g.order(), 7u);
    EXPECT_EQ(connected_components(g).size(), 2u);
    EXPECT_FALSE(is_connected(g));
    std::vector<VertexId> keep{3, 4, 5};
    auto h = induced_subgraph(g, keep);
    EXPECT_EQ(h.order(), 3u);
    EXPECT_EQ(h.size(), 2u);
}

TEST(Structure, BfsDistancesOnCycle)
{
    auto g = build_cycle(8);
    auto d = bfs_distances(g, 0, 100);
    EXPECT_EQ(d[4], 4u);
    EXPECT_EQ(d[7], 1u);
    auto capped = bfs_distances(g, 0, 2);
    EXPECT_GT(capped[4], 2u);
}

TEST(EdgeList, RoundTrip)
{
    auto g = build_petersen();
    auto h = parse_edge_list(render_edge_list(g));
    EXPECT_EQ(g.edges(), h.edges());
    auto k = parse_edge_list("# comment\n3\n0 1 # edge\n\n1 2\n");
    EXPECT_EQ(k.size(), 2u);
}

TEST(EdgeList, ErrorsCarryLineNumbers)
{
    auto line_of = [](const char* text) {
        try {
            parse_edge_list(text);
        } catch (const InputError& e) {
            return e.line();
        }
        return std::size_t{9999};
    };
    EXPECT_EQ(line_of("3\n0 1\n1 1\n"), 3u);
    EXPECT_EQ(line_of("3\n0 1\n1 0\n"), 3u);
    EXPECT_EQ(line_of("3\n0 3\n"), 2u);
    EXPECT_EQ(line_of("3\n0 x\n"), 2u);
    EXPECT_EQ(line_of("3 4\n"), 1u);
    EXPECT_THROW(parse_edge_list(""), InputError);
}
