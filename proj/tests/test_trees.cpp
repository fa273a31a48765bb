#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "redld/solver.hpp"
#include "redld/trees.hpp"

using namespace redld;

namespace {

Graph star(std::size_t leaves) { return build_complete_multipartite({1, leaves}); }

Graph relabel(const Graph& g, std::mt19937_64& rng)
{
    std::vector<VertexId> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (auto e : g.edges())
        edges.push_back({perm[e.u], perm[e.v]});
    return Graph::from_edges(g.order(), edges);
}

struct Filtered {
    std::set<CanonicalTreeCode> tmin, tmax;
};

/// Brute-force filter of all trees of order n.
Filtered filter_trees(std::size_t n)
{
    Filtered out;
    for (const auto& t : all_free_trees(n)) {
        auto opt = brute_force_min_redld(t.tree).optimum;
        if (opt == tree_lower_bound(n))
            out.tmin.insert(t.code);
        if (opt == n)
            out.tmax.insert(t.code);
    }
    return out;
}

} // namespace

TEST(FreeTrees, CountsMatchKnownSequence)
{
    const std::size_t expected[] = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551};
    for (std::size_t n = 1; n <= 12; ++n) {
        auto trees = all_free_trees(n);
        EXPECT_EQ(trees.size(), expected[n - 1]) << n;
        std::set<CanonicalTreeCode> codes;
        for (const auto& t : trees) {
            EXPECT_TRUE(is_tree(t.tree));
            EXPECT_EQ(canonical_code(t.tree), t.code);
            codes.insert(t.code);
        }
        EXPECT_EQ(codes.size(), trees.size());
    }
}

TEST(CanonicalCode, InvariantUnderRelabeling)
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        auto t = random_tree(2 + i % 14, rng);
        EXPECT_EQ(canonical_code(t), canonical_code(relabel(t, rng)));
    }
    EXPECT_NE(canonical_code(build_path(4)), canonical_code(star(3)));
    EXPECT_THROW(canonical_code(build_cycle(4)), DomainError);
}

TEST(Prufer, DecodesToTrees)
{
    std::vector<VertexId> seq{3, 3, 3};
    auto t = tree_from_prufer(seq);
    EXPECT_EQ(t.order(), 5u);
    EXPECT_EQ(t.degree(3), 4u);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i)
        EXPECT_TRUE(is_tree(random_tree(2 + i % 20, rng)));
}

TEST(LowerBound, Examples)
{
    EXPECT_EQ(tree_lower_bound(9), 7u);
    EXPECT_EQ(tree_lower_bound(11), 8u);
    EXPECT_EQ(tree_lower_bound(2), 2u);
}

TEST(Tmax, Examples)
{
    EXPECT_TRUE(is_tmax(build_path(4)));
    EXPECT_FALSE(is_tmax(build_path(5)));
    EXPECT_TRUE(is_tmax(star(3)));
}

TEST(Tmax, Extensions)
{
    auto p2 = tmax_extensions(build_path(2));
    ASSERT_EQ(p2.size(), 2u);
    for (const auto& e : p2)
        EXPECT_EQ(canonical_code(e.tree), canonical_code(build_path(3)));
    for (const auto& e : tmax_extensions(build_path(4))) {
        EXPECT_NE(e.attach, 0u);
        EXPECT_NE(e.attach, 3u);
    }
    bool center = false;
    for (const auto& e : tmax_extensions(star(3)))
        if (e.attach == 0) {
            center = true;
            EXPECT_EQ(canonical_code(e.tree), canonical_code(star(4)));
        }
    EXPECT_TRUE(center);
}

TEST(Tmax, Removals)
{
    EXPECT_EQ(tmax_removals(build_path(3)), (std::vector<VertexId>{0, 2}));
    EXPECT_EQ(tmax_removals(star(3)), (std::vector<VertexId>{1, 2, 3}));
    EXPECT_EQ(tmax_removals(build_path(4)), (std::vector<VertexId>{0, 3}));
}

TEST(Tmax, EnumerationSmall)
{
    EXPECT_EQ(enumerate_tmax(2).size(), 1u);
    auto four = enumerate_tmax(4);
    std::set<CanonicalTreeCode> got, want{canonical_code(build_path(4)), canonical_code(star(3))};
    for (const auto& t : four)
        got.insert(t.code);
    EXPECT_EQ(got, want);
}

TEST(Strip, Examples)
{
    auto p5 = strip_exterior_p2(build_path(5), 0);
    EXPECT_EQ(p5.pairs.size(), 2u);
    EXPECT_EQ(p5.nondetectors.size(), 1u);
    EXPECT_EQ(p5.residual.size(), 2u);

    auto p2 = strip_exterior_p2(build_path(2), 0);
    EXPECT_TRUE(p2.pairs.empty());
    EXPECT_EQ(p2.residual.size(), 2u);

    auto p8 = strip_exterior_p2(build_path(8), 0);
    EXPECT_EQ(p8.pairs.size(), 4u);
    EXPECT_EQ(p8.nondetectors.size(), 2u);
    EXPECT_EQ(p8.residual.size(), 2u);
}

TEST(Tmin, Examples)
{
    auto p8 = classify_tmin(build_path(8));
    EXPECT_TRUE(p8.member);
    EXPECT_EQ(p8.witness.size(), 6u);
    auto k13 = classify_tmin(star(3));
    EXPECT_TRUE(k13.member);
    EXPECT_EQ(k13.witness, DetectorSet::all(4));
    // spider: path center with three unit legs at n = 7
    auto spider = Graph::from_edges(7, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {2, 6}});
    EXPECT_EQ(classify_tmin(spider).member, min_redld(spider).optimum == tree_lower_bound(7));
}

TEST(Tmin, BaseFamily)
{
    std::set<CanonicalTreeCode> got;
    for (std::size_t n = 2; n <= 4; ++n)
        for (const auto& m : enumerate_tmin(n))
            got.insert(m.code);
    std::set<CanonicalTreeCode> want{canonical_code(build_path(2)), canonical_code(build_path(3)),
                                     canonical_code(build_path(4)), canonical_code(star(3))};
    EXPECT_EQ(got, want);
}

TEST(Sweep, ClassifiersAndEnumerationsAgainstBruteForce)
{
    for (std::size_t n = 2; n <= 12; ++n) {
        auto want = filter_trees(n);
        for (const auto& t : all_free_trees(n)) {
            auto c = classify_tmin(t.tree);
            ASSERT_EQ(c.member, want.tmin.count(t.code) == 1) << t.code;
            ASSERT_EQ(is_tmax(t.tree), want.tmax.count(t.code) == 1) << t.code;
            if (!c.member)
                continue;
            EXPECT_EQ(c.witness.size(), tree_lower_bound(n));
            EXPECT_TRUE(is_redld_set(t.tree, c.witness).ok());
            const std::size_t out = n - c.witness.size();
            EXPECT_GE(n, 3 * out + 2);
            if (n % 3 == 2)
                for (VertexId v = 0; v < n; ++v)
                    if (!c.witness.contains(v)) {
                        EXPECT_EQ(t.tree.degree(v), 2u) << t.code;
                    }
        }
        std::set<CanonicalTreeCode> tmin, tmax;
        for (const auto& m : enumerate_tmin(n)) {
            tmin.insert(m.code);
            EXPECT_EQ(m.witness.size(), tree_lower_bound(n));
            EXPECT_TRUE(is_redld_set(m.tree, m.witness).ok());
        }
        for (const auto& m : enumerate_tmax(n))
            tmax.insert(m.code);
        EXPECT_EQ(tmin, want.tmin) << n;
        EXPECT_EQ(tmax, want.tmax) << n;
    }
}

TEST(Sweep, TwoDominationImpliesRedld)
{
    std::mt19937_64 rng(424242);
    for (int i = 0; i < 1000; ++i) {
        auto t = random_tree(2 + i % 19, rng);
        const std::size_t n = t.order();
        // shrink V to a random minimal-ish 2-dominating set, then add random extras
        DetectorSet s = DetectorSet::all(n);
        std::vector<VertexId> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (VertexId v : order) {
            s.erase(v);
            if (!is_2dom_redld_on_tree(t, s))
                s.insert(v);
        }
        for (VertexId v = 0; v < n; ++v)
            if (rng() % 4 == 0)
                s.insert(v);
        ASSERT_TRUE(is_2dom_redld_on_tree(t, s));
        ASSERT_TRUE(is_redld_set(t, s).ok()) << render_edge_list(t);
        EXPECT_GE(n, 3 * (n - s.size()) + 2);
    }
    auto p6 = build_path(6);
    EXPECT_TRUE(is_2dom_redld_on_tree(p6, DetectorSet(6, {0, 1, 3, 4, 5})));
    EXPECT_TRUE(is_redld_set(p6, DetectorSet(6, {0, 1, 3, 4, 5})).ok());
    EXPECT_TRUE(is_2dom_redld_on_tree(p6, DetectorSet::all(6)));
}

TEST(Sweep, LargerTreesAgainstSolver)
{
    for (std::size_t n = 13; n <= 14; ++n) {
        std::set<CanonicalTreeCode> want;
        for (const auto& t : all_free_trees(n)) {
            const bool member = min_redld(t.tree).optimum == tree_lower_bound(n);
            ASSERT_EQ(classify_tmin(t.tree).member, member) << t.code;
            if (member)
                want.insert(t.code);
        }
        std::set<CanonicalTreeCode> got;
        for (const auto& m : enumerate_tmin(n))
            got.insert(m.code);
        EXPECT_EQ(got, want);
    }
}

TEST(Tmin, OtherDeg0ReadingsDisagreeSomewhere)
{
    std::size_t current = 0, original = 0;
    for (std::size_t n = 2; n <= 12; ++n) {
        auto want = filter_trees(n);
        for (const auto& t : all_free_trees(n)) {
            const bool m = want.tmin.count(t.code) == 1;
            current += classify_tmin(t.tree, Deg0::current).member != m;
            original += classify_tmin(t.tree, Deg0::original).member != m;
        }
    }
    EXPECT_EQ(current, 23u);
    EXPECT_EQ(original, 11u);
}
