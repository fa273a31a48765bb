#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "redld/solver.hpp"
#include "redld/verify.hpp"

using namespace redld;

namespace {

// v_2, v_5, v_8, v_9 (1-indexed), the LD set of the Petersen example
DetectorSet petersen_ld() { return DetectorSet(10, {1, 4, 7, 8}); }

oracle::Set as_set(const DetectorSet& s)
{
    auto m = s.members();
    return {m.begin(), m.end()};
}

} // namespace

TEST(Counting, DominationCount)
{
    auto g = build_petersen();
    EXPECT_EQ(domination_count(g, petersen_ld(), 4), 1u);
    EXPECT_EQ(domination_count(g, petersen_ld(), 0), 2u);
    EXPECT_EQ(domination_count(g, DetectorSet(10), 3), 0u);
}

TEST(Counting, DistinguishingDegree)
{
    auto k3 = build_complete(3);
    EXPECT_EQ(distinguishing_degree(k3, DetectorSet(3, {0, 1, 2}), 0, 1), 0u);
    EXPECT_EQ(distinguishing_degree(build_path(3), DetectorSet(3, {1}), 0, 2), 0u);
    EXPECT_EQ(distinguishing_degree(build_path(5), DetectorSet(5, {1, 3}), 0, 4), 2u);
}

TEST(Ld, Examples)
{
    auto g = build_petersen();
    EXPECT_TRUE(is_ld_set(g, petersen_ld()).ok());
    auto p3 = is_ld_set(build_path(3), DetectorSet(3, {1}));
    EXPECT_FALSE(p3.ok());
    EXPECT_TRUE(is_ld_set(g, DetectorSet::all(10)).ok());
}

TEST(Redld, Examples)
{
    EXPECT_TRUE(is_redld_set(build_cycle(4), DetectorSet::all(4)).ok());
    DetectorSet c9(9, {0, 1, 3, 4, 6, 7});
    EXPECT_EQ(c9.size(), 6u);
    EXPECT_TRUE(is_redld_set(build_cycle(9), c9).ok());
    auto r = is_redld_set(build_path(4), DetectorSet(4, {1, 2}));
    EXPECT_TRUE(r.has(Condition::dom2));
    // both leaves reported, not just the first
    std::size_t dom2 = 0;
    for (const auto& v : r.violations)
        dom2 += v.condition == Condition::dom2;
    EXPECT_EQ(dom2, 2u);
}

TEST(Redld, PetersenOptimalSetPassesBothChecks)
{
    auto g = build_petersen();
    auto r = min_redld(g);
    ASSERT_EQ(r.optimum, 6u);
    EXPECT_TRUE(is_redld_set(g, r.witness).ok());
    EXPECT_TRUE(is_redld_by_definition(g, r.witness).ok());
    EXPECT_FALSE(is_redld_set(g, petersen_ld()).ok());
}

TEST(Redld, IsolatedVertexMeansNoSet)
{
    auto g = disjoint_union(build_path(3), build_path(1));
    EXPECT_EQ(isolated_vertices(g), (std::vector<VertexId>{3}));
    EXPECT_FALSE(is_redld_set(g, DetectorSet::all(4)).ok());
    EXPECT_FALSE(is_redld_by_definition(g, DetectorSet::all(4)).ok());
}

TEST(Redld, FullSetRule)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = oracle::random_graph(2 + trial % 8, 0.3, rng);
        EXPECT_EQ(is_redld_set(g, DetectorSet::all(g.order())).ok(), g.min_degree() >= 1);
    }
}

TEST(Redld, AgreesWithNaiveOracleOnSmallGraphs)
{
    // every labeled graph on 4 vertices, every S, against the set-based oracle
    const std::size_t n = 4;
    std::vector<Edge> pairs;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            pairs.push_back({u, v});
    for (std::uint32_t em = 0; em < (1u << pairs.size()); ++em) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (em >> i & 1)
                edges.push_back(pairs[i]);
        auto g = Graph::from_edges(n, edges);
        for (std::uint64_t m = 0; m < 16; ++m) {
            auto s = from_mask(n, m);
            auto o = oracle::from_mask(m);
            ASSERT_EQ(is_ld_set(g, s).ok(), oracle::is_ld(g, o));
            ASSERT_EQ(is_redld_set(g, s).ok(), oracle::is_redld(g, o));
            ASSERT_EQ(is_redld_by_definition(g, s).ok(), oracle::is_redld(g, o));
        }
    }
}

TEST(Redld, MaskGraphMatchesReports)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = oracle::random_graph(7, 0.45, rng);
        MaskGraph mg(g);
        for (int k = 0; k < 40; ++k) {
            std::uint64_t m = rng() & mg.full();
            auto s = from_mask(7, m);
            ASSERT_EQ(mg.is_ld(m), is_ld_set(g, s).ok());
            ASSERT_EQ(mg.is_redld(m), is_redld_set(g, s).ok());
            ASSERT_EQ(mg.is_redld_by_definition(m), is_redld_by_definition(g, s).ok());
            ASSERT_EQ(to_mask(s), m);
        }
    }
}

TEST(Redld, Monotone)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = oracle::random_graph(8, 0.4, rng);
        MaskGraph mg(g);
        std::uint64_t m = rng() & mg.full();
        if (!mg.is_redld(m))
            continue;
        for (VertexId v = 0; v < 8; ++v)
            EXPECT_TRUE(mg.is_redld(m | std::uint64_t{1} << v));
    }
}

TEST(Redld, TwinsAreDetectors)
{
    std::mt19937_64 rng(3);
    std::size_t checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto g = oracle::random_graph(6, 0.5, rng);
        auto twins = find_twins(g);
        if (twins.empty())
            continue;
        MaskGraph mg(g);
        for (std::uint64_t m = 0; m <= mg.full(); ++m) {
            if (!mg.is_redld(m))
                continue;
            for (auto [u, v] : twins) {
                EXPECT_TRUE(m >> u & 1);
                EXPECT_TRUE(m >> v & 1);
            }
            ++checked;
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(Twins, Examples)
{
    EXPECT_EQ(find_twins(build_complete(3)).size(), 3u);
    EXPECT_EQ(find_twins(build_complete_multipartite({1, 3})).size(), 3u);
    EXPECT_TRUE(find_twins(build_path(4)).empty());
}

TEST(Share, PetersenExample)
{
    auto g = build_petersen();
    auto s = petersen_ld();
    for (VertexId x : s.members())
        EXPECT_EQ(share(g, s, x), make_rational(5, 2));
    Rational total = 0;
    for (const auto& [x, value] : all_shares(g, s))
        total += value;
    EXPECT_EQ(total, 10);
    EXPECT_EQ(total / s.size(), make_rational(5, 2));
    auto k2 = build_complete(2);
    EXPECT_EQ(share(k2, DetectorSet::all(2), 0), 1);
}

TEST(Share, SumIsOrderWhenDominated)
{
    std::mt19937_64 rng(17);
    std::size_t checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto g = oracle::random_graph(9, 0.35, rng);
        auto s = from_mask(9, rng() & 0x1ff);
        bool dominated = true;
        for (VertexId v = 0; v < 9; ++v)
            dominated = dominated && domination_count(g, s, v) >= 1;
        if (!dominated)
            continue;
        Rational total = 0;
        for (const auto& [x, value] : all_shares(g, s))
            total += value;
        EXPECT_EQ(total, 9);
        ++checked;
    }
    EXPECT_GT(checked, 20u);
}

TEST(Share, DefinedForDetectorsOnlyEvenWhenSetIsNotDominating)
{
    // vertices 2, 3 undominated, but N[0] is dominated by 0 itself
    auto g = build_path(4);
    EXPECT_EQ(share(g, DetectorSet(4, {0}), 0), 2);
    EXPECT_THROW(share(g, DetectorSet(4, {0}), 2), DomainError);
}

TEST(Report, TextFormat)
{
    auto r = is_redld_set(build_path(4), DetectorSet(4, {1, 2}));
    auto text = to_text(r);
    EXPECT_EQ(text.rfind("violations ", 0), 0u);
    EXPECT_NE(text.find(condition_id(Condition::dom2)), std::string::npos);
    EXPECT_EQ(to_text(VerificationReport{}), "ok\n");
    EXPECT_EQ(as_set(DetectorSet(3, {2, 0})), (oracle::Set{0, 2}));
}

TEST(Detectors, ParseList)
{
    auto s = parse_detector_list(10, "1 4, 7\n8 # rest\n");
    EXPECT_EQ(s, petersen_ld());
    EXPECT_EQ(parse_detector_list(5, "{1 3}").size(), 2u);
    EXPECT_THROW(parse_detector_list(10, "1 10"), InputError);
    EXPECT_THROW(parse_detector_list(10, "1 x"), InputError);
    EXPECT_THROW(parse_detector_list(10, "-1"), InputError);
}

TEST(Detectors, UniverseMismatchThrows)
{
    EXPECT_THROW(is_ld_set(build_path(4), DetectorSet(5)), DomainError);
    EXPECT_THROW(domination_count(build_path(4), DetectorSet(4), 7), DomainError);
}
