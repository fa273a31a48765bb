#include <gtest/gtest.h>

#include "sat_formulas.hpp"
#include "redld/sat_reduction.hpp"
#include "redld/solver.hpp"

using namespace redld;

namespace {

SatInstance example_formula() { return parse_dimacs_cnf("p cnf 5 4\n1 2 3 0\n1 2 -3 0\n2 -4 5 0\n2 -4 -5 0\n"); }

/// By monotonicity, f is in every RED:LD set iff V - {f} is not one.
bool in_every_redld_set(const Graph& g, VertexId f)
{
    return !is_redld_set(g, DetectorSet::all(g.order()).without(f)).ok();
}

std::size_t line_of(const char* text)
{
    try {
        parse_dimacs_cnf(text);
    } catch (const InputError& e) {
        return e.line();
    }
    return 9999;
}

void expect_counts(const SatInstance& phi, const ReductionArtifact& art)
{
    const std::size_t n = phi.variables, m = phi.clauses.size();
    EXPECT_EQ(art.graph.order(), 12 * n + 3 * m);
    EXPECT_EQ(art.graph.size(), 13 * n + 5 * m);
    EXPECT_EQ(art.K, 9 * n + 2 * m);
    EXPECT_EQ(art.forced.size(), 8 * n + 2 * m);
}

} // namespace

TEST(Dimacs, Parse)
{
    auto phi = parse_dimacs_cnf("p cnf 3 1\n1 2 3 0\n");
    EXPECT_EQ(phi.variables, 3u);
    EXPECT_EQ(phi.clauses.size(), 1u);
    auto empty = parse_dimacs_cnf("c nothing\np cnf 4 0\n");
    EXPECT_EQ(empty.variables, 4u);
    EXPECT_TRUE(empty.clauses.empty());
    auto split = parse_dimacs_cnf("p cnf 3 2\n1 2\n3 0 -1 -2 -3 0\n");
    EXPECT_EQ(split.clauses.size(), 2u);
    EXPECT_EQ(parse_dimacs_cnf(render_dimacs_cnf(example_formula())).clauses, example_formula().clauses);
}

TEST(Dimacs, Errors)
{
    EXPECT_EQ(line_of("p cnf 3 1\n1 -1 2 0\n"), 2u);
    EXPECT_EQ(line_of("p cnf 3 1\n1 2 0\n"), 2u);
    EXPECT_EQ(line_of("p cnf 3 1\n1 2 4 0\n"), 2u);
    EXPECT_EQ(line_of("1 2 3 0\n"), 1u);
    EXPECT_EQ(line_of("p cnf 3 1\n1 2 x 0\n"), 2u);
    EXPECT_THROW(parse_dimacs_cnf("p cnf 3 2\n1 2 3 0\n"), InputError);
    EXPECT_THROW(parse_dimacs_cnf("p cnf 3 1\n1 2 3\n"), InputError);
}

TEST(Reduction, Counts)
{
    auto a = build_reduction(example_formula());
    EXPECT_EQ(a.graph.order(), 72u);
    EXPECT_EQ(a.graph.size(), 85u);
    EXPECT_EQ(a.K, 53u);
    auto b = build_reduction(parse_dimacs_cnf("p cnf 3 1\n1 2 3 0\n"));
    EXPECT_EQ(b.graph.order(), 39u);
    EXPECT_EQ(b.graph.size(), 44u);
    EXPECT_EQ(b.K, 29u);
    for (const auto& phi : sat_formulas::random_formulas(200, 7))
        expect_counts(phi, build_reduction(phi));
}

TEST(Reduction, ForcedSetIsForced)
{
    for (const auto& phi : sat_formulas::random_formulas(30, 8)) {
        auto art = build_reduction(phi);
        auto forced = forced_detectors(art.graph);
        for (VertexId v = 0; v < art.graph.order(); ++v) {
            EXPECT_EQ(art.forced.contains(v), forced.contains(v));
            if (art.forced.contains(v)) {
                EXPECT_TRUE(in_every_redld_set(art.graph, v));
            }
        }
    }
}

TEST(Reduction, RolesAndLabels)
{
    auto art = build_reduction(example_formula());
    EXPECT_EQ(art.roles[art.x_vertex(2)].role, Role::x);
    EXPECT_EQ(art.roles[art.x_vertex(2)].index, 2u);
    EXPECT_EQ(art.roles[art.x_bar_vertex(5)].role, Role::x_bar);
    EXPECT_EQ(art.roles[art.c_vertex(4)].role, Role::c);
    EXPECT_EQ(art.graph.name(art.c_vertex(1)), "c_1");
    EXPECT_EQ(art.graph.name(art.x_bar_vertex(3)), "xbar_3");
    // clause vertex c_1 sees x_1, x_2, x_3 (clause 1 2 3)
    for (std::size_t i = 1; i <= 3; ++i)
        EXPECT_TRUE(art.graph.has_edge(art.c_vertex(1), art.x_vertex(i)));
    EXPECT_TRUE(art.graph.has_edge(art.c_vertex(2), art.x_bar_vertex(3)));
    EXPECT_NE(render_role_map(art).find("c_4"), std::string::npos);
}

TEST(Reduction, ForwardAndBack)
{
    for (const auto& phi : sat_formulas::small_formulas(false)) {
        auto art = build_reduction(phi);
        for (std::uint32_t bits = 0; bits < (1u << phi.variables); ++bits) {
            Assignment a(phi.variables);
            for (std::size_t i = 0; i < phi.variables; ++i)
                a[i] = bits >> i & 1;
            auto s = assignment_to_detectors(art, a);
            ASSERT_EQ(s.size(), art.K);
            ASSERT_EQ(is_redld_set(art.graph, s).ok(), satisfies(phi, a));
            if (satisfies(phi, a)) {
                ASSERT_EQ(extract_assignment(art, s), a);
            }
        }
    }
}

TEST(Decide, Examples)
{
    auto one = decide_via_redld(parse_dimacs_cnf("p cnf 3 1\n1 2 3 0\n"));
    EXPECT_TRUE(one.satisfiable);
    EXPECT_EQ(one.optimum, 29u);
    ASSERT_TRUE(one.assignment);

    SatInstance all8{3, sat_formulas::all_clauses(3)};
    auto d = decide_via_redld(all8);
    EXPECT_FALSE(d.satisfiable);
    EXPECT_EQ(d.K, 43u);
    EXPECT_GE(d.optimum, 44u);

    auto f = decide_via_redld(example_formula());
    EXPECT_TRUE(f.satisfiable);
    EXPECT_EQ(f.optimum, 53u);
    ASSERT_TRUE(f.assignment);
    EXPECT_TRUE(satisfies(example_formula(), *f.assignment));
}

TEST(Decide, AgreesWithBruteForceSat)
{
    auto formulas = sat_formulas::small_formulas(false);
    auto extra = sat_formulas::random_formulas(20, 20240607);
    formulas.insert(formulas.end(), extra.begin(), extra.end());
    for (const auto& phi : formulas) {
        auto art = build_reduction(phi);
        auto d = decide_via_redld(phi);
        ASSERT_EQ(d.status, SolveStatus::optimal);
        ASSERT_EQ(d.satisfiable, brute_force_sat(phi).has_value()) << render_dimacs_cnf(phi);
        if (!d.satisfiable) {
            EXPECT_GT(d.optimum, art.K);
            continue;
        }
        ASSERT_TRUE(d.assignment);
        EXPECT_TRUE(satisfies(phi, *d.assignment));
        // optimum witness: one of x_i / xbar_i, no y, z, c
        for (VertexId v = 0; v < art.graph.order(); ++v) {
            const auto role = art.roles[v].role;
            if (role == Role::y || role == Role::z || role == Role::c) {
                EXPECT_FALSE(d.witness.contains(v));
            }
        }
        for (std::size_t i = 1; i <= phi.variables; ++i)
            EXPECT_NE(d.witness.contains(art.x_vertex(i)), d.witness.contains(art.x_bar_vertex(i)));
    }
}

TEST(Extract, RejectsBadSets)
{
    auto art = build_reduction(example_formula());
    EXPECT_THROW(extract_assignment(art, DetectorSet::all(art.graph.order())), DomainError);
    EXPECT_THROW(extract_assignment(art, art.forced), DomainError);
}
