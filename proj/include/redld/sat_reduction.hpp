#pragma once

#include <array>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "redld/detector_set.hpp"
#include "redld/error.hpp"
#include "redld/graph.hpp"
#include "redld/solver.hpp"
#include "redld/verify.hpp"

namespace redld {

/// Signed 1-based variable index; negative means the negated literal.
using Literal = std::int32_t;

struct SatInstance {
    std::size_t variables = 0;                      ///< N
    std::vector<std::array<Literal, 3>> clauses;    ///< M clauses

    /// Throws unless every clause has three literals on distinct, in-range variables.
    void check() const
    {
        for (std::size_t j = 0; j < clauses.size(); ++j) {
            const auto& c = clauses[j];
            for (std::size_t a = 0; a < 3; ++a) {
                if (c[a] == 0 || static_cast<std::size_t>(std::abs(c[a])) > variables)
                    throw DomainError("clause " + std::to_string(j + 1) + ": literal out of range");
                for (std::size_t b = a + 1; b < 3; ++b)
                    if (std::abs(c[a]) == std::abs(c[b]))
                        throw DomainError("clause " + std::to_string(j + 1) + ": repeated variable");
            }
        }
    }
};

/// Assignment[i] is the value of variable i+1.
using Assignment = std::vector<bool>;

inline bool satisfies(const SatInstance& phi, const Assignment& a)
{
    for (const auto& c : phi.clauses) {
        bool sat = false;
        for (Literal l : c)
            sat = sat || (l > 0 ? a[static_cast<std::size_t>(l - 1)] : !a[static_cast<std::size_t>(-l - 1)]);
        if (!sat)
            return false;
    }
    return true;
}

/// Exhaustive SAT oracle; fine up to ~20 variables.
inline std::optional<Assignment> brute_force_sat(const SatInstance& phi)
{
    const std::size_t n = phi.variables;
    if (n > 24)
        throw DomainError("brute_force_sat: too many variables");
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        Assignment a(n);
        for (std::size_t i = 0; i < n; ++i)
            a[i] = (bits >> i) & 1;
        if (satisfies(phi, a))
            return a;
    }
    return std::nullopt;
}

/// DIMACS CNF; every clause must have exactly three literals on distinct variables.
inline SatInstance parse_dimacs_cnf(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::size_t> declared_clauses;
    SatInstance phi;
    std::vector<Literal> pending;
    std::size_t pending_line = 0;

    auto parse_int = [&](const std::string& t) -> long long {
        char* end = nullptr;
        errno = 0;
        long long v = std::strtoll(t.c_str(), &end, 10);
        if (t.empty() || *end != '\0' || errno == ERANGE || v > 1'000'000 || v < -1'000'000)
            throw InputError("bad integer '" + t + "'", line_no);
        return v;
    };

    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream fields(raw);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;)
            tokens.push_back(t);
        if (tokens.empty() || tokens[0] == "c" || tokens[0][0] == 'c')
            continue;
        if (tokens[0] == "%")
            break;
        if (tokens[0] == "p") {
            if (declared_clauses)
                throw InputError("duplicate header", line_no);
            if (tokens.size() != 4 || tokens[1] != "cnf")
                throw InputError("header must be 'p cnf <vars> <clauses>'", line_no);
            long long nv = parse_int(tokens[2]), nc = parse_int(tokens[3]);
            if (nv < 0 || nc < 0)
                throw InputError("negative count in header", line_no);
            phi.variables = static_cast<std::size_t>(nv);
            declared_clauses = static_cast<std::size_t>(nc);
            continue;
        }
        if (!declared_clauses)
            throw InputError("clause before 'p cnf' header", line_no);
        for (const auto& t : tokens) {
            long long lit = parse_int(t);
            if (pending.empty())
                pending_line = line_no;
            if (lit == 0) {
                if (pending.size() != 3)
                    throw InputError("clause has " + std::to_string(pending.size()) + " literals, expected 3",
                                     pending_line);
                for (std::size_t a = 0; a < 3; ++a)
                    for (std::size_t b = a + 1; b < 3; ++b)
                        if (std::abs(pending[a]) == std::abs(pending[b]))
                            throw InputError("clause repeats variable " + std::to_string(std::abs(pending[a])),
                                             pending_line);
                phi.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
                continue;
            }
            if (static_cast<std::size_t>(std::llabs(lit)) > phi.variables)
                throw InputError("literal " + t + " exceeds declared variable count", line_no);
            pending.push_back(static_cast<Literal>(lit));
        }
    }
    if (!declared_clauses)
        throw InputError("missing 'p cnf' header");
    if (!pending.empty())
        throw InputError("last clause is not terminated by 0", pending_line);
    if (phi.clauses.size() != *declared_clauses)
        throw InputError("header declares " + std::to_string(*declared_clauses) + " clauses, found " +
                         std::to_string(phi.clauses.size()));
    return phi;
}

inline std::string render_dimacs_cnf(const SatInstance& phi)
{
    std::ostringstream out;
    out << "p cnf " << phi.variables << ' ' << phi.clauses.size() << '\n';
    for (const auto& c : phi.clauses)
        out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    return out.str();
}

enum class Role { f_forced, x, x_bar, y, z, h_forced, c };

struct VertexRole {
    Role role;
    std::size_t index; ///< 1-based variable or clause number
};

struct ReductionArtifact {
    Graph graph;
    std::size_t K = 0; ///< 9N + 2M
    std::vector<VertexRole> roles;
    DetectorSet forced; ///< the 8N + 2M gadget-internal detectors
    std::size_t variables = 0;
    std::size_t clause_count = 0;

    VertexId x_vertex(std::size_t i) const { return static_cast<VertexId>(12 * (i - 1) + 8); }
    VertexId x_bar_vertex(std::size_t i) const { return static_cast<VertexId>(12 * (i - 1) + 9); }
    VertexId c_vertex(std::size_t j) const { return static_cast<VertexId>(12 * variables + 3 * (j - 1) + 2); }
};

/// Offsets inside one variable block F_i (12 vertices, 13 edges):
///   0..7   a1 b1 a2 b2 a3 b3 a4 b4   leaf/support pairs, all forced
///   8 x, 9 x_bar, 10 y, 11 z
/// Edges: a_k b_k (4); b1 y, b2 z, b3 x, b4 x_bar; y x, y x_bar, z x, z x_bar; x x_bar.
/// Clause block H_j (3 vertices, 2 edges): d1 - d2 - c, d1 and d2 forced.
inline ReductionArtifact build_reduction(const SatInstance& phi)
{
    phi.check();
    const std::size_t N = phi.variables, M = phi.clauses.size();
    const std::size_t n = 12 * N + 3 * M;
    ReductionArtifact out;
    out.variables = N;
    out.clause_count = M;
    out.K = 9 * N + 2 * M;
    out.roles.resize(n);
    out.forced = DetectorSet(n);
    GraphLabels labels;
    labels.names.resize(n);
    std::vector<Edge> edges;

    for (std::size_t i = 1; i <= N; ++i) {
        const auto base = static_cast<VertexId>(12 * (i - 1));
        const std::string s = std::to_string(i);
        for (VertexId k = 0; k < 4; ++k) {
            VertexId a = base + 2 * k, b = a + 1;
            edges.push_back({a, b});
            out.forced.insert(a);
            out.forced.insert(b);
            out.roles[a] = {Role::f_forced, i};
            out.roles[b] = {Role::f_forced, i};
            labels.names[a] = "a_{" + s + "," + std::to_string(k + 1) + "}";
            labels.names[b] = "b_{" + s + "," + std::to_string(k + 1) + "}";
        }
        const VertexId x = base + 8, xb = base + 9, y = base + 10, z = base + 11;
        edges.push_back({base + 1, y});
        edges.push_back({base + 3, z});
        edges.push_back({base + 5, x});
        edges.push_back({base + 7, xb});
        edges.push_back({y, x});
        edges.push_back({y, xb});
        edges.push_back({z, x});
        edges.push_back({z, xb});
        edges.push_back({x, xb});
        out.roles[x] = {Role::x, i};
        out.roles[xb] = {Role::x_bar, i};
        out.roles[y] = {Role::y, i};
        out.roles[z] = {Role::z, i};
        labels.names[x] = "x_" + s;
        labels.names[xb] = "xbar_" + s;
        labels.names[y] = "y_" + s;
        labels.names[z] = "z_" + s;
    }
    for (std::size_t j = 1; j <= M; ++j) {
        const auto base = static_cast<VertexId>(12 * N + 3 * (j - 1));
        const std::string s = std::to_string(j);
        const VertexId d1 = base, d2 = base + 1, c = base + 2;
        edges.push_back({d1, d2});
        edges.push_back({d2, c});
        out.forced.insert(d1);
        out.forced.insert(d2);
        out.roles[d1] = {Role::h_forced, j};
        out.roles[d2] = {Role::h_forced, j};
        out.roles[c] = {Role::c, j};
        labels.names[d1] = "d_{" + s + ",1}";
        labels.names[d2] = "d_{" + s + ",2}";
        labels.names[c] = "c_" + s;
        for (Literal l : phi.clauses[j - 1]) {
            auto var = static_cast<std::size_t>(std::abs(l));
            edges.push_back({l > 0 ? out.x_vertex(var) : out.x_bar_vertex(var), c});
        }
    }
    out.graph = Graph::from_edges(n, edges, std::move(labels));
    return out;
}

/// One "vertex role" line per vertex.
inline std::string render_role_map(const ReductionArtifact& art)
{
    std::ostringstream out;
    for (VertexId v = 0; v < art.graph.order(); ++v) {
        const auto& r = art.roles[v];
        out << v << ' ';
        switch (r.role) {
        case Role::f_forced: out << "F_" << r.index << ".detector"; break;
        case Role::x: out << "x_" << r.index; break;
        case Role::x_bar: out << "xbar_" << r.index; break;
        case Role::y: out << "y_" << r.index; break;
        case Role::z: out << "z_" << r.index; break;
        case Role::h_forced: out << "H_" << r.index << ".detector"; break;
        case Role::c: out << "c_" << r.index; break;
        }
        out << " (" << art.graph.name(v) << ")\n";
    }
    return out.str();
}

/// The proof's forward direction: forced set plus x_i or x_bar_i by the assignment.
inline DetectorSet assignment_to_detectors(const ReductionArtifact& art, const Assignment& a)
{
    if (a.size() != art.variables)
        throw DomainError("assignment length does not match variable count");
    DetectorSet s = art.forced;
    for (std::size_t i = 1; i <= art.variables; ++i)
        s.insert(a[i - 1] ? art.x_vertex(i) : art.x_bar_vertex(i));
    return s;
}

/// Variable i is true iff x_i is a detector. Needs a RED:LD set of size <= K.
inline Assignment extract_assignment(const ReductionArtifact& art, const DetectorSet& s)
{
    require_same_universe(art.graph, s);
    if (s.size() > art.K)
        throw DomainError("set has " + std::to_string(s.size()) + " detectors, more than K = " +
                          std::to_string(art.K));
    if (!is_redld_set(art.graph, s).ok())
        throw DomainError("set is not a RED:LD set of the reduction graph");
    Assignment a(art.variables);
    for (std::size_t i = 1; i <= art.variables; ++i)
        a[i - 1] = s.contains(art.x_vertex(i));
    return a;
}

struct SatDecision {
    SolveStatus status = SolveStatus::optimal; ///< budget_exceeded leaves the rest unset
    bool satisfiable = false;
    std::size_t optimum = 0;
    std::size_t K = 0;
    std::optional<Assignment> assignment;
    DetectorSet witness;
};

/// Satisfiable iff RED:LD of the reduction graph equals K = 9N + 2M.
inline SatDecision decide_via_redld(const SatInstance& phi, SolveBudget budget = {})
{
    auto art = build_reduction(phi);
    SatDecision out;
    out.K = art.K;
    if (art.graph.order() == 0) {
        out.satisfiable = true;
        out.assignment = Assignment{};
        return out;
    }
    auto r = min_redld(art.graph, budget);
    out.status = r.status;
    if (r.status != SolveStatus::optimal)
        return out;
    out.optimum = r.optimum;
    out.witness = r.witness;
    out.satisfiable = r.optimum == art.K;
    if (out.satisfiable)
        out.assignment = extract_assignment(art, r.witness);
    return out;
}

} // namespace redld
