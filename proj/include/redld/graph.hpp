#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redld/error.hpp"

namespace redld {

/// Dense vertex index in [0, n).
using VertexId = std::uint32_t;

struct Edge {
    VertexId u;
    VertexId v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Optional human-readable names for vertices. Algorithms never look at these.
struct GraphLabels {
    std::vector<std::string> names; ///< empty, or one unique name per vertex
    std::optional<VertexId> root;   ///< distinguished root for rooted builders

    bool empty() const noexcept { return names.empty(); }
};

/// Finite simple undirected graph with sorted adjacency lists.
///
/// Immutable once built; all builders validate simplicity and symmetry.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an edge list. Rejects self-loops, duplicate edges and
    /// out-of-range endpoints.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges, GraphLabels labels = {})
    {
        Graph g;
        g.adjacency_.assign(n, {});
        for (const Edge& e : edges) {
            if (e.u >= n || e.v >= n)
                throw DomainError("edge endpoint out of range");
            if (e.u == e.v)
                throw DomainError("self-loop at vertex " + std::to_string(e.u));
            g.adjacency_[e.u].push_back(e.v);
            g.adjacency_[e.v].push_back(e.u);
        }
        for (auto& list : g.adjacency_) {
            std::sort(list.begin(), list.end());
            if (std::adjacent_find(list.begin(), list.end()) != list.end())
                throw DomainError("duplicate edge");
        }
        g.edge_count_ = edges.size();
        g.set_labels(std::move(labels));
        return g;
    }

    std::size_t order() const noexcept { return adjacency_.size(); }
    std::size_t size() const noexcept { return edge_count_; }

    std::span<const VertexId> neighbors(VertexId v) const
    {
        check(v);
        return adjacency_[v];
    }

    std::size_t degree(VertexId v) const { return neighbors(v).size(); }

    bool has_edge(VertexId u, VertexId v) const
    {
        auto n = neighbors(u);
        check(v);
        return std::binary_search(n.begin(), n.end(), v);
    }

    /// delta(G); 0 for the empty graph.
    std::size_t min_degree() const noexcept
    {
        std::size_t best = adjacency_.empty() ? 0 : adjacency_[0].size();
        for (const auto& list : adjacency_)
            best = std::min(best, list.size());
        return best;
    }

    /// Delta(G); 0 for the empty graph.
    std::size_t max_degree() const noexcept
    {
        std::size_t best = 0;
        for (const auto& list : adjacency_)
            best = std::max(best, list.size());
        return best;
    }

    /// All edges with u < v, ordered by (u, v).
    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (VertexId u = 0; u < order(); ++u)
            for (VertexId v : adjacency_[u])
                if (u < v)
                    out.push_back({u, v});
        return out;
    }

    const GraphLabels& labels() const noexcept { return labels_; }

    /// Label of v, or its decimal index when the graph is unlabeled.
    std::string name(VertexId v) const
    {
        check(v);
        return labels_.empty() ? std::to_string(v) : labels_.names[v];
    }

    std::optional<VertexId> find_label(std::string_view label) const
    {
        for (VertexId v = 0; v < labels_.names.size(); ++v)
            if (labels_.names[v] == label)
                return v;
        return std::nullopt;
    }

    /// Structural equality; labels are ignored.
    friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

    void check(VertexId v) const
    {
        if (v >= order())
            throw DomainError("vertex " + std::to_string(v) + " out of range for graph of order " +
                              std::to_string(order()));
    }

private:
    void set_labels(GraphLabels labels)
    {
        if (!labels.names.empty()) {
            if (labels.names.size() != order())
                throw DomainError("label count does not match vertex count");
            auto sorted = labels.names;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw DomainError("vertex labels must be unique");
        }
        if (labels.root && *labels.root >= order())
            throw DomainError("root out of range");
        labels_ = std::move(labels);
    }

    std::vector<std::vector<VertexId>> adjacency_;
    std::size_t edge_count_ = 0;
    GraphLabels labels_;
};

// ---------------------------------------------------------------------------
// Neighborhoods

inline std::vector<VertexId> open_neighborhood(const Graph& g, VertexId v)
{
    auto n = g.neighbors(v);
    return {n.begin(), n.end()};
}

inline std::vector<VertexId> closed_neighborhood(const Graph& g, VertexId v)
{
    auto out = open_neighborhood(g, v);
    out.insert(std::upper_bound(out.begin(), out.end(), v), v);
    return out;
}

inline std::size_t degree(const Graph& g, VertexId v) { return g.degree(v); }
inline std::size_t min_degree(const Graph& g) { return g.min_degree(); }

/// Connected components, each as an ascending vertex list; components are ordered
/// by their smallest vertex.
inline std::vector<std::vector<VertexId>> connected_components(const Graph& g)
{
    std::vector<int> seen(g.order(), 0);
    std::vector<std::vector<VertexId>> out;
    for (VertexId s = 0; s < g.order(); ++s) {
        if (seen[s])
            continue;
        std::vector<VertexId> comp{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (VertexId w : g.neighbors(comp[i]))
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool is_connected(const Graph& g) { return g.order() <= 1 || connected_components(g).size() == 1; }

inline bool is_tree(const Graph& g) { return g.order() >= 1 && g.size() + 1 == g.order() && is_connected(g); }

/// Subgraph induced by `keep` (any order); vertex i of the result is keep[i].
inline Graph induced_subgraph(const Graph& g, std::span<const VertexId> keep)
{
    std::vector<std::int64_t> index(g.order(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i)
        index[keep[i]] = static_cast<std::int64_t>(i);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (VertexId w : g.neighbors(keep[i]))
            if (index[w] > static_cast<std::int64_t>(i))
                edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(index[w])});
    GraphLabels labels;
    if (!g.labels().empty())
        for (VertexId v : keep)
            labels.names.push_back(g.labels().names[v]);
    return Graph::from_edges(keep.size(), edges, std::move(labels));
}

/// Breadth-first distances from `source`, capped: vertices farther than `limit`
/// are reported as limit + 1.
inline std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source, std::size_t limit)
{
    std::vector<std::size_t> dist(g.order(), limit + 1);
    std::vector<VertexId> frontier{source};
    dist[source] = 0;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        VertexId v = frontier[i];
        if (dist[v] == limit)
            continue;
        for (VertexId w : g.neighbors(v))
            if (dist[w] > dist[v] + 1) {
                dist[w] = dist[v] + 1;
                frontier.push_back(w);
            }
    }
    return dist;
}

// ---------------------------------------------------------------------------
// Named families

inline Graph build_path(std::size_t n)
{
    if (n == 0)
        throw DomainError("path needs at least one vertex");
    std::vector<Edge> edges;
    GraphLabels labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.names.push_back("v_" + std::to_string(i + 1));
        if (i + 1 < n)
            edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
    }
    return Graph::from_edges(n, edges, std::move(labels));
}

inline Graph build_cycle(std::size_t n)
{
    if (n < 3)
        throw DomainError("cycle needs at least three vertices");
    std::vector<Edge> edges;
    GraphLabels labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.names.push_back("v_" + std::to_string(i + 1));
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n)});
    }
    return Graph::from_edges(n, edges, std::move(labels));
}

/// Index of v_{i,j} (1-based i in 1..k, j in 1..2) in build_ladder(k).
constexpr VertexId ladder_vertex(std::size_t i, std::size_t j)
{
    return static_cast<VertexId>(2 * (i - 1) + (j - 1));
}

/// P_k box P_2.
inline Graph build_ladder(std::size_t k)
{
    if (k == 0)
        throw DomainError("ladder needs at least one rung");
    std::vector<Edge> edges;
    GraphLabels labels;
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= 2; ++j)
            labels.names.push_back("v_{" + std::to_string(i) + "," + std::to_string(j) + "}");
        edges.push_back({ladder_vertex(i, 1), ladder_vertex(i, 2)});
        if (i < k) {
            edges.push_back({ladder_vertex(i, 1), ladder_vertex(i + 1, 1)});
            edges.push_back({ladder_vertex(i, 2), ladder_vertex(i + 1, 2)});
        }
    }
    return Graph::from_edges(2 * k, edges, std::move(labels));
}

/// Vertex i is the bit string of i; edges join strings at Hamming distance 1.
inline Graph build_hypercube(std::size_t d)
{
    if (d == 0)
        throw DomainError("hypercube dimension must be positive");
    if (d > 20)
        throw DomainError("hypercube dimension too large");
    const std::size_t n = std::size_t{1} << d;
    std::vector<Edge> edges;
    GraphLabels labels;
    for (std::size_t v = 0; v < n; ++v) {
        std::string bits;
        for (std::size_t b = d; b-- > 0;)
            bits.push_back((v >> b) & 1 ? '1' : '0');
        labels.names.push_back(bits);
        for (std::size_t b = 0; b < d; ++b) {
            std::size_t w = v ^ (std::size_t{1} << b);
            if (v < w)
                edges.push_back({static_cast<VertexId>(v), static_cast<VertexId>(w)});
        }
    }
    return Graph::from_edges(n, edges, std::move(labels));
}

/// Complete k-ary tree in breadth-first order: the root is vertex 0 and the
/// children of vertex v are k*v+1 .. k*v+k.
inline Graph build_kary_tree(std::size_t k, std::size_t depth)
{
    if (k < 2)
        throw DomainError("k-ary tree needs k >= 2");
    std::size_t n = 1, level = 1;
    for (std::size_t d = 1; d <= depth; ++d) {
        level *= k;
        n += level;
        if (n > (std::size_t{1} << 26))
            throw DomainError("k-ary tree too large");
    }
    std::vector<Edge> edges;
    GraphLabels labels;
    std::size_t width = 1;
    for (std::size_t d = 0; d <= depth; ++d) {
        for (std::size_t p = 0; p < width; ++p)
            labels.names.push_back("v_{" + std::to_string(d) + "," + std::to_string(p + 1) + "}");
        width *= k;
    }
    for (std::size_t v = 1; v < n; ++v)
        edges.push_back({static_cast<VertexId>((v - 1) / k), static_cast<VertexId>(v)});
    labels.root = 0;
    return Graph::from_edges(n, edges, std::move(labels));
}

/// Petersen graph: outer cycle v_1..v_5, inner pentagram v_6 v_8 v_10 v_7 v_9,
/// spokes v_i v_{i+5}. Vertex v_i has index i-1.
inline Graph build_petersen()
{
    std::vector<Edge> edges;
    GraphLabels labels;
    for (VertexId i = 0; i < 5; ++i) {
        edges.push_back({i, static_cast<VertexId>((i + 1) % 5)});
        edges.push_back({static_cast<VertexId>(5 + i), static_cast<VertexId>(5 + (i + 2) % 5)});
        edges.push_back({i, static_cast<VertexId>(i + 5)});
    }
    for (int i = 1; i <= 10; ++i)
        labels.names.push_back("v_" + std::to_string(i));
    return Graph::from_edges(10, edges, std::move(labels));
}

inline Graph build_complete_multipartite(std::span<const std::size_t> part_sizes)
{
    if (part_sizes.size() < 2)
        throw DomainError("complete multipartite graph needs at least two parts");
    std::vector<std::size_t> part_of;
    for (std::size_t p = 0; p < part_sizes.size(); ++p) {
        if (part_sizes[p] == 0)
            throw DomainError("empty part");
        part_of.insert(part_of.end(), part_sizes[p], p);
    }
    std::vector<Edge> edges;
    for (VertexId u = 0; u < part_of.size(); ++u)
        for (VertexId v = u + 1; v < part_of.size(); ++v)
            if (part_of[u] != part_of[v])
                edges.push_back({u, v});
    return Graph::from_edges(part_of.size(), edges);
}

inline Graph build_complete_multipartite(std::initializer_list<std::size_t> part_sizes)
{
    return build_complete_multipartite(std::span<const std::size_t>(part_sizes.begin(), part_sizes.size()));
}

inline Graph build_complete(std::size_t n)
{
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            edges.push_back({u, v});
    return Graph::from_edges(n, edges);
}

/// Disjoint union; vertices of `b` are shifted by a.order().
inline Graph disjoint_union(const Graph& a, const Graph& b)
{
    auto edges = a.edges();
    const auto shift = static_cast<VertexId>(a.order());
    for (Edge e : b.edges())
        edges.push_back({e.u + shift, e.v + shift});
    return Graph::from_edges(a.order() + b.order(), edges);
}

// ---------------------------------------------------------------------------
// Edge-list text format
//
//   n
//   u v
//   ...
//
// 0-indexed, whitespace separated, '#' starts a comment running to end of line.

inline Graph parse_edge_list(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    std::vector<std::vector<VertexId>> seen;

    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream fields(raw);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;)
            tokens.push_back(t);
        if (tokens.empty())
            continue;

        auto to_index = [&](const std::string& t) -> std::uint64_t {
            if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
                throw InputError("expected a non-negative integer, got '" + t + "'", line_no);
            if (t.size() > 9)
                throw InputError("integer too large: " + t, line_no);
            return std::stoull(t);
        };

        if (!n) {
            if (tokens.size() != 1)
                throw InputError("first line must hold the vertex count", line_no);
            n = to_index(tokens[0]);
            seen.assign(*n, {});
            continue;
        }
        if (tokens.size() != 2)
            throw InputError("expected an edge 'u v'", line_no);
        std::uint64_t u = to_index(tokens[0]), v = to_index(tokens[1]);
        if (u >= *n || v >= *n)
            throw InputError("vertex index out of range (n = " + std::to_string(*n) + ")", line_no);
        if (u == v)
            throw InputError("self-loop at vertex " + std::to_string(u), line_no);
        auto& su = seen[u];
        if (std::find(su.begin(), su.end(), static_cast<VertexId>(v)) != su.end())
            throw InputError("duplicate edge " + std::to_string(u) + " " + std::to_string(v), line_no);
        su.push_back(static_cast<VertexId>(v));
        seen[v].push_back(static_cast<VertexId>(u));
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
    }
    if (!n)
        throw InputError("missing vertex count");
    return Graph::from_edges(*n, edges);
}

inline std::string render_edge_list(const Graph& g)
{
    std::ostringstream out;
    out << g.order() << '\n';
    for (Edge e : g.edges())
        out << e.u << ' ' << e.v << '\n';
    return out.str();
}

} // namespace redld
