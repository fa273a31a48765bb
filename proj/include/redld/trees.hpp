#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "redld/detector_set.hpp"
#include "redld/error.hpp"
#include "redld/graph.hpp"
#include "redld/solver.hpp"
#include "redld/verify.hpp"

namespace redld {

/// Center-rooted AHU string; equal iff the trees are isomorphic.
using CanonicalTreeCode = std::string;

struct TreeWithCode {
    CanonicalTreeCode code;
    Graph tree;
};

inline void require_tree(const Graph& g)
{
    if (!is_tree(g))
        throw DomainError("graph is not a tree");
}

namespace detail {

/// Rooted AHU code. `marks` (optional) wraps marked vertices in [] instead of ().
inline std::string rooted_code(const Graph& g, VertexId root, const DetectorSet* marks)
{
    const std::size_t n = g.order();
    std::vector<VertexId> order, parent(n, static_cast<VertexId>(n));
    order.reserve(n);
    order.push_back(root);
    parent[root] = root;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (VertexId w : g.neighbors(order[i]))
            if (parent[w] == n) {
                parent[w] = order[i];
                order.push_back(w);
            }
    std::vector<std::vector<std::string>> kids(n);
    std::vector<std::string> code(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        auto& c = kids[v];
        std::sort(c.begin(), c.end());
        const bool marked = marks && marks->contains(v);
        std::string s(1, marked ? '[' : '(');
        for (auto& k : c)
            s += k;
        s += marked ? ']' : ')';
        c.clear();
        if (v != root)
            kids[parent[v]].push_back(std::move(s));
        else
            code[v] = std::move(s);
    }
    return code[root];
}

inline std::vector<VertexId> tree_centers(const Graph& g)
{
    const std::size_t n = g.order();
    if (n <= 2) {
        std::vector<VertexId> all;
        for (VertexId v = 0; v < n; ++v)
            all.push_back(v);
        return all;
    }
    std::vector<std::size_t> deg(n);
    std::vector<VertexId> layer;
    for (VertexId v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        if (deg[v] <= 1)
            layer.push_back(v);
    }
    std::size_t remaining = n;
    while (remaining > 2) {
        remaining -= layer.size();
        std::vector<VertexId> next;
        for (VertexId v : layer)
            for (VertexId w : g.neighbors(v))
                if (--deg[w] == 1)
                    next.push_back(w);
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

inline CanonicalTreeCode canonical(const Graph& g, const DetectorSet* marks)
{
    require_tree(g);
    std::string best;
    for (VertexId c : tree_centers(g)) {
        auto s = rooted_code(g, c, marks);
        if (best.empty() || s < best)
            best = std::move(s);
    }
    return best;
}

inline Graph add_leaf(const Graph& g, VertexId at)
{
    auto edges = g.edges();
    edges.push_back({at, static_cast<VertexId>(g.order())});
    return Graph::from_edges(g.order() + 1, edges);
}

} // namespace detail

inline CanonicalTreeCode canonical_code(const Graph& tree) { return detail::canonical(tree, nullptr); }

/// Canonical code of a tree with a marked vertex subset; equal iff some
/// isomorphism maps one marked set onto the other.
inline CanonicalTreeCode canonical_code(const Graph& tree, const DetectorSet& marks)
{
    require_same_universe(tree, marks);
    return detail::canonical(tree, &marks);
}

/// All free trees of order n up to isomorphism, sorted by code.
inline std::vector<TreeWithCode> all_free_trees(std::size_t n)
{
    if (n == 0)
        throw DomainError("trees need n >= 1");
    std::map<CanonicalTreeCode, Graph> level;
    Graph one = Graph::from_edges(1, std::vector<Edge>{});
    level.emplace(canonical_code(one), one);
    for (std::size_t size = 1; size < n; ++size) {
        std::map<CanonicalTreeCode, Graph> next;
        for (const auto& [code, t] : level)
            for (VertexId v = 0; v < t.order(); ++v) {
                Graph grown = detail::add_leaf(t, v);
                next.try_emplace(canonical_code(grown), std::move(grown));
            }
        level = std::move(next);
    }
    std::vector<TreeWithCode> out;
    for (auto& [code, t] : level)
        out.push_back({code, t});
    return out;
}

inline Graph tree_from_prufer(std::span<const VertexId> seq)
{
    const std::size_t n = seq.size() + 2;
    std::vector<std::size_t> deg(n, 1);
    for (VertexId v : seq) {
        if (v >= n)
            throw DomainError("Pruefer entry out of range");
        ++deg[v];
    }
    std::set<VertexId> leaves;
    for (VertexId v = 0; v < n; ++v)
        if (deg[v] == 1)
            leaves.insert(v);
    std::vector<Edge> edges;
    for (VertexId v : seq) {
        VertexId leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.push_back({leaf, v});
        if (--deg[v] == 1)
            leaves.insert(v);
    }
    edges.push_back({*leaves.begin(), *std::next(leaves.begin())});
    return Graph::from_edges(n, edges);
}

/// Uniform random labeled tree on n >= 2 vertices.
template <class Rng>
Graph random_tree(std::size_t n, Rng& rng)
{
    if (n < 2)
        throw DomainError("random trees need n >= 2");
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    std::vector<VertexId> seq(n - 2);
    for (auto& v : seq)
        v = pick(rng);
    return tree_from_prufer(seq);
}

// ---- T_max --------------------------------------------------------------

inline bool is_leaf(const Graph& t, VertexId v) { return t.degree(v) == 1; }

inline bool is_support(const Graph& t, VertexId v)
{
    for (VertexId w : t.neighbors(v))
        if (is_leaf(t, w))
            return true;
    return false;
}

inline std::size_t leaf_count_around(const Graph& t, VertexId v)
{
    std::size_t c = 0;
    for (VertexId w : t.neighbors(v))
        c += is_leaf(t, w) ? 1 : 0;
    return c;
}

/// Every vertex is a leaf or a support vertex.
inline bool is_tmax(const Graph& t)
{
    require_tree(t);
    if (t.order() < 2)
        throw DomainError("is_tmax needs n >= 2");
    for (VertexId v = 0; v < t.order(); ++v)
        if (!is_leaf(t, v) && !is_support(t, v))
            return false;
    return true;
}

struct TmaxExtension {
    VertexId attach;
    Graph tree; ///< new leaf has index n
};

/// Leaf attachments that stay in T_max: at a support vertex, or at a leaf whose
/// support vertex has at least two leaves.
inline std::vector<TmaxExtension> tmax_extensions(const Graph& t)
{
    if (!is_tmax(t))
        throw DomainError("tmax_extensions needs a tree in T_max");
    std::vector<TmaxExtension> out;
    for (VertexId u = 0; u < t.order(); ++u) {
        bool ok = is_support(t, u);
        if (!ok && is_leaf(t, u))
            ok = leaf_count_around(t, t.neighbors(u)[0]) >= 2;
        if (ok)
            out.push_back({u, detail::add_leaf(t, u)});
    }
    return out;
}

/// Leaves whose removal stays in T_max: a leaf with a sibling leaf, or a leaf
/// whose support vertex has degree 2.
inline std::vector<VertexId> tmax_removals(const Graph& t)
{
    if (!is_tmax(t))
        throw DomainError("tmax_removals needs a tree in T_max");
    if (t.order() < 3)
        throw DomainError("tmax_removals needs n >= 3");
    std::vector<VertexId> out;
    for (VertexId v = 0; v < t.order(); ++v) {
        if (!is_leaf(t, v))
            continue;
        VertexId s = t.neighbors(v)[0];
        if (leaf_count_around(t, s) >= 2 || t.degree(s) == 2)
            out.push_back(v);
    }
    return out;
}

/// All of T_max at order n, grown from P_2 by tmax_extensions.
inline std::vector<TreeWithCode> enumerate_tmax(std::size_t n)
{
    if (n < 2)
        throw DomainError("enumerate_tmax needs n >= 2");
    std::map<CanonicalTreeCode, Graph> level;
    Graph p2 = build_path(2);
    level.emplace(canonical_code(p2), p2);
    for (std::size_t size = 2; size < n; ++size) {
        std::map<CanonicalTreeCode, Graph> next;
        for (const auto& [code, t] : level)
            for (auto& ext : tmax_extensions(t))
                next.try_emplace(canonical_code(ext.tree), std::move(ext.tree));
        level = std::move(next);
    }
    std::vector<TreeWithCode> out;
    for (auto& [code, t] : level)
        out.push_back({code, t});
    return out;
}

// ---- T_min --------------------------------------------------------------

/// The degree used for the connecting vertex w of a stripped triple.
enum class Deg0 {
    current,  ///< degree in the tree passed to the current recursive call
    original, ///< degree in the input tree
    both,     ///< degree 2 in both, i.e. w has not lost a neighbor to an earlier strip
};

struct StripResult {
    std::vector<VertexId> pairs;        ///< stripped (u, v) vertices, detectors
    std::vector<VertexId> nondetectors; ///< stripped w vertices
    std::vector<VertexId> residual;     ///< remaining vertices, ascending
};

namespace detail {

/// Vertex-subset view of a tree used by the classification algorithms.
class Forest {
public:
    Forest(const Graph& g, std::span<const VertexId> alive) : g_(g), alive_(g.order(), 0), deg_(g.order(), 0)
    {
        for (VertexId v : alive)
            alive_[v] = 1;
        for (VertexId v : alive)
            for (VertexId w : g.neighbors(v))
                deg_[v] += alive_[w];
        count_ = alive.size();
    }

    bool alive(VertexId v) const { return alive_[v]; }
    std::size_t degree(VertexId v) const { return deg_[v]; }
    std::size_t count() const { return count_; }

    std::vector<VertexId> live_neighbors(VertexId v) const
    {
        std::vector<VertexId> out;
        for (VertexId w : g_.neighbors(v))
            if (alive_[w])
                out.push_back(w);
        return out;
    }

    void remove(VertexId v)
    {
        alive_[v] = 0;
        --count_;
        for (VertexId w : g_.neighbors(v))
            if (alive_[w])
                --deg_[w];
    }

    std::vector<VertexId> vertices() const
    {
        std::vector<VertexId> out;
        for (VertexId v = 0; v < g_.order(); ++v)
            if (alive_[v])
                out.push_back(v);
        return out;
    }

    /// Vertices reachable from `start` without passing through `blocked`.
    std::vector<VertexId> component(VertexId start, VertexId blocked) const
    {
        std::vector<VertexId> out{start};
        std::vector<unsigned char> seen(g_.order(), 0);
        seen[start] = 1;
        seen[blocked] = 1;
        for (std::size_t i = 0; i < out.size(); ++i)
            for (VertexId w : g_.neighbors(out[i]))
                if (alive_[w] && !seen[w]) {
                    seen[w] = 1;
                    out.push_back(w);
                }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    const Graph& g_;
    std::vector<unsigned char> alive_;
    std::vector<std::size_t> deg_;
    std::size_t count_ = 0;
};

inline std::size_t deg0_of(const Graph& g, const Forest& f, VertexId w, Deg0 mode)
{
    switch (mode) {
    case Deg0::current: return f.degree(w);
    case Deg0::original: return g.degree(w);
    case Deg0::both: return f.degree(w) == g.degree(w) ? g.degree(w) : 0;
    }
    return 0;
}

inline std::vector<VertexId> all_vertices(const Graph& g)
{
    std::vector<VertexId> out(g.order());
    for (VertexId v = 0; v < g.order(); ++v)
        out[v] = v;
    return out;
}

/// Exterior-P_2 stripping on a vertex subset of g. Triples are taken in increasing order of
/// the leaf u.
inline StripResult strip(const Graph& g, std::span<const VertexId> subset, std::size_t q, Deg0 mode)
{
    Forest f(g, subset);
    StripResult out;
    auto deg0 = [&](VertexId w) { return deg0_of(g, f, w, mode); };
    while (f.count() >= q) {
        bool found = false;
        for (VertexId u = 0; u < g.order() && !found; ++u) {
            if (!f.alive(u) || f.degree(u) != 1)
                continue;
            VertexId v = f.live_neighbors(u)[0];
            if (f.degree(v) != 2)
                continue;
            auto nv = f.live_neighbors(v);
            VertexId w = nv[0] == u ? nv[1] : nv[0];
            if (deg0(w) != 2)
                continue;
            f.remove(u);
            f.remove(v);
            f.remove(w);
            out.pairs.push_back(u);
            out.pairs.push_back(v);
            out.nondetectors.push_back(w);
            found = true;
        }
        if (!found)
            break;
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    std::sort(out.nondetectors.begin(), out.nondetectors.end());
    out.residual = f.vertices();
    return out;
}

inline std::vector<VertexId> merged(std::vector<VertexId> a, std::span<const VertexId> b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
}

/// Lower-bound test for n = 2 mod 3 on a vertex subset; empty result means "not extremal".
inline std::vector<VertexId> extremal_2(const Graph& g, std::span<const VertexId> subset, Deg0 mode)
{
    auto s = strip(g, subset, 0, mode);
    if (s.residual.size() != 2 || !g.has_edge(s.residual[0], s.residual[1]))
        return {};
    return merged(s.residual, s.pairs);
}

/// Lower-bound test for n = 0 mod 3.
inline std::vector<VertexId> extremal_0(const Graph& g, Deg0 mode)
{
    auto all = all_vertices(g);
    auto s = strip(g, all, 0, mode);
    if (s.residual.size() != 3)
        return {};
    return merged(s.residual, s.pairs);
}

inline const CanonicalTreeCode& t7_code()
{
    static const CanonicalTreeCode code = [] {
        std::vector<Edge> e{{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}};
        return canonical_code(Graph::from_edges(7, e));
    }();
    return code;
}

inline const CanonicalTreeCode& t7_pair_code()
{
    static const CanonicalTreeCode code = [] {
        std::vector<Edge> e{{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {1, 6}, {6, 7}, {1, 8}, {8, 9}};
        return canonical_code(Graph::from_edges(10, e));
    }();
    return code;
}

/// Lower-bound test for n = 1 mod 3.
inline std::vector<VertexId> extremal_1(const Graph& g, Deg0 mode)
{
    auto all = all_vertices(g);
    auto s = strip(g, all, 5, mode);
    const auto& r = s.residual;
    if (r.size() <= 3)
        return {};
    if (r.size() == 4)
        return merged(r, s.pairs);

    Forest f(g, r);
    auto deg0 = [&](VertexId w) { return deg0_of(g, f, w, mode); };

    // T_7, or two T_7 centers joined by an edge (the three-way rule attached
    // through the middle non-detector of a P_5); centers must be untouched
    if (r.size() == 7 || r.size() == 10) {
        Graph sub = induced_subgraph(g, r);
        const auto& target = r.size() == 7 ? t7_code() : t7_pair_code();
        if (is_tree(sub) && canonical_code(sub) == target) {
            std::vector<VertexId> keep;
            bool untouched = true;
            for (VertexId v : r) {
                if (f.degree(v) != 3)
                    keep.push_back(v);
                else
                    untouched = untouched && deg0(v) == 3;
            }
            if (untouched)
                return merged(keep, s.pairs);
        }
    }

    // 3-vertex components hanging off a degree-2 parent
    struct Branch {
        std::vector<VertexId> vertices;
        VertexId parent;
    };
    std::vector<Branch> branches;
    for (VertexId w : r) {
        if (deg0(w) != 2 || f.degree(w) != 2)
            continue;
        for (VertexId x : f.live_neighbors(w)) {
            auto comp = f.component(x, w);
            if (comp.size() == 3)
                branches.push_back({comp, w});
        }
    }
    for (std::size_t i = 0; i < branches.size(); ++i)
        for (std::size_t j = i + 1; j < branches.size(); ++j) {
            const auto& b1 = branches[i];
            const auto& b2 = branches[j];
            auto contains = [](const std::vector<VertexId>& vs, VertexId x) {
                return std::binary_search(vs.begin(), vs.end(), x);
            };
            bool disjoint = !contains(b1.vertices, b2.parent) && !contains(b2.vertices, b1.parent);
            for (VertexId x : b1.vertices)
                disjoint = disjoint && !contains(b2.vertices, x);
            if (!disjoint)
                continue;
            auto both = merged(b1.vertices, b2.vertices);
            if (b1.parent == b2.parent)
                return merged(both, s.pairs);
            std::vector<VertexId> rest;
            for (VertexId v : r)
                if (!contains(both, v) && v != b1.parent && v != b2.parent)
                    rest.push_back(v);
            auto inner = extremal_2(g, rest, mode);
            if (inner.empty())
                return {};
            return merged(merged(both, inner), s.pairs);
        }
    return {};
}

} // namespace detail

/// Exterior-P_2 stripping on the whole tree.
inline StripResult strip_exterior_p2(const Graph& t, std::size_t q, Deg0 mode = Deg0::both)
{
    require_tree(t);
    auto all = detail::all_vertices(t);
    return detail::strip(t, all, q, mode);
}

struct TminClass {
    std::size_t residue = 0;
    bool member = false;
    DetectorSet witness;
};

/// Algorithms 2-4, dispatched on n mod 3.
inline TminClass classify_tmin(const Graph& t, Deg0 mode = Deg0::both)
{
    require_tree(t);
    if (t.order() < 2)
        throw DomainError("classify_tmin needs n >= 2");
    TminClass out;
    out.residue = t.order() % 3;
    std::vector<VertexId> set;
    switch (out.residue) {
    case 2: {
        auto all = detail::all_vertices(t);
        set = detail::extremal_2(t, all, mode);
        break;
    }
    case 0: set = detail::extremal_0(t, mode); break;
    default: set = detail::extremal_1(t, mode); break;
    }
    out.member = !set.empty();
    out.witness = DetectorSet(t.order(), set);
    return out;
}

/// True iff S 2-dominates every vertex; on a tree that makes S a RED:LD set.
inline bool is_2dom_redld_on_tree(const Graph& t, const DetectorSet& s)
{
    require_tree(t);
    require_same_universe(t, s);
    for (VertexId v = 0; v < t.order(); ++v)
        if (domination_count(t, s, v) < 2)
            return false;
    return true;
}

struct TminMember {
    CanonicalTreeCode code;
    Graph tree;
    DetectorSet witness;           ///< one optimal set on `tree`
    std::size_t witness_classes;   ///< optimal sets produced, up to automorphism
};

namespace detail {

struct Labeled {
    Graph tree;
    DetectorSet set;
};

/// Disjoint union of the parts plus a new vertex joined to one chosen vertex per part.
inline Labeled join(std::span<const Labeled* const> parts, std::span<const VertexId> attach)
{
    std::vector<Edge> edges;
    std::vector<VertexId> members;
    VertexId offset = 0;
    std::vector<VertexId> hubs;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (Edge e : parts[i]->tree.edges())
            edges.push_back({e.u + offset, e.v + offset});
        for (VertexId v : parts[i]->set.members())
            members.push_back(v + offset);
        hubs.push_back(attach[i] + offset);
        offset += static_cast<VertexId>(parts[i]->tree.order());
    }
    for (VertexId h : hubs)
        edges.push_back({h, offset});
    const std::size_t n = offset + 1;
    return {Graph::from_edges(n, edges), DetectorSet(n, members)};
}

} // namespace detail

/// All of T_min at order n with every optimal set, built bottom-up from P_2, P_3,
/// P_4 and K_{1,3} by the three combination rules.
inline std::vector<TminMember> enumerate_tmin(std::size_t n)
{
    using detail::Labeled;
    if (n < 2)
        throw DomainError("enumerate_tmin needs n >= 2");
    // by_order[m]: marked code -> (tree, witness)
    std::vector<std::map<CanonicalTreeCode, Labeled>> by_order(n + 1);
    auto add = [&](Labeled item) {
        auto code = canonical_code(item.tree, item.set);
        by_order[item.tree.order()].try_emplace(std::move(code), std::move(item));
    };
    for (Graph g : {build_path(2), build_path(3), build_path(4), build_complete_multipartite({1, 3})})
        if (g.order() <= n)
            add({g, DetectorSet::all(g.order())});

    auto items = [&](std::size_t m) {
        std::vector<const Labeled*> out;
        if (m >= 2 && m <= n)
            for (const auto& [code, item] : by_order[m])
                out.push_back(&item);
        return out;
    };

    for (std::size_t m = 5; m <= n; ++m) {
        std::vector<Labeled> made;
        // pairs (a, b) with residues (2,2), (0,2), (0,0), (1,2); both endpoints detectors
        for (std::size_t a = 2; a + 3 <= m; ++a) {
            const std::size_t b = m - 1 - a;
            const std::size_t ra = a % 3, rb = b % 3;
            const bool allowed = (ra == 2 && rb == 2) || (ra == 0 && rb == 2) || (ra == 0 && rb == 0) ||
                                 (ra == 1 && rb == 2);
            if (!allowed)
                continue;
            for (const Labeled* x : items(a))
                for (const Labeled* y : items(b))
                    for (VertexId wx : x->set.members())
                        for (VertexId wy : y->set.members()) {
                            const Labeled* parts[] = {x, y};
                            const VertexId at[] = {wx, wy};
                            made.push_back(detail::join(parts, at));
                        }
        }
        // triples of T_min^2 trees; at least two attachment points are detectors
        for (std::size_t a = 2; a <= m; a += 3)
            for (std::size_t b = 2; a + b + 3 <= m; b += 3) {
                const std::size_t c = m - 1 - a - b;
                if (c % 3 != 2)
                    continue;
                for (const Labeled* x : items(a))
                    for (const Labeled* y : items(b))
                        for (const Labeled* z : items(c))
                            for (VertexId wx = 0; wx < a; ++wx)
                                for (VertexId wy = 0; wy < b; ++wy)
                                    for (VertexId wz = 0; wz < c; ++wz) {
                                        int hits = x->set.contains(wx) + y->set.contains(wy) + z->set.contains(wz);
                                        if (hits < 2)
                                            continue;
                                        const Labeled* parts[] = {x, y, z};
                                        const VertexId at[] = {wx, wy, wz};
                                        made.push_back(detail::join(parts, at));
                                    }
            }
        for (auto& item : made)
            add(std::move(item));
    }

    std::map<CanonicalTreeCode, TminMember> grouped;
    for (const auto& [marked, item] : by_order[n]) {
        auto code = canonical_code(item.tree);
        auto [it, fresh] = grouped.try_emplace(code, TminMember{code, item.tree, item.set, 0});
        ++it->second.witness_classes;
    }
    std::vector<TminMember> out;
    for (auto& [code, member] : grouped)
        out.push_back(std::move(member));
    return out;
}

} // namespace redld
