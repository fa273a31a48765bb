#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "redld/detector_set.hpp"
#include "redld/error.hpp"
#include "redld/graph.hpp"
#include "redld/verify.hpp"

namespace redld {

enum class Objective { ld, redld };

enum class SolveStatus {
    optimal,         ///< optimum and witness are exact
    infeasible,      ///< no set with the property exists
    budget_exceeded, ///< search stopped early; optimum and witness are meaningless
};

struct SolveBudget {
    std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
    double max_seconds = std::numeric_limits<double>::infinity();
};

struct SolveResult {
    SolveStatus status = SolveStatus::optimal;
    std::size_t optimum = 0;
    DetectorSet witness; ///< lexicographically smallest minimum set
    std::uint64_t nodes = 0;

    bool infeasible() const noexcept { return status == SolveStatus::infeasible; }
    bool budget_exceeded() const noexcept { return status == SolveStatus::budget_exceeded; }
};

inline bool redld_exists(const Graph& g) { return g.order() > 0 && g.min_degree() >= 1; }

/// Vertices in every redundant LD set: closed neighborhoods of leaves plus both
/// members of every twin pair.
inline DetectorSet forced_detectors(const Graph& g)
{
    DetectorSet forced(g.order());
    for (VertexId v = 0; v < g.order(); ++v)
        if (g.degree(v) == 1)
            for (VertexId w : closed_neighborhood(g, v))
                forced.insert(w);
    for (auto [u, v] : find_twins(g)) {
        forced.insert(u);
        forced.insert(v);
    }
    return forced;
}

/// ceil((2n + 2) / 3), the minimum over all trees of order n >= 2.
inline std::size_t tree_lower_bound(std::size_t n)
{
    if (n < 2)
        throw DomainError("tree lower bound needs n >= 2");
    return (2 * n + 2 + 2) / 3;
}

namespace detail {

class BudgetExceeded {};

/// Shared node/time accounting across the phases of one solve.
class BudgetTracker {
public:
    explicit BudgetTracker(SolveBudget budget)
        : budget_(budget), start_(std::chrono::steady_clock::now())
    {
    }

    void tick()
    {
        ++nodes_;
        if (nodes_ > budget_.max_nodes)
            throw BudgetExceeded{};
        if ((nodes_ & 1023) == 0) {
            std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
            if (elapsed.count() > budget_.max_seconds)
                throw BudgetExceeded{};
        }
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    SolveBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
};

/// Branch-and-bound over include/exclude decisions with constraint propagation.
///
/// Constraints (threshold t = 2 for redundant sets, 1 for plain LD):
///  - every v: |N[v] & S| >= t;
///  - pairs u, v at distance <= 2, with C = (N(u) ^ N(v)) - {u, v}:
///      both excluded        -> |C & S| >= t
///      one in, one excluded -> |C & S| >= 1 (redundant only)
/// Farther pairs are implied by the domination constraint.
class Search {
public:
    Search(const Graph& g, Objective objective, BudgetTracker& budget)
        : g_(g), objective_(objective), budget_(budget), threshold_(objective == Objective::redld ? 2 : 1),
          status_(g.order(), undecided), in_count_(g.order(), 0), avail_count_(g.order(), 0),
          pairs_by_candidate_(g.order()), pairs_by_endpoint_(g.order())
    {
        const std::size_t n = g.order();
        for (VertexId v = 0; v < n; ++v)
            avail_count_[v] = static_cast<int>(g.degree(v)) + 1;
        for (VertexId u = 0; u < n; ++u) {
            auto dist = bfs_distances(g, u, 2);
            for (VertexId v = u + 1; v < n; ++v) {
                if (dist[v] > 2)
                    continue;
                Pair p{u, v, {}, 0, 0};
                auto nu = g.neighbors(u), nv = g.neighbors(v);
                std::set_symmetric_difference(nu.begin(), nu.end(), nv.begin(), nv.end(),
                                              std::back_inserter(p.candidates));
                std::erase_if(p.candidates, [&](VertexId w) { return w == u || w == v; });
                p.avail = static_cast<int>(p.candidates.size());
                const auto index = pairs_.size();
                for (VertexId w : p.candidates)
                    pairs_by_candidate_[w].push_back(index);
                pairs_by_endpoint_[u].push_back(index);
                pairs_by_endpoint_[v].push_back(index);
                pairs_.push_back(std::move(p));
            }
        }
        std::size_t max_closed = 1;
        for (VertexId v = 0; v < n; ++v)
            max_closed = std::max(max_closed, g.degree(v) + 1);
        global_lower_bound_ = (threshold_ * n + max_closed - 1) / max_closed;
        if (objective_ == Objective::redld && n >= 2 && is_tree(g))
            global_lower_bound_ = std::max(global_lower_bound_, tree_lower_bound(n));
    }

    std::size_t global_lower_bound() const noexcept { return global_lower_bound_; }

    std::size_t checkpoint() const noexcept { return trail_.size(); }

    void rollback(std::size_t mark)
    {
        while (trail_.size() > mark) {
            VertexId v = trail_.back();
            trail_.pop_back();
            unassign(v);
        }
    }

    bool decided(VertexId v) const { return status_[v] != undecided; }

    /// Fixes v permanently (until rollback) and propagates. Returns false, with
    /// the state restored, on contradiction.
    bool fix(VertexId v, bool in)
    {
        const auto mark = checkpoint();
        if (!decide(v, in ? included : excluded) || !propagate()) {
            rollback(mark);
            return false;
        }
        return true;
    }

    /// Searches for a set of size < `limit`. In first-only mode the first such set
    /// is returned; otherwise the smallest. Returns nullopt when none exists.
    std::optional<std::vector<VertexId>> minimize(std::size_t limit, bool first_only)
    {
        best_.reset();
        limit_ = limit;
        first_only_ = first_only;
        const auto mark = checkpoint();
        if (!propagate()) {
            rollback(mark);
            return std::nullopt;
        }
        recurse();
        rollback(mark);
        return best_;
    }

private:
    static constexpr signed char undecided = -1;
    static constexpr signed char excluded = 0;
    static constexpr signed char included = 1;

    struct Pair {
        VertexId u, v;
        std::vector<VertexId> candidates;
        int in;
        int avail;
    };

    int pair_need(signed char a, signed char b) const
    {
        if (a == included && b == included)
            return 0;
        if (a == excluded && b == excluded)
            return threshold_;
        return objective_ == Objective::redld ? 1 : 0;
    }

    bool decide(VertexId v, signed char value)
    {
        if (status_[v] != undecided)
            return status_[v] == value;
        status_[v] = value;
        trail_.push_back(v);
        if (value == included)
            ++selected_;
        for (VertexId w : g_.neighbors(v))
            touch_closed(w, value);
        touch_closed(v, value);
        for (auto p : pairs_by_candidate_[v]) {
            if (value == included)
                ++pairs_[p].in;
            else
                --pairs_[p].avail;
            queue_pair(p);
        }
        for (auto p : pairs_by_endpoint_[v])
            queue_pair(p);
        return true;
    }

    void touch_closed(VertexId w, signed char value)
    {
        if (value == included)
            ++in_count_[w];
        else
            --avail_count_[w];
        vertex_queue_.push_back(w);
    }

    void queue_pair(std::size_t p) { pair_queue_.push_back(p); }

    void unassign(VertexId v)
    {
        const signed char value = status_[v];
        status_[v] = undecided;
        if (value == included)
            --selected_;
        auto undo = [&](VertexId w) {
            if (value == included)
                --in_count_[w];
            else
                ++avail_count_[w];
        };
        for (VertexId w : g_.neighbors(v))
            undo(w);
        undo(v);
        for (auto p : pairs_by_candidate_[v]) {
            if (value == included)
                --pairs_[p].in;
            else
                ++pairs_[p].avail;
        }
    }

    bool include_all_undecided(std::span<const VertexId> vertices)
    {
        for (VertexId w : vertices)
            if (status_[w] == undecided && !decide(w, included))
                return false;
        return true;
    }

    bool check_vertex(VertexId v)
    {
        if (avail_count_[v] < threshold_)
            return false;
        if (avail_count_[v] == threshold_ && in_count_[v] < threshold_) {
            if (status_[v] == undecided && !decide(v, included))
                return false;
            return include_all_undecided(g_.neighbors(v));
        }
        return true;
    }

    bool check_pair(std::size_t index)
    {
        Pair& p = pairs_[index];
        const signed char su = status_[p.u], sv = status_[p.v];
        if (su != undecided && sv != undecided) {
            const int need = pair_need(su, sv);
            if (p.avail < need)
                return false;
            if (p.avail == need && p.in < need)
                return include_all_undecided(p.candidates);
            return true;
        }
        if (su == undecided && sv == undecided)
            return true;
        const signed char known = su != undecided ? su : sv;
        const VertexId open = su != undecided ? p.v : p.u;
        const int if_excluded = pair_need(known, excluded);
        const int if_included = pair_need(known, included);
        if (p.avail < std::min(if_excluded, if_included))
            return false;
        if (p.avail < if_excluded)
            return decide(open, included);
        return true;
    }

    bool propagate()
    {
        while (!vertex_queue_.empty() || !pair_queue_.empty()) {
            if (!vertex_queue_.empty()) {
                VertexId v = vertex_queue_.back();
                vertex_queue_.pop_back();
                if (!check_vertex(v))
                    return clear_queues();
            } else {
                auto p = pair_queue_.back();
                pair_queue_.pop_back();
                if (!check_pair(p))
                    return clear_queues();
            }
        }
        return true;
    }

    bool clear_queues()
    {
        vertex_queue_.clear();
        pair_queue_.clear();
        return false;
    }

    /// Selected count plus a covering bound on the remaining domination deficit.
    std::size_t lower_bound() const
    {
        std::size_t deficit = 0;
        for (VertexId v = 0; v < g_.order(); ++v)
            if (in_count_[v] < threshold_)
                deficit += static_cast<std::size_t>(threshold_ - in_count_[v]);
        if (deficit == 0)
            return selected_;
        std::size_t cover = 0;
        for (VertexId x = 0; x < g_.order(); ++x) {
            if (status_[x] != undecided)
                continue;
            std::size_t c = in_count_[x] < threshold_ ? 1 : 0;
            for (VertexId w : g_.neighbors(x))
                c += in_count_[w] < threshold_ ? 1 : 0;
            cover = std::max(cover, c);
        }
        if (cover == 0)
            return std::numeric_limits<std::size_t>::max();
        return selected_ + (deficit + cover - 1) / cover;
    }

    /// Highest degree first; ties go to the vertex touching more deficient
    /// vertices, then to the smaller index.
    std::optional<VertexId> pick_branch_vertex() const
    {
        std::optional<VertexId> best;
        std::size_t best_degree = 0, best_touch = 0;
        for (VertexId x = 0; x < g_.order(); ++x) {
            if (status_[x] != undecided)
                continue;
            std::size_t touch = in_count_[x] < threshold_ ? 1 : 0;
            for (VertexId w : g_.neighbors(x))
                touch += in_count_[w] < threshold_ ? 1 : 0;
            const std::size_t deg = g_.degree(x);
            if (!best || deg > best_degree || (deg == best_degree && touch > best_touch)) {
                best = x;
                best_degree = deg;
                best_touch = touch;
            }
        }
        return best;
    }

    /// Returns true when the search should stop.
    bool recurse()
    {
        budget_.tick();
        if (lower_bound() >= limit_)
            return false;
        auto branch = pick_branch_vertex();
        if (!branch) {
            // every vertex decided and every constraint checked by propagation
            std::vector<VertexId> set;
            for (VertexId v = 0; v < g_.order(); ++v)
                if (status_[v] == included)
                    set.push_back(v);
            best_ = std::move(set);
            limit_ = best_->size();
            return first_only_ || limit_ <= global_lower_bound_;
        }
        for (signed char value : {excluded, included}) {
            const auto mark = checkpoint();
            bool stop = false;
            if (decide(*branch, value) && propagate())
                stop = recurse();
            rollback(mark);
            if (stop)
                return true;
            if (lower_bound() >= limit_)
                return false;
        }
        return false;
    }

    const Graph& g_;
    Objective objective_;
    BudgetTracker& budget_;
    int threshold_;

    std::vector<signed char> status_;
    std::vector<int> in_count_;
    std::vector<int> avail_count_;
    std::vector<Pair> pairs_;
    std::vector<std::vector<std::size_t>> pairs_by_candidate_;
    std::vector<std::vector<std::size_t>> pairs_by_endpoint_;

    std::vector<VertexId> trail_;
    std::vector<VertexId> vertex_queue_;
    std::vector<std::size_t> pair_queue_;
    std::size_t selected_ = 0;

    std::size_t global_lower_bound_ = 0;
    std::size_t limit_ = 0;
    bool first_only_ = false;
    std::optional<std::vector<VertexId>> best_;
};

/// Optimum and lexicographically smallest optimal set of one connected graph.
inline std::pair<std::size_t, std::vector<VertexId>> solve_connected(const Graph& g, Objective objective,
                                                                     BudgetTracker& budget)
{
    Search search(g, objective, budget);
    if (objective == Objective::redld)
        for (VertexId v : forced_detectors(g).members())
            if (!search.fix(v, true))
                throw DomainError("forced detectors are contradictory");

    auto best = search.minimize(g.order() + 1, false);
    if (!best)
        throw DomainError("no solution found on a graph that admits one");
    const std::size_t optimum = best->size();

    // Greedy lexicographic descent: include each vertex in index order whenever an
    // optimal completion still exists.
    std::vector<VertexId> current = *best;
    for (VertexId v = 0; v < g.order(); ++v) {
        if (search.decided(v))
            continue;
        if (std::binary_search(current.begin(), current.end(), v)) {
            search.fix(v, true);
            continue;
        }
        const auto mark = search.checkpoint();
        if (search.fix(v, true)) {
            if (auto found = search.minimize(optimum + 1, true)) {
                current = std::move(*found);
                continue;
            }
            search.rollback(mark);
        }
        search.fix(v, false);
    }
    return {optimum, current};
}

inline SolveResult solve(const Graph& g, Objective objective, SolveBudget budget)
{
    SolveResult result;
    result.witness = DetectorSet(g.order());
    if (objective == Objective::redld && !redld_exists(g)) {
        result.status = SolveStatus::infeasible;
        return result;
    }
    BudgetTracker tracker(budget);
    try {
        for (const auto& comp : connected_components(g)) {
            Graph sub = induced_subgraph(g, comp);
            auto [optimum, members] = solve_connected(sub, objective, tracker);
            result.optimum += optimum;
            for (VertexId local : members)
                result.witness.insert(comp[local]);
        }
    } catch (const BudgetExceeded&) {
        result.status = SolveStatus::budget_exceeded;
        result.optimum = 0;
        result.witness = DetectorSet(g.order());
    }
    result.nodes = tracker.nodes();
    return result;
}

/// Visits k-subsets of {0..n-1} in lexicographic order of their ascending index
/// sequences; stops early when `visit` returns true.
template <class Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit)
{
    std::vector<VertexId> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = static_cast<VertexId>(i);
    while (true) {
        if (visit(std::span<const VertexId>(idx)))
            return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

/// Minimum redundant locating-dominating set by branch and bound.
inline SolveResult min_redld(const Graph& g, SolveBudget budget = {})
{
    return detail::solve(g, Objective::redld, budget);
}

/// Minimum locating-dominating set by branch and bound.
inline SolveResult min_ld(const Graph& g, SolveBudget budget = {})
{
    return detail::solve(g, Objective::ld, budget);
}

/// Exhaustive oracle: subsets by increasing size, each in lexicographic order,
/// tested against the removal definition. Only for small graphs (n <= 64 and
/// realistically n <= 20).
inline SolveResult brute_force_min_redld(const Graph& g)
{
    MaskGraph mg(g);
    SolveResult result;
    result.witness = DetectorSet(g.order());
    const std::size_t n = g.order();
    for (std::size_t k = 0; k <= n; ++k) {
        std::uint64_t found = 0;
        bool hit = detail::for_each_combination(n, k, [&](std::span<const VertexId> idx) {
            std::uint64_t mask = 0;
            for (VertexId v : idx)
                mask |= std::uint64_t{1} << v;
            ++result.nodes;
            if (mg.is_redld_by_definition(mask)) {
                found = mask;
                return true;
            }
            return false;
        });
        if (hit) {
            result.optimum = k;
            result.witness = from_mask(n, found);
            return result;
        }
    }
    result.status = SolveStatus::infeasible;
    return result;
}

/// Exhaustive oracle for plain LD sets.
inline SolveResult brute_force_min_ld(const Graph& g)
{
    MaskGraph mg(g);
    SolveResult result;
    result.witness = DetectorSet(g.order());
    const std::size_t n = g.order();
    for (std::size_t k = 0; k <= n; ++k) {
        std::uint64_t found = 0;
        bool hit = detail::for_each_combination(n, k, [&](std::span<const VertexId> idx) {
            std::uint64_t mask = 0;
            for (VertexId v : idx)
                mask |= std::uint64_t{1} << v;
            ++result.nodes;
            if (mg.is_ld(mask)) {
                found = mask;
                return true;
            }
            return false;
        });
        if (hit) {
            result.optimum = k;
            result.witness = from_mask(n, found);
            return result;
        }
    }
    result.status = SolveStatus::infeasible;
    return result;
}

inline const char* to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::budget_exceeded: return "budget exceeded";
    }
    return "?";
}

} // namespace redld
