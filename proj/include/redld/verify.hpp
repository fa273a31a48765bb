#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "redld/detector_set.hpp"
#include "redld/error.hpp"
#include "redld/graph.hpp"
#include "redld/rational.hpp"

namespace redld {

// ---------------------------------------------------------------------------
// Verification reports

enum class Condition {
    dom2,              ///< some vertex has |N[v] & S| < 2
    det_nondet_1dist,  ///< detector v, non-detector u with ((N(v)&S) ^ (N(u)&S)) - {v} empty
    nondet_pair_2dist, ///< non-detectors u, v with |(N(v)&S) ^ (N(u)&S)| < 2
    ld_dom1,           ///< non-detector with no detector neighbor
    ld_pair_1dist,     ///< non-detectors with identical detector neighborhoods
    existence,         ///< isolated vertex: no redundant set can exist
};

inline const char* condition_id(Condition c)
{
    switch (c) {
    case Condition::dom2: return "DOM2";
    case Condition::det_nondet_1dist: return "DET_NONDET_1DIST";
    case Condition::nondet_pair_2dist: return "NONDET_PAIR_2DIST";
    case Condition::ld_dom1: return "LD_DOM1";
    case Condition::ld_pair_1dist: return "LD_PAIR_1DIST";
    case Condition::existence: return "EXISTENCE";
    }
    return "?";
}

struct Violation {
    Condition condition;
    std::vector<VertexId> witnesses;
    /// Set by the removal-definition check: the detector whose removal broke the LD property.
    std::optional<VertexId> removed;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerificationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    explicit operator bool() const noexcept { return ok(); }

    bool has(Condition c) const
    {
        return std::any_of(violations.begin(), violations.end(),
                           [c](const Violation& v) { return v.condition == c; });
    }
};

/// One line per violation: condition id followed by witness indices, and
/// "removed=<v>" when the violation arose after deleting a detector. The first
/// line is "ok" or "violations <count>".
inline std::string to_text(const VerificationReport& report)
{
    std::ostringstream out;
    if (report.ok()) {
        out << "ok\n";
        return out.str();
    }
    out << "violations " << report.violations.size() << '\n';
    for (const auto& v : report.violations) {
        out << condition_id(v.condition);
        for (VertexId w : v.witnesses)
            out << ' ' << w;
        if (v.removed)
            out << " removed=" << *v.removed;
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Counting primitives

namespace detail {

/// Sorted N(v) & S.
inline std::vector<VertexId> trace(const Graph& g, const DetectorSet& s, VertexId v)
{
    std::vector<VertexId> out;
    for (VertexId w : g.neighbors(v))
        if (s.contains(w))
            out.push_back(w);
    return out;
}

/// |(a ^ b) - excluded| for sorted a, b.
inline std::size_t symmetric_difference_size(const std::vector<VertexId>& a, const std::vector<VertexId>& b,
                                             std::initializer_list<VertexId> excluded)
{
    std::vector<VertexId> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    std::size_t count = diff.size();
    for (VertexId x : diff)
        if (std::find(excluded.begin(), excluded.end(), x) != excluded.end())
            --count;
    return count;
}

} // namespace detail

/// dom(v) = |N[v] & S|.
inline std::size_t domination_count(const Graph& g, const DetectorSet& s, VertexId v)
{
    require_same_universe(g, s);
    std::size_t count = s.contains(v) ? 1 : 0;
    for (VertexId w : g.neighbors(v))
        count += s.contains(w) ? 1 : 0;
    return count;
}

/// |((N(v) & S) ^ (N(u) & S)) - {u, v}|: v is k-distinguished from u iff this is >= k.
inline std::size_t distinguishing_degree(const Graph& g, const DetectorSet& s, VertexId u, VertexId v)
{
    require_same_universe(g, s);
    g.check(u);
    g.check(v);
    if (u == v)
        throw DomainError("distinguishing degree needs two distinct vertices");
    return detail::symmetric_difference_size(detail::trace(g, s, v), detail::trace(g, s, u), {u, v});
}

/// |((N(v) & S) ^ (N(u) & S)) - {v}| for a detector v and non-detector u; the
/// quantity bounded below by 1 in the characterization of redundant sets.
inline std::size_t detector_distinction(const Graph& g, const DetectorSet& s, VertexId v, VertexId u)
{
    require_same_universe(g, s);
    g.check(u);
    g.check(v);
    if (u == v)
        throw DomainError("detector distinction needs two distinct vertices");
    return detail::symmetric_difference_size(detail::trace(g, s, v), detail::trace(g, s, u), {v});
}

/// |(N(v) & S) ^ (N(u) & S)| with nothing removed.
inline std::size_t trace_difference(const Graph& g, const DetectorSet& s, VertexId u, VertexId v)
{
    require_same_universe(g, s);
    return detail::symmetric_difference_size(detail::trace(g, s, v), detail::trace(g, s, u), {});
}

// ---------------------------------------------------------------------------
// LD and RED:LD checks

/// Locating-dominating check: every non-detector has a detector neighbor and
/// no two non-detectors see the same set of detectors.
inline VerificationReport is_ld_set(const Graph& g, const DetectorSet& s)
{
    require_same_universe(g, s);
    VerificationReport report;
    std::vector<std::pair<std::vector<VertexId>, VertexId>> traces;
    for (VertexId v = 0; v < g.order(); ++v) {
        if (s.contains(v))
            continue;
        auto t = detail::trace(g, s, v);
        if (t.empty())
            report.violations.push_back({Condition::ld_dom1, {v}, std::nullopt});
        traces.emplace_back(std::move(t), v);
    }
    std::sort(traces.begin(), traces.end());
    for (std::size_t i = 0; i + 1 < traces.size(); ++i)
        for (std::size_t j = i + 1; j < traces.size() && traces[j].first == traces[i].first; ++j)
            report.violations.push_back(
                {Condition::ld_pair_1dist,
                 {std::min(traces[i].second, traces[j].second), std::max(traces[i].second, traces[j].second)},
                 std::nullopt});
    std::sort(report.violations.begin(), report.violations.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.condition, a.witnesses) < std::tie(b.condition, b.witnesses);
    });
    return report;
}

inline std::vector<VertexId> isolated_vertices(const Graph& g)
{
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.order(); ++v)
        if (g.degree(v) == 0)
            out.push_back(v);
    return out;
}

/// Redundant LD check through the three-condition characterization:
/// (i) |N[v] & S| >= 2 for all v; (ii) detector/non-detector pairs differ
/// outside the detector; (iii) non-detector pairs differ in two detectors.
inline VerificationReport is_redld_set(const Graph& g, const DetectorSet& s)
{
    require_same_universe(g, s);
    VerificationReport report;
    if (auto isolated = isolated_vertices(g); !isolated.empty())
        report.violations.push_back({Condition::existence, std::move(isolated), std::nullopt});

    std::vector<std::vector<VertexId>> traces(g.order());
    for (VertexId v = 0; v < g.order(); ++v) {
        traces[v] = detail::trace(g, s, v);
        if (traces[v].size() + (s.contains(v) ? 1 : 0) < 2)
            report.violations.push_back({Condition::dom2, {v}, std::nullopt});
    }
    for (VertexId v = 0; v < g.order(); ++v) {
        for (VertexId u = v + 1; u < g.order(); ++u) {
            const bool sv = s.contains(v), su = s.contains(u);
            if (sv && su)
                continue;
            if (!sv && !su) {
                if (detail::symmetric_difference_size(traces[v], traces[u], {}) < 2)
                    report.violations.push_back({Condition::nondet_pair_2dist, {v, u}, std::nullopt});
                continue;
            }
            const VertexId det = sv ? v : u, non = sv ? u : v;
            if (detail::symmetric_difference_size(traces[det], traces[non], {det}) < 1)
                report.violations.push_back({Condition::det_nondet_1dist, {det, non}, std::nullopt});
        }
    }
    return report;
}

/// Redundant LD check straight from the fault-tolerance definition: S is LD and
/// S - {v} is LD for every detector v.
inline VerificationReport is_redld_by_definition(const Graph& g, const DetectorSet& s)
{
    require_same_universe(g, s);
    VerificationReport report;
    if (auto isolated = isolated_vertices(g); !isolated.empty())
        report.violations.push_back({Condition::existence, std::move(isolated), std::nullopt});
    for (auto& v : is_ld_set(g, s).violations)
        report.violations.push_back(std::move(v));
    for (VertexId d : s.members())
        for (auto& v : is_ld_set(g, s.without(d)).violations) {
            v.removed = d;
            report.violations.push_back(std::move(v));
        }
    return report;
}

// ---------------------------------------------------------------------------
// Shares

class UndefinedShare : public DomainError {
public:
    using DomainError::DomainError;
};

/// sh(x) = sum over w in N[x] of 1 / dom(w), exact.
inline ShareValue share(const Graph& g, const DetectorSet& s, VertexId x)
{
    require_same_universe(g, s);
    g.check(x);
    if (!s.contains(x))
        throw DomainError("share is defined for detectors only; vertex " + std::to_string(x) + " is not one");
    ShareValue total = 0;
    for (VertexId w : closed_neighborhood(g, x)) {
        std::size_t dom = domination_count(g, s, w);
        if (dom == 0)
            throw UndefinedShare("vertex " + std::to_string(w) + " is not dominated");
        total += make_rational(1, static_cast<long long>(dom));
    }
    return total;
}

/// Shares of all detectors, in ascending detector order.
inline std::vector<std::pair<VertexId, ShareValue>> all_shares(const Graph& g, const DetectorSet& s)
{
    std::vector<std::pair<VertexId, ShareValue>> out;
    for (VertexId x : s.members())
        out.emplace_back(x, share(g, s, x));
    return out;
}

// ---------------------------------------------------------------------------
// Twins

/// All unordered pairs {u, v} (u < v) with N(u) = N(v) or N[u] = N[v].
inline std::vector<std::pair<VertexId, VertexId>> find_twins(const Graph& g)
{
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId u = 0; u < g.order(); ++u)
        for (VertexId v = u + 1; v < g.order(); ++v) {
            auto nu = g.neighbors(u), nv = g.neighbors(v);
            if (std::equal(nu.begin(), nu.end(), nv.begin(), nv.end())) {
                out.emplace_back(u, v);
                continue;
            }
            if (g.has_edge(u, v) && closed_neighborhood(g, u) == closed_neighborhood(g, v))
                out.emplace_back(u, v);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Bitmask fast path for graphs on at most 64 vertices (exhaustive sweeps).

/// Graph stored as 64-bit open-neighborhood masks. Checks are the same
/// definitions as above, evaluated on word-sized sets.
class MaskGraph {
public:
    explicit MaskGraph(const Graph& g) : n_(g.order()), open_(g.order(), 0)
    {
        if (g.order() > 64)
            throw DomainError("MaskGraph supports at most 64 vertices");
        for (VertexId v = 0; v < n_; ++v)
            for (VertexId w : g.neighbors(v))
                open_[v] |= std::uint64_t{1} << w;
    }

    std::size_t order() const noexcept { return n_; }
    std::uint64_t open(VertexId v) const { return open_[v]; }
    std::uint64_t closed(VertexId v) const { return open_[v] | (std::uint64_t{1} << v); }
    std::uint64_t full() const noexcept { return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1; }

    /// LD by definition: for non-detectors u != v, 0 != N(v)&S != N(u)&S.
    bool is_ld(std::uint64_t s) const
    {
        std::uint64_t seen_buf[64];
        std::size_t count = 0;
        for (VertexId v = 0; v < n_; ++v) {
            if ((s >> v) & 1)
                continue;
            std::uint64_t t = open_[v] & s;
            if (t == 0)
                return false;
            for (std::size_t i = 0; i < count; ++i)
                if (seen_buf[i] == t)
                    return false;
            seen_buf[count++] = t;
        }
        return true;
    }

    /// Removal definition of redundancy.
    bool is_redld_by_definition(std::uint64_t s) const
    {
        if (!is_ld(s))
            return false;
        for (std::uint64_t rest = s; rest != 0; rest &= rest - 1)
            if (!is_ld(s & ~(rest & (~rest + 1))))
                return false;
        return true;
    }

    /// The three-condition characterization.
    bool is_redld(std::uint64_t s) const
    {
        for (VertexId v = 0; v < n_; ++v)
            if (std::popcount(closed(v) & s) < 2)
                return false;
        for (VertexId v = 0; v < n_; ++v)
            for (VertexId u = v + 1; u < n_; ++u) {
                const bool sv = (s >> v) & 1, su = (s >> u) & 1;
                if (sv && su)
                    continue;
                std::uint64_t diff = (open_[v] & s) ^ (open_[u] & s);
                if (!sv && !su) {
                    if (std::popcount(diff) < 2)
                        return false;
                } else {
                    VertexId det = sv ? v : u;
                    if ((diff & ~(std::uint64_t{1} << det)) == 0)
                        return false;
                }
            }
        return true;
    }

private:
    std::size_t n_;
    std::vector<std::uint64_t> open_;
};

inline DetectorSet from_mask(std::size_t n, std::uint64_t mask)
{
    DetectorSet s(n);
    for (VertexId v = 0; v < n; ++v)
        if ((mask >> v) & 1)
            s.insert(v);
    return s;
}

inline std::uint64_t to_mask(const DetectorSet& s)
{
    if (s.universe() > 64)
        throw DomainError("mask conversion supports at most 64 vertices");
    std::uint64_t m = 0;
    for (VertexId v : s.members())
        m |= std::uint64_t{1} << v;
    return m;
}

} // namespace redld
