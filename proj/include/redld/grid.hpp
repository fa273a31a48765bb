#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redld/detector_set.hpp"
#include "redld/error.hpp"
#include "redld/graph.hpp"
#include "redld/rational.hpp"
#include "redld/verify.hpp"

namespace redld {

enum class LatticeKind { hex, tri, sq, king };

inline const char* to_string(LatticeKind k)
{
    switch (k) {
    case LatticeKind::hex: return "HEX";
    case LatticeKind::tri: return "TRI";
    case LatticeKind::sq: return "SQ";
    case LatticeKind::king: return "KING";
    }
    return "?";
}

inline LatticeKind parse_lattice_kind(std::string_view s)
{
    std::string up(s);
    for (auto& c : up)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (up == "HEX")
        return LatticeKind::hex;
    if (up == "TRI")
        return LatticeKind::tri;
    if (up == "SQ")
        return LatticeKind::sq;
    if (up == "KING" || up == "K")
        return LatticeKind::king;
    throw InputError("unknown lattice kind '" + std::string(s) + "'");
}

struct Cell {
    std::int64_t x, y;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Neighbors of (x, y) in the infinite lattice.
/// SQ: axis; KING: axis + diagonals; TRI: axis + (1,1), (-1,-1);
/// HEX: brick wall, horizontal edges always, vertical edge up when x+y is even
/// and down otherwise.
inline std::vector<Cell> lattice_neighbors(LatticeKind kind, Cell c)
{
    std::vector<Cell> out;
    auto add = [&](std::int64_t dx, std::int64_t dy) { out.push_back({c.x + dx, c.y + dy}); };
    switch (kind) {
    case LatticeKind::sq:
        add(1, 0), add(-1, 0), add(0, 1), add(0, -1);
        break;
    case LatticeKind::king:
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                if (dx || dy)
                    add(dx, dy);
        break;
    case LatticeKind::tri:
        add(1, 0), add(-1, 0), add(0, 1), add(0, -1), add(1, 1), add(-1, -1);
        break;
    case LatticeKind::hex:
        add(1, 0), add(-1, 0);
        add(0, ((c.x + c.y) % 2 + 2) % 2 == 0 ? 1 : -1);
        break;
    }
    return out;
}

inline std::size_t lattice_degree(LatticeKind kind)
{
    switch (kind) {
    case LatticeKind::hex: return 3;
    case LatticeKind::sq: return 4;
    case LatticeKind::tri: return 6;
    case LatticeKind::king: return 8;
    }
    return 0;
}

/// A w x h fundamental domain; cell (x, y) is stored at y * w + x.
struct PeriodicPattern {
    LatticeKind kind = LatticeKind::sq;
    std::size_t w = 1, h = 1;
    std::vector<unsigned char> detectors;

    bool at(std::int64_t x, std::int64_t y) const
    {
        auto mx = ((x % static_cast<std::int64_t>(w)) + static_cast<std::int64_t>(w)) % static_cast<std::int64_t>(w);
        auto my = ((y % static_cast<std::int64_t>(h)) + static_cast<std::int64_t>(h)) % static_cast<std::int64_t>(h);
        return detectors[static_cast<std::size_t>(my) * w + static_cast<std::size_t>(mx)];
    }

    std::size_t count() const { return static_cast<std::size_t>(std::count(detectors.begin(), detectors.end(), 1)); }

    /// Throws on shape errors (empty domain, odd HEX period, wrong cell count).
    void check() const
    {
        if (w == 0 || h == 0)
            throw DomainError("pattern domain must be non-empty");
        if (detectors.size() != w * h)
            throw DomainError("pattern cell count does not match w*h");
        if (kind == LatticeKind::hex && (w % 2 || h % 2))
            throw DomainError("HEX patterns need even w and h");
    }
};

inline Rational density(const PeriodicPattern& p)
{
    p.check();
    return Rational(static_cast<long long>(p.count())) / Rational(static_cast<long long>(p.w * p.h));
}

/// "kind w h" then h rows of w characters, '#' detector, '.' non-detector.
inline PeriodicPattern parse_pattern(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    PeriodicPattern p;
    bool header = false;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto c = line.find_last_not_of(" \t\r"); c != std::string::npos)
            line.erase(c + 1);
        else
            line.clear();
        if (line.empty() || line[0] == ';')
            continue;
        if (!header) {
            std::istringstream f(line);
            std::string kind;
            long long w = 0, h = 0;
            if (!(f >> kind >> w >> h) || w <= 0 || h <= 0 || w > 4096 || h > 4096)
                throw InputError("header must be 'kind w h'", line_no);
            p.kind = parse_lattice_kind(kind);
            p.w = static_cast<std::size_t>(w);
            p.h = static_cast<std::size_t>(h);
            p.detectors.assign(p.w * p.h, 0);
            header = true;
            continue;
        }
        if (row >= p.h)
            throw InputError("more than h rows", line_no);
        if (line.size() != p.w)
            throw InputError("row has " + std::to_string(line.size()) + " cells, expected " + std::to_string(p.w),
                             line_no);
        for (std::size_t x = 0; x < p.w; ++x) {
            if (line[x] != '#' && line[x] != '.')
                throw InputError(std::string("bad cell character '") + line[x] + "'", line_no);
            p.detectors[row * p.w + x] = line[x] == '#';
        }
        ++row;
    }
    if (!header)
        throw InputError("missing header");
    if (row != p.h)
        throw InputError("expected " + std::to_string(p.h) + " rows, found " + std::to_string(row));
    if (p.kind == LatticeKind::hex && (p.w % 2 || p.h % 2))
        throw InputError("HEX patterns need even w and h");
    return p;
}

inline std::string render_pattern(const PeriodicPattern& p)
{
    std::ostringstream out;
    out << to_string(p.kind) << ' ' << p.w << ' ' << p.h << '\n';
    for (std::size_t y = 0; y < p.h; ++y) {
        for (std::size_t x = 0; x < p.w; ++x)
            out << (p.detectors[y * p.w + x] ? '#' : '.');
        out << '\n';
    }
    return out.str();
}

inline constexpr std::size_t min_torus_extent = 8;

struct TorusGraph {
    Graph graph;
    DetectorSet detectors;
    std::size_t width = 0, height = 0; ///< vertex (x, y) has index y * width + x
};

/// Tiles the pattern c_w x c_h times with wraparound adjacency.
inline TorusGraph build_torus(const PeriodicPattern& p, std::size_t c_w, std::size_t c_h)
{
    p.check();
    const std::size_t W = p.w * c_w, H = p.h * c_h;
    if (W < min_torus_extent || H < min_torus_extent)
        throw DomainError("torus extent below " + std::to_string(min_torus_extent));
    std::vector<Edge> edges;
    auto id = [&](std::int64_t x, std::int64_t y) {
        auto mx = static_cast<std::size_t>(((x % static_cast<std::int64_t>(W)) + W) % W);
        auto my = static_cast<std::size_t>(((y % static_cast<std::int64_t>(H)) + H) % H);
        return static_cast<VertexId>(my * W + mx);
    };
    DetectorSet s(W * H);
    for (std::size_t y = 0; y < H; ++y)
        for (std::size_t x = 0; x < W; ++x) {
            const Cell c{static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)};
            const VertexId u = id(c.x, c.y);
            if (p.at(c.x, c.y))
                s.insert(u);
            for (Cell d : lattice_neighbors(p.kind, c)) {
                VertexId v = id(d.x, d.y);
                if (u < v)
                    edges.push_back({u, v});
            }
        }
    return {Graph::from_edges(W * H, edges), std::move(s), W, H};
}

namespace detail {

inline std::size_t tiles_for(std::size_t period, std::size_t extent) { return (extent + period - 1) / period; }

/// RED:LD characterization on a torus, restricted to pairs at graph distance <= max_distance.
inline VerificationReport redld_local(const Graph& g, const DetectorSet& s, std::size_t max_distance)
{
    VerificationReport report;
    for (VertexId v = 0; v < g.order(); ++v)
        if (domination_count(g, s, v) < 2)
            report.violations.push_back({Condition::dom2, {v}, std::nullopt});
    for (VertexId u = 0; u < g.order(); ++u) {
        auto dist = bfs_distances(g, u, max_distance);
        for (VertexId v = 0; v < g.order(); ++v) {
            if (v == u || dist[v] > max_distance)
                continue;
            const bool su = s.contains(u), sv = s.contains(v);
            if (!su && !sv && u < v && trace_difference(g, s, u, v) < 2)
                report.violations.push_back({Condition::nondet_pair_2dist, {u, v}, std::nullopt});
            if (sv && !su && detector_distinction(g, s, v, u) < 1)
                report.violations.push_back({Condition::det_nondet_1dist, {v, u}, std::nullopt});
        }
    }
    return report;
}

} // namespace detail

/// Certifies the pattern on a torus with both extents >= `extent` by checking
/// 2-domination everywhere and the pair conditions for pairs at distance <= 4.
inline VerificationReport verify_periodic(const PeriodicPattern& p, std::size_t extent = min_torus_extent)
{
    p.check();
    auto t = build_torus(p, detail::tiles_for(p.w, extent), detail::tiles_for(p.h, extent));
    return detail::redld_local(t.graph, t.detectors, 4);
}

namespace detail {

/// Exact RED:LD test of a periodic pattern on the infinite lattice, evaluated on
/// one fundamental domain. Pairs farther apart than 2 never conflict once every
/// vertex is 2-dominated.
class PeriodicChecker {
public:
    explicit PeriodicChecker(LatticeKind kind, std::size_t w, std::size_t h) : w_(w), h_(h)
    {
        ready_.resize(w * h);
        touch_.resize(w * h);
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x) {
                const Cell u{static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)};
                auto nu = lattice_neighbors(kind, u);
                Constraint dom;
                dom.kind = Constraint::dom;
                dom.u = index(u);
                dom.cells.push_back(index(u));
                for (Cell c : nu)
                    dom.cells.push_back(index(c));
                add(std::move(dom));
                // partners at distance 1 or 2
                std::set<Cell> near;
                for (Cell a : nu) {
                    near.insert(a);
                    for (Cell b : lattice_neighbors(kind, a))
                        near.insert(b);
                }
                near.erase(u);
                std::set<Cell> su(nu.begin(), nu.end());
                for (Cell v : near) {
                    auto nv = lattice_neighbors(kind, v);
                    std::set<Cell> sv(nv.begin(), nv.end()), diff;
                    std::set_symmetric_difference(su.begin(), su.end(), sv.begin(), sv.end(),
                                                  std::inserter(diff, diff.end()));
                    Constraint pair;
                    pair.kind = Constraint::pair;
                    pair.u = index(u);
                    pair.v = index(v);
                    for (Cell d : diff) {
                        pair.cells.push_back(index(d));
                        pair.tag.push_back(d == u ? 1 : d == v ? 2 : 0);
                    }
                    pair.cells.push_back(pair.u);
                    pair.cells.push_back(pair.v);
                    add(std::move(pair));
                }
            }
    }

    std::size_t cells() const { return w_ * h_; }

    /// Constraints whose last-needed cell is `i`.
    bool check_ready(std::size_t i, const std::vector<signed char>& value) const
    {
        for (auto ci : ready_[i])
            if (!holds(constraints_[ci], value))
                return false;
        return true;
    }

    /// False if some vertex whose neighborhood meets cell `i` can no longer
    /// reach two detectors.
    bool dom_possible(std::size_t i, const std::vector<signed char>& value) const
    {
        for (auto ci : touch_[i]) {
            std::size_t open = 0;
            for (auto x : constraints_[ci].cells)
                open += value[x] != 0 ? 1 : 0;
            if (open < 2)
                return false;
        }
        return true;
    }

    bool check_all(const std::vector<signed char>& value) const
    {
        for (const auto& c : constraints_)
            if (!holds(c, value))
                return false;
        return true;
    }

private:
    // dom: cells is N[u] with multiplicity. pair: cells is N(u) xor N(v) as
    // lattice points (tag 1 if the point is u, 2 if v), then u and v.
    struct Constraint {
        enum Kind { dom, pair } kind{};
        std::size_t u = 0, v = 0;
        std::vector<std::size_t> cells;
        std::vector<unsigned char> tag;
    };

    std::size_t index(Cell c) const
    {
        const auto w = static_cast<std::int64_t>(w_), h = static_cast<std::int64_t>(h_);
        return static_cast<std::size_t>(((c.y % h) + h) % h) * w_ + static_cast<std::size_t>(((c.x % w) + w) % w);
    }

    void add(Constraint c)
    {
        const auto last = *std::max_element(c.cells.begin(), c.cells.end());
        ready_[last].push_back(constraints_.size());
        if (c.kind == Constraint::dom) {
            auto cells = c.cells;
            std::sort(cells.begin(), cells.end());
            cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
            for (auto x : cells)
                touch_[x].push_back(constraints_.size());
        }
        constraints_.push_back(std::move(c));
    }

    static bool holds(const Constraint& c, const std::vector<signed char>& value)
    {
        if (c.kind == Constraint::dom) {
            std::size_t count = 0;
            for (auto x : c.cells)
                count += value[x] == 1 ? 1 : 0;
            return count >= 2;
        }
        const bool su = value[c.u] == 1, sv = value[c.v] == 1;
        if (su && sv)
            return true;
        const unsigned char skip = su ? 1 : sv ? 2 : 0;
        std::size_t count = 0;
        for (std::size_t i = 0; i + 2 < c.cells.size(); ++i)
            if (value[c.cells[i]] == 1 && (skip == 0 || c.tag[i] != skip))
                ++count;
        return skip ? count >= 1 : count >= 2;
    }

    std::size_t w_, h_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<std::size_t>> ready_;
    std::vector<std::vector<std::size_t>> touch_;
};

} // namespace detail

/// Exact infinite-lattice check, used by the search and as a cross-check.
inline bool is_periodic_redld(const PeriodicPattern& p)
{
    p.check();
    detail::PeriodicChecker checker(p.kind, p.w, p.h);
    std::vector<signed char> value(p.detectors.begin(), p.detectors.end());
    return checker.check_all(value);
}

struct PatternSearchOptions {
    std::uint64_t max_nodes_per_domain = 2'000'000;
    std::uint64_t seed = 1; ///< value order for domains past the exhaustive limit
    std::size_t exhaustive_area = 36;
    std::size_t restarts = 20;
};

namespace detail {

class DomainSearch {
public:
    DomainSearch(LatticeKind kind, std::size_t w, std::size_t h, std::size_t k, std::uint64_t max_nodes,
                 std::mt19937_64* rng)
        : checker_(kind, w, h), value_(w * h, -1), k_(k), max_nodes_(max_nodes), rng_(rng)
    {
    }

    std::optional<std::vector<signed char>> run()
    {
        // translate so some detector sits at cell 0
        value_[0] = 1;
        chosen_ = 1;
        if (k_ >= 1 && recurse(1))
            return value_;
        return std::nullopt;
    }

    bool exhausted() const { return nodes_ > max_nodes_; }

private:
    bool recurse(std::size_t i)
    {
        if (++nodes_ > max_nodes_)
            return false;
        if (!checker_.check_ready(i - 1, value_))
            return false;
        const std::size_t n = value_.size();
        if (i == n)
            return chosen_ == k_;
        const std::size_t left = n - i;
        std::array<signed char, 2> order{1, 0};
        if (rng_ && ((*rng_)() & 1))
            std::swap(order[0], order[1]);
        for (signed char b : order) {
            if (b == 1 && chosen_ == k_)
                continue;
            if (b == 0 && chosen_ + left - 1 < k_)
                continue;
            value_[i] = b;
            chosen_ += b;
            if ((b == 1 || checker_.dom_possible(i, value_)) && recurse(i + 1))
                return true;
            chosen_ -= b;
            value_[i] = -1;
            if (nodes_ > max_nodes_)
                return false;
        }
        return false;
    }

    PeriodicChecker checker_;
    std::vector<signed char> value_;
    std::size_t k_;
    std::size_t chosen_ = 0;
    std::uint64_t nodes_ = 0;
    std::uint64_t max_nodes_;
    std::mt19937_64* rng_;
};

} // namespace detail

/// Searches fundamental domains w x h (1 <= w, h <= max_period, HEX even only) in
/// order of area, then width, for a pattern with exactly floor(target * w * h)
/// detectors; the first pattern that also passes verify_periodic is returned.
/// Domains with at most `exhaustive_area` cells are searched exhaustively within
/// the node budget, larger ones by randomized restarts.
inline std::optional<PeriodicPattern> pattern_search(LatticeKind kind, std::size_t max_period,
                                                     const Rational& target, PatternSearchOptions opts = {})
{
    if (target <= 0 || target > 1)
        throw DomainError("target density must lie in (0, 1]");
    std::vector<std::pair<std::size_t, std::size_t>> domains;
    for (std::size_t w = 1; w <= max_period; ++w)
        for (std::size_t h = 1; h <= max_period; ++h) {
            if (kind == LatticeKind::hex && (w % 2 || h % 2))
                continue;
            domains.push_back({w, h});
        }
    std::stable_sort(domains.begin(), domains.end(), [](auto a, auto b) {
        return a.first * a.second != b.first * b.second ? a.first * a.second < b.first * b.second : a.first < b.first;
    });
    std::mt19937_64 rng(opts.seed);
    for (auto [w, h] : domains) {
        const Rational scaled = target * static_cast<long long>(w * h);
        const auto k = static_cast<std::size_t>(
            boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled));
        if (k == 0)
            continue;
        auto accept = [&](const std::vector<signed char>& v) -> std::optional<PeriodicPattern> {
            PeriodicPattern p{kind, w, h, std::vector<unsigned char>(v.begin(), v.end())};
            if (verify_periodic(p).ok())
                return p;
            return std::nullopt;
        };
        if (w * h <= opts.exhaustive_area) {
            detail::DomainSearch search(kind, w, h, k, opts.max_nodes_per_domain, nullptr);
            if (auto v = search.run())
                if (auto p = accept(*v))
                    return p;
            continue;
        }
        for (std::size_t r = 0; r < opts.restarts; ++r) {
            detail::DomainSearch search(kind, w, h, k, opts.max_nodes_per_domain / opts.restarts, &rng);
            if (auto v = search.run()) {
                if (auto p = accept(*v))
                    return p;
                break;
            }
        }
    }
    return std::nullopt;
}

/// Shares of the detectors in one fundamental domain, computed on the torus.
inline std::map<Rational, std::size_t> share_histogram(const PeriodicPattern& p)
{
    if (!verify_periodic(p).ok())
        throw DomainError("share_histogram needs a verified pattern");
    auto t = build_torus(p, detail::tiles_for(p.w, min_torus_extent), detail::tiles_for(p.h, min_torus_extent));
    std::map<Rational, std::size_t> hist;
    for (std::size_t y = 0; y < p.h; ++y)
        for (std::size_t x = 0; x < p.w; ++x) {
            const auto v = static_cast<VertexId>(y * t.width + x);
            if (t.detectors.contains(v))
                ++hist[share(t.graph, t.detectors, v)];
        }
    return hist;
}

/// Mean of share_histogram, exact.
inline Rational average_share(const std::map<Rational, std::size_t>& hist)
{
    Rational total = 0;
    std::size_t count = 0;
    for (const auto& [value, c] : hist) {
        total += value * static_cast<long long>(c);
        count += c;
    }
    if (count == 0)
        throw DomainError("empty share histogram");
    return total / static_cast<long long>(count);
}

} // namespace redld
