#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "redld/detector_set.hpp"
#include "redld/error.hpp"
#include "redld/graph.hpp"
#include "redld/rational.hpp"

namespace redld {

/// A closed-form optimum, with an explicit optimal set on the matching builder
/// graph when one is known and small enough to materialize.
struct FamilyValue {
    std::string family;
    std::vector<std::int64_t> parameters;
    std::int64_t optimum = 0;
    std::optional<Graph> graph;
    std::optional<DetectorSet> construction;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw DomainError("family value overflows 64 bits");
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw DomainError("family value overflows 64 bits");
    return out;
}

inline std::int64_t checked_pow(std::int64_t base, std::int64_t exp)
{
    std::int64_t out = 1;
    for (std::int64_t i = 0; i < exp; ++i)
        out = checked_mul(out, base);
    return out;
}

inline DetectorSet one_indexed(std::size_t n, const std::vector<std::size_t>& labels)
{
    DetectorSet s(n);
    for (std::size_t i : labels)
        s.insert(static_cast<VertexId>(i - 1));
    return s;
}

} // namespace detail

/// ceil((2n+2)/3) with S = {v_i : i mod 3 != 0} + {v_{n-1}, v_n}.
inline FamilyValue redld_path(std::size_t n)
{
    if (n < 2)
        throw DomainError("path needs n >= 2");
    std::vector<std::size_t> labels;
    for (std::size_t i = 1; i <= n; ++i)
        if (i % 3 != 0 || i + 1 >= n)
            labels.push_back(i);
    return {"path", {static_cast<std::int64_t>(n)}, static_cast<std::int64_t>((2 * n + 4) / 3), build_path(n),
            detail::one_indexed(n, labels)};
}

inline FamilyValue redld_cycle(std::size_t n)
{
    if (n < 3)
        throw DomainError("cycle needs n >= 3");
    const auto optimum = n <= 4 ? n : (2 * n + 2) / 3;
    DetectorSet s = DetectorSet::all(n);
    if (n >= 5) {
        std::vector<std::size_t> labels;
        for (std::size_t i = 1; i <= n; ++i)
            if (i % 3 != 0)
                labels.push_back(i);
        s = detail::one_indexed(n, labels);
    }
    return {"cycle", {static_cast<std::int64_t>(n)}, static_cast<std::int64_t>(optimum), build_cycle(n), s};
}

/// P_k x P_2: k+1 for odd k, k+2 for even k.
inline FamilyValue redld_ladder(std::size_t k)
{
    if (k == 0)
        throw DomainError("ladder needs k >= 1");
    DetectorSet s(2 * k);
    for (std::size_t i = 1; i <= k; ++i)
        if (i % 2 == 1 || i == k)
            for (std::size_t j = 1; j <= 2; ++j)
                s.insert(ladder_vertex(i, j));
    return {"ladder", {static_cast<std::int64_t>(k)}, static_cast<std::int64_t>(k % 2 ? k + 1 : k + 2),
            build_ladder(k), s};
}

/// Closed form for the complete k-ary tree of depth d.
inline std::int64_t redld_kary_value(std::int64_t k, std::int64_t d)
{
    using namespace detail;
    if (k < 2 || d < 1)
        throw DomainError("k-ary tree needs k >= 2 and d >= 1");
    if (d == 1)
        return k + 1;
    if (d == 2)
        return checked_add(checked_mul(k, k), k);
    if (d == 3)
        return checked_add(checked_add(checked_pow(k, 3), checked_mul(k, k)), 2);
    const std::int64_t m = d % 3, t = (d - 1) % 3;
    const std::int64_t blocks = (d + 2) / 3;
    // (k^{3 ceil(d/3)} - 1) / (k^3 - 1) = 1 + k^3 + ... + k^{3(blocks-1)}
    std::int64_t geometric = 0, term = 1;
    const std::int64_t k3 = checked_pow(k, 3);
    for (std::int64_t i = 0; i < blocks; ++i) {
        geometric = checked_add(geometric, term);
        if (i + 1 < blocks)
            term = checked_mul(term, k3);
    }
    return checked_add((1 - m) * (2 - m), checked_mul(checked_mul(checked_pow(k, t), k + 1), geometric));
}

/// Order of the complete k-ary tree of depth d.
inline std::int64_t kary_order(std::int64_t k, std::int64_t d)
{
    std::int64_t n = 0, level = 1;
    for (std::int64_t i = 0; i <= d; ++i) {
        n = detail::checked_add(n, level);
        if (i < d)
            level = detail::checked_mul(level, k);
    }
    return n;
}

/// Depth rows congruent to d or d-1 (mod 3); when d = 0 (mod 3) the root is
/// replaced by its first two children.
inline DetectorSet kary_construction(std::size_t k, std::size_t d)
{
    Graph t = build_kary_tree(k, d);
    DetectorSet s(t.order());
    std::size_t first = 0, width = 1;
    for (std::size_t depth = 0; depth <= d; ++depth) {
        const std::size_t r = (d - depth) % 3;
        if (r == 0 || r == 1)
            for (std::size_t v = first; v < first + width; ++v)
                s.insert(static_cast<VertexId>(v));
        first += width;
        width *= k;
    }
    if (d % 3 == 0) {
        s.erase(0);
        s.insert(1);
        s.insert(2);
    }
    return s;
}

/// Trees above this order get the value only.
inline constexpr std::int64_t kary_construction_limit = 1 << 20;

inline FamilyValue redld_kary(std::size_t k, std::size_t d)
{
    const auto ki = static_cast<std::int64_t>(k), di = static_cast<std::int64_t>(d);
    FamilyValue out{"kary", {ki, di}, redld_kary_value(ki, di), std::nullopt, std::nullopt};
    if (kary_order(ki, di) <= kary_construction_limit) {
        out.graph = build_kary_tree(k, d);
        out.construction = kary_construction(k, d);
    }
    return out;
}

/// Published density column: value (k-1) / k^{d+1}, i.e. value over n + 1/(k-1).
inline Rational kary_table_density(std::int64_t k, std::int64_t d)
{
    return Rational(redld_kary_value(k, d)) * (k - 1) / Rational(boost::multiprecision::pow(boost::multiprecision::cpp_int(k), static_cast<unsigned>(d + 1)));
}

enum class TableFormat { text, csv };

/// Table of k-ary values for k in [k_lo, k_hi], d in [d_lo, d_hi].
inline std::string kary_table(std::size_t k_lo, std::size_t k_hi, std::size_t d_lo, std::size_t d_hi,
                              TableFormat format)
{
    if (k_lo < 2 || k_lo > k_hi || d_lo < 1 || d_lo > d_hi)
        throw DomainError("bad table range");
    auto cell = [](std::size_t k, std::size_t d) {
        auto ki = static_cast<std::int64_t>(k), di = static_cast<std::int64_t>(d);
        std::ostringstream c;
        c << redld_kary_value(ki, di) << " (" << std::fixed << std::setprecision(2)
          << kary_table_density(ki, di).convert_to<double>() << ")";
        return c.str();
    };
    std::ostringstream out;
    if (format == TableFormat::csv) {
        out << "d,k,value,density\n";
        for (std::size_t d = d_lo; d <= d_hi; ++d)
            for (std::size_t k = k_lo; k <= k_hi; ++k) {
                auto ki = static_cast<std::int64_t>(k), di = static_cast<std::int64_t>(d);
                out << d << ',' << k << ',' << redld_kary_value(ki, di) << ',' << std::fixed
                    << std::setprecision(4) << kary_table_density(ki, di).convert_to<double>() << '\n';
            }
        return out.str();
    }
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"d"});
    for (std::size_t k = k_lo; k <= k_hi; ++k)
        rows[0].push_back("k=" + std::to_string(k));
    for (std::size_t d = d_lo; d <= d_hi; ++d) {
        rows.push_back({std::to_string(d)});
        for (std::size_t k = k_lo; k <= k_hi; ++k)
            rows.back().push_back(cell(k, d));
    }
    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << row[c];
        out << '\n';
    }
    return out.str();
}

/// K_k core plus one non-detector per even-size core subset of size 2..k-2,
/// adjacent to exactly that subset. Subsets are ordered by size, then
/// lexicographically. The core {0..k-1} is a RED:LD set.
inline Graph max_order_even_k(std::size_t k)
{
    if (k < 4 || k % 2 != 0)
        throw DomainError("max_order_even_k needs even k >= 4");
    if (k > 20)
        throw DomainError("max_order_even_k: k too large");
    std::vector<Edge> edges;
    for (VertexId u = 0; u < k; ++u)
        for (VertexId v = u + 1; v < k; ++v)
            edges.push_back({u, v});
    VertexId next = static_cast<VertexId>(k);
    for (std::size_t size = 2; size + 2 <= k; size += 2) {
        std::vector<std::uint32_t> masks;
        for (std::uint32_t m = 0; m < (1u << k); ++m)
            if (static_cast<std::size_t>(std::popcount(m)) == size)
                masks.push_back(m);
        auto as_sequence = [k](std::uint32_t m) {
            std::vector<VertexId> seq;
            for (VertexId b = 0; b < k; ++b)
                if (m >> b & 1)
                    seq.push_back(b);
            return seq;
        };
        std::sort(masks.begin(), masks.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return as_sequence(a) < as_sequence(b); });
        for (std::uint32_t m : masks) {
            for (VertexId b : as_sequence(m))
                edges.push_back({b, next});
            ++next;
        }
    }
    return Graph::from_edges(next, edges);
}

inline DetectorSet max_order_even_k_core(std::size_t k)
{
    DetectorSet s((std::size_t{1} << (k - 1)) + k - 2);
    for (VertexId v = 0; v < k; ++v)
        s.insert(v);
    return s;
}

/// 2^{k-1} + k - 2.
inline std::int64_t max_order_bound(std::int64_t k)
{
    if (k < 1 || k > 62)
        throw DomainError("max_order_bound: k out of range");
    return (std::int64_t{1} << (k - 1)) + k - 2;
}

/// Copies a set on Q_d into both halves of Q_{d+1}.
inline DetectorSet duplicate_hypercube_set(std::size_t d, const DetectorSet& s)
{
    const std::size_t n = std::size_t{1} << d;
    if (s.universe() != n)
        throw DomainError("set does not live on Q_" + std::to_string(d));
    DetectorSet out(2 * n);
    for (VertexId v : s.members()) {
        out.insert(v);
        out.insert(static_cast<VertexId>(v + n));
    }
    return out;
}

struct DensityConstant {
    std::string graph;
    Rational lower;
    Rational upper;
};

inline std::vector<DensityConstant> density_constants(std::int64_t kary_k = 2)
{
    if (kary_k < 2)
        throw DomainError("k-ary density needs k >= 2");
    auto r = make_rational;
    return {
        {"P_inf", r(2, 3), r(2, 3)},
        {"kary_inf(" + std::to_string(kary_k) + ")", r(2, kary_k + 2), r(2, kary_k + 2)},
        {"HEX", r(1, 2), r(1, 2)},
        {"TRI", r(1, 3), r(1, 3)},
        {"SQ", r(2, 5), r(7, 16)},
        {"KING", r(3, 11), r(5, 16)},
        {"Q_5", r(3, 8), r(3, 8)},
    };
}

} // namespace redld
