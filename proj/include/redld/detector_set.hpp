#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "redld/error.hpp"
#include "redld/graph.hpp"

namespace redld {

/// A subset S of the vertices of a graph of order `universe()`.
///
/// Membership tests are O(1); members() lists vertices in ascending order.
class DetectorSet {
public:
    DetectorSet() = default;

    explicit DetectorSet(std::size_t universe) : flags_(universe, 0) {}

    DetectorSet(std::size_t universe, std::span<const VertexId> members) : flags_(universe, 0)
    {
        for (VertexId v : members)
            insert(v);
    }

    DetectorSet(std::size_t universe, std::initializer_list<VertexId> members)
        : DetectorSet(universe, std::span<const VertexId>(members.begin(), members.size()))
    {
    }

    static DetectorSet all(std::size_t universe)
    {
        DetectorSet s(universe);
        std::fill(s.flags_.begin(), s.flags_.end(), 1);
        s.count_ = universe;
        return s;
    }

    std::size_t universe() const noexcept { return flags_.size(); }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    bool contains(VertexId v) const noexcept { return v < flags_.size() && flags_[v]; }

    void insert(VertexId v)
    {
        check(v);
        if (!flags_[v]) {
            flags_[v] = 1;
            ++count_;
        }
    }

    void erase(VertexId v)
    {
        check(v);
        if (flags_[v]) {
            flags_[v] = 0;
            --count_;
        }
    }

    DetectorSet without(VertexId v) const
    {
        DetectorSet copy = *this;
        copy.erase(v);
        return copy;
    }

    std::vector<VertexId> members() const
    {
        std::vector<VertexId> out;
        out.reserve(count_);
        for (VertexId v = 0; v < flags_.size(); ++v)
            if (flags_[v])
                out.push_back(v);
        return out;
    }

    bool is_subset_of(const DetectorSet& other) const
    {
        for (VertexId v = 0; v < flags_.size(); ++v)
            if (flags_[v] && !other.contains(v))
                return false;
        return true;
    }

    /// Ascending-sequence lexicographic comparison, the tie-break used by the solvers.
    friend bool lex_less(const DetectorSet& a, const DetectorSet& b)
    {
        auto ma = a.members(), mb = b.members();
        return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
    }

    friend bool operator==(const DetectorSet& a, const DetectorSet& b)
    {
        return a.count_ == b.count_ && a.members() == b.members();
    }

    std::string to_string() const
    {
        std::string out = "{";
        bool first = true;
        for (VertexId v : members()) {
            if (!first)
                out += ' ';
            out += std::to_string(v);
            first = false;
        }
        return out + "}";
    }

    friend std::ostream& operator<<(std::ostream& os, const DetectorSet& s) { return os << s.to_string(); }

private:
    void check(VertexId v) const
    {
        if (v >= flags_.size())
            throw DomainError("detector " + std::to_string(v) + " out of range");
    }

    std::vector<unsigned char> flags_;
    std::size_t count_ = 0;
};

/// Throws unless `s` ranges over exactly the vertices of `g`.
inline void require_same_universe(const Graph& g, const DetectorSet& s)
{
    if (s.universe() != g.order())
        throw DomainError("detector set universe " + std::to_string(s.universe()) +
                          " does not match graph order " + std::to_string(g.order()));
}

/// Whitespace or comma separated 0-based indices; braces and '#' comments ignored.
inline DetectorSet parse_detector_list(std::size_t universe, std::string_view text)
{
    DetectorSet s(universe);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = line.substr(0, line.find('#'));
        for (char& c : line)
            if (c == ',' || c == '{' || c == '}')
                c = ' ';
        std::istringstream f(line);
        std::string tok;
        while (f >> tok) {
            std::size_t used = 0;
            long long v = -1;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || v < 0 || static_cast<unsigned long long>(v) >= universe)
                throw InputError("bad vertex index '" + tok + "'", line_no);
            s.insert(static_cast<VertexId>(v));
        }
    }
    return s;
}

} // namespace redld
