#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace redld {

/// Exact, always-reduced rational with arbitrary-precision numerator and denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Share values sh(x) are plain rationals.
using ShareValue = Rational;

inline Rational make_rational(long long num, long long den = 1) { return Rational(num) / Rational(den); }

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& r)
{
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

/// Parses "p/q" or "p"; throws std::runtime_error on malformed text.
inline Rational parse_rational(const std::string& text)
{
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return Rational(boost::multiprecision::cpp_int(text));
    boost::multiprecision::cpp_int num(text.substr(0, slash)), den(text.substr(slash + 1));
    if (den == 0)
        throw std::runtime_error("zero denominator in '" + text + "'");
    return Rational(num) / Rational(den);
}

} // namespace redld
