#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <string>

#include "trivortex/errors.hpp"

namespace trivortex {

/// Exact arbitrary-precision rational. All elimination work that feeds
/// bifurcation detection runs over this type; doubles are only used to
/// polish roots afterwards.
using Rational = boost::multiprecision::mpq_rational;

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw PreconditionError("rational_from_double: nonfinite input");
    return Rational(x);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Accepts "p/q", plain integers, and decimal literals ("0.25").
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational num(s.substr(0, slash));
        Rational den(s.substr(slash + 1));
        if (den == 0) throw PreconditionError("parse_rational: zero denominator in '" + s + "'");
        return num / den;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    Rational num(digits);
    Rational den = 1;
    for (std::size_t k = dot + 1; k < s.size(); ++k) den *= 10;
    return num / den;
}

inline int sign(const Rational& r) { return r == 0 ? 0 : (r > 0 ? 1 : -1); }

}  // namespace trivortex
