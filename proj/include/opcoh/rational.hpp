#ifndef OPCOH_RATIONAL_HPP
#define OPCOH_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "opcoh/errors.hpp"

namespace opcoh {

// Exact arbitrary-precision scalars. cpp_rational keeps gcd(|num|,den)=1 and
// den>0 as invariants, which is exactly the Rational contract we need.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Parses "p/q" or an integer string.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw Error("bad rational '" + s + "': " + e.what());
    }
}

} // namespace opcoh

#endif
