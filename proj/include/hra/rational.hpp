#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hra {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Renders "p/q" (or just "p" for integers), matching the CSV export format.
inline std::string rational_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

/// Smallest integer >= r (threshold counts like l/f and 3m/8 need this exactly).
inline BigInt ceil_rational(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (q * den < num) ++q;
    return q;
}

/// True iff r is a/2^b with b <= 62; used by exact Bernoulli coin draws.
inline bool is_dyadic(const Rational& r, unsigned* bits_out = nullptr) {
    BigInt den = boost::multiprecision::denominator(r);
    unsigned bits = 0;
    while (den > 1) {
        if (den % 2 != 0 || bits >= 62) return false;
        den /= 2;
        ++bits;
    }
    if (bits_out) *bits_out = bits;
    return true;
}

}  // namespace hra
