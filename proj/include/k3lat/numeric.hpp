// Exact arithmetic primitives shared by the lattice library.
//
// Everything downstream (discriminants, enumeration bounds, divisibility
// tests) is proof-carrying, so all arithmetic is arbitrary-precision
// integer/rational. No floating point anywhere in the library.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3lat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// floor(a/b) for b != 0, correct for negative operands
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int floor_rat(const Rat& q) { return floor_div(rat_num(q), rat_den(q)); }
inline Int ceil_rat(const Rat& q) { return ceil_div(rat_num(q), rat_den(q)); }

// floor(sqrt(n)) for n >= 0
inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt_floor: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int r = isqrt_floor(n);
    return r * r == n;
}

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// largest integer z with z <= c + sqrt(q), q >= 0
inline Int floor_center_plus_sqrt(const Rat& c, const Rat& q) {
    if (q < 0) throw std::domain_error("floor_center_plus_sqrt: q < 0");
    auto ok = [&](const Int& z) {
        if (Rat(z) <= c) return true;
        Rat d = Rat(z) - c;
        return d * d <= q;
    };
    Int z = floor_rat(c) + isqrt_floor(ceil_rat(q)) + 2;
    while (!ok(z)) --z;
    return z;
}

// smallest integer z with z >= c - sqrt(q), q >= 0
inline Int ceil_center_minus_sqrt(const Rat& c, const Rat& q) {
    return -floor_center_plus_sqrt(-c, q);
}

inline std::string to_string(const Int& v) { return v.str(); }

} // namespace k3lat
