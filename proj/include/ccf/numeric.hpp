#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <optional>
#include <string>

#include "ccf/errors.hpp"

namespace ccf {

// GMP-backed exact integers and rationals. Rationals are kept canonical
// (reduced, positive denominator) by the backend.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Int& x) { return x.sign(); }
inline int sign(const Rat& x) { return x.sign(); }

// floor(sqrt(n)) for n >= 0
inline Int isqrt(const Int& n) {
    if (n < 0) fail(errc::invalid_argument, "isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

// Exact rational square root, if one exists.
inline std::optional<Rat> rat_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    Int rn, rd;
    if (!is_square(num(q), &rn) || !is_square(den(q), &rd)) return std::nullopt;
    return Rat(rn, rd);
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

// sign of a + b*sqrt(m), m >= 0 integer (exact)
inline int sign_quad(const Rat& a, const Rat& b, const Int& m) {
    if (b == 0) return sign(a);
    if (m == 0) return sign(a);
    Int root;
    if (is_square(m, &root)) return sign(a + b * Rat(root));
    int sa = sign(a), sb = sign(b);
    if (sa >= 0 && sb >= 0) return (sa == 0 && sb == 0) ? 0 : 1;
    if (sa <= 0 && sb <= 0) return -1;
    // opposite signs: compare a^2 with b^2 m
    Rat d = a * a - b * b * Rat(m);
    if (sa > 0) return sign(d); // a > 0, b < 0
    return -sign(d);            // a < 0, b > 0
}

inline std::string to_string(const Int& x) { return x.str(); }
inline std::string to_string(const Rat& x) {
    if (den(x) == 1) return num(x).str();
    return num(x).str() + "/" + den(x).str();
}

// accepts "p", "p/q" and decimal literals like "0.35"
inline Rat parse_rat(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos)
            return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rat(Int(s));
        Int v = 0, den = 1;
        bool neg = false;
        for (char c : s) {
            if (c == '-') { neg = true; continue; }
            if (c == '+' || c == '.') continue;
            if (c < '0' || c > '9') fail(errc::invalid_argument, "bad digit");
            v = v * 10 + (c - '0');
        }
        for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        return Rat(neg ? -v : v, den);
    } catch (const error&) {
        throw;
    } catch (const std::exception&) {
        fail(errc::invalid_argument, "cannot parse rational '" + s + "'");
    }
}

} // namespace ccf
