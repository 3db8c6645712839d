/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>
#include <vector>

#include "cgc/errors.hpp"

namespace cgc {

// Arbitrary-precision integer and rational. cpp_rational keeps values in
// lowest terms with a positive denominator, which is exactly the invariant
// the rational layer promises.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational &q) { return numerator(q); }
inline Int den(const Rational &q) { return denominator(q); }

inline int int_sign(const Int &a) { return a.sign(); }
inline int rat_sign(const Rational &q) { return q.sign(); }

// floor(p/q) with exact semantics for negative values.
inline Int rat_floor(const Rational &q) {
    Int p = num(q), d = den(q);
    Int quo = p / d; // truncates toward zero
    if (p < 0 && quo * d != p) --quo;
    return quo;
}

inline Int rat_ceil(const Rational &q) { return -rat_floor(-q); }

// Fractional part in [0, 1).
inline Rational rat_frac(const Rational &q) { return q - Rational(rat_floor(q)); }

inline Int int_gcd(const Int &a, const Int &b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int &a, const Int &b) { return boost::multiprecision::lcm(a, b); }

// Extended gcd: returns (g, x, y) with x*a + y*b == g == gcd(a,b) >= 0.
inline std::tuple<Int, Int, Int> xgcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b, r = a - q * b;
        a = std::exchange(b, r);
        x0 = std::exchange(x1, x0 - q * x1);
        y0 = std::exchange(y1, y0 - q * y1);
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    return {a, x0, y0};
}

// Floor of the integer square root; requires a >= 0.
inline Int isqrt(const Int &a) {
    if (a < 0) throw internal_error("isqrt of negative");
    return boost::multiprecision::sqrt(a);
}

// Splits n > 0 as g^2 * d with d squarefree; returns (g, d).
// Trial division: radicands in this artifact stay desk-sized.
inline std::pair<Int, Int> squarefree_decompose(Int n) {
    if (n <= 0) throw internal_error("squarefree_decompose needs a positive argument");
    Int g = 1, d = 1;
    for (Int p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p != 0) continue;
        int mult = 0;
        while (n % p == 0) { n /= p; ++mult; }
        for (int i = 0; i + 1 < mult; i += 2) g *= p;
        if (mult % 2 == 1) d *= p;
    }
    d *= n; // leftover n is prime (or 1)
    return {g, d};
}

// Dyadic bounds lo <= sqrt(q) <= hi with hi - lo <= 2^-bits; requires q >= 0.
inline std::pair<Rational, Rational> sqrt_bounds(const Rational &q, unsigned bits) {
    if (rat_sign(q) < 0) throw internal_error("sqrt_bounds of negative");
    if (rat_sign(q) == 0) return {Rational(0), Rational(0)};
    // sqrt(p/d) = sqrt(p*d)/d; scale by 4^bits so the isqrt carries the precision.
    Int pd = num(q) * den(q);
    Int scale = Int(1) << bits;
    Int s = isqrt(pd * scale * scale);
    Rational lo = Rational(s, den(q) * scale);
    Rational hi = Rational(s + 1, den(q) * scale);
    return {lo, hi};
}

// Largest rational p/2^bits with p/2^bits <= sqrt(q) (a certified lower bound).
inline Rational sqrt_lower_bound(const Rational &q, unsigned bits = 32) {
    return sqrt_bounds(q, bits).first;
}

// A certified upper bound for sqrt(q).
inline Rational sqrt_upper_bound(const Rational &q, unsigned bits = 32) {
    return sqrt_bounds(q, bits).second;
}

// Parses "p", "-p" or "p/q". Throws parse_error on malformed input.
inline Rational parse_rational(const std::string &s) {
    if (s.empty()) throw parse_error("empty rational literal");
    auto ok_part = [](const std::string &t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (!ok_part(s, true)) throw parse_error("bad rational literal: " + s);
            return Rational(Int(s));
        }
        std::string n = s.substr(0, slash), d = s.substr(slash + 1);
        if (!ok_part(n, true) || !ok_part(d, false)) throw parse_error("bad rational literal: " + s);
        Int dd(d);
        if (dd == 0) throw parse_error("zero denominator: " + s);
        return Rational(Int(n), dd);
    } catch (const std::exception &e) {
        throw parse_error(std::string("bad rational literal: ") + s);
    }
}

// Canonical text form: "p" for integers, otherwise "p/q".
inline std::string rational_to_string(const Rational &q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

} // namespace cgc
