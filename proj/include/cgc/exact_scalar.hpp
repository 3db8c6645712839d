/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cgc/errors.hpp"
#include "cgc/rational.hpp"

namespace cgc {

// Element of the multiquadratic field Q(sqrt(d_1), sqrt(d_2), ...):
// a finite sum  sum_d coeff[d] * sqrt(d)  over squarefree positive integer
// keys d, with d == 1 carrying the rational part. Invariants: every stored
// coefficient is nonzero and every key is squarefree. Because square roots
// of distinct squarefree integers are linearly independent over Q, the zero
// value has exactly one representation (the empty map), so structural
// equality is value equality.
class ExactScalar {
  public:
    using Terms = std::map<Int, Rational>;

    ExactScalar() = default;
    /*implicit*/ ExactScalar(const Rational &q) { add_term(q, 1); }
    /*implicit*/ ExactScalar(const Int &z) { add_term(Rational(z), 1); }
    /*implicit*/ ExactScalar(long z) { add_term(Rational(z), 1); }
    /*implicit*/ ExactScalar(int z) { add_term(Rational(z), 1); }

    // coeff * sqrt(radicand); the radicand may carry square factors.
    static ExactScalar sqrt_term(const Rational &coeff, const Int &radicand) {
        if (radicand <= 0) throw internal_error("sqrt of a nonpositive integer");
        auto [g, d] = squarefree_decompose(radicand);
        ExactScalar r;
        r.add_term(coeff * Rational(g), d);
        return r;
    }

    // sqrt of a nonnegative rational: sqrt(p/q) = sqrt(p*q)/q.
    static ExactScalar sqrt_rational(const Rational &q) {
        if (rat_sign(q) < 0) throw internal_error("sqrt of a negative rational");
        if (rat_sign(q) == 0) return ExactScalar();
        return sqrt_term(Rational(1, den(q)), num(q) * den(q));
    }

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
    }

    // The coefficient map {squarefree d -> rational coefficient}.
    const Terms &basis_coords() const { return terms_; }

    Rational rational_part() const {
        auto it = terms_.find(Int(1));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Coefficient of sqrt(d) (d squarefree; d = 1 gives the rational part).
    Rational coefficient(const Int &d) const {
        auto it = terms_.find(d);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational as_rational() const {
        if (!is_rational()) throw internal_error("scalar is not rational: " + to_string());
        return rational_part();
    }

    ExactScalar operator-() const {
        ExactScalar r;
        for (auto &[d, c] : terms_) r.terms_.emplace(d, -c);
        return r;
    }

    ExactScalar &operator+=(const ExactScalar &o) {
        for (auto &[d, c] : o.terms_) add_term(c, d);
        return *this;
    }
    ExactScalar &operator-=(const ExactScalar &o) {
        for (auto &[d, c] : o.terms_) add_term(-c, d);
        return *this;
    }
    friend ExactScalar operator+(ExactScalar a, const ExactScalar &b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar &b) { return a -= b; }

    friend ExactScalar operator*(const ExactScalar &a, const ExactScalar &b) {
        ExactScalar r;
        for (auto &[d1, c1] : a.terms_)
            for (auto &[d2, c2] : b.terms_) {
                // sqrt(d1)*sqrt(d2) = g*sqrt((d1/g)*(d2/g)) with g = gcd; the
                // product of the cofactors is squarefree because the keys are.
                Int g = int_gcd(d1, d2);
                r.add_term(c1 * c2 * Rational(g), (d1 / g) * (d2 / g));
            }
        return r;
    }
    ExactScalar &operator*=(const ExactScalar &o) { return *this = *this * o; }

    // Multiplicative inverse by conjugation: split x = A + sqrt(p)*B over a
    // prime p occurring in some radicand; then x*(A - sqrt(p)B) = A^2 - p*B^2
    // lives in the subfield without p, and recursion bottoms out in Q.
    ExactScalar inverse() const {
        if (is_zero()) throw internal_error("division by zero");
        if (is_rational()) return ExactScalar(Rational(1) / rational_part());
        Int p = smallest_prime_factor(terms_.rbegin()->first);
        ExactScalar a, b; // x = a + sqrt(p)*b
        for (auto &[d, c] : terms_) {
            if (d % p == 0)
                b.add_term(c, d / p);
            else
                a.add_term(c, d);
        }
        ExactScalar sqrt_p = sqrt_term(Rational(1), p);
        ExactScalar conj = a - sqrt_p * b;
        ExactScalar denom = a * a - ExactScalar(Rational(Int(p))) * b * b;
        return conj * denom.inverse();
    }

    friend ExactScalar operator/(const ExactScalar &a, const ExactScalar &b) {
        return a * b.inverse();
    }
    ExactScalar &operator/=(const ExactScalar &o) { return *this = *this / o; }

    // Exact sign via adaptive dyadic interval refinement. A nonzero value is
    // bounded away from zero, so refinement terminates; the empty map is the
    // only zero. Hard precision cap guards against bugs, not inputs.
    int sign() const {
        if (terms_.empty()) return 0;
        if (terms_.size() == 1) return rat_sign(terms_.begin()->second);
        for (unsigned bits = 64; bits <= 65536; bits *= 2) {
            auto [lo, hi] = interval(bits);
            if (rat_sign(lo) > 0) return 1;
            if (rat_sign(hi) < 0) return -1;
        }
        throw internal_error("sign refinement exceeded precision cap for " + to_string());
    }

    // Exact floor: numeric bracket, then sign confirmation on both fences.
    Int floor() const {
        if (is_rational()) {
            Int k = rat_floor(rational_part());
            // Confirmation is trivially true here but kept for uniformity.
            return k;
        }
        for (unsigned bits = 64; bits <= 65536; bits *= 2) {
            auto [lo, hi] = interval(bits);
            Int k = rat_floor(lo);
            if (rat_floor(hi) != k) continue;
            if ((*this - ExactScalar(Rational(k))).sign() >= 0 &&
                (*this - ExactScalar(Rational(k + 1))).sign() < 0)
                return k;
        }
        throw internal_error("floor bracket exceeded precision cap for " + to_string());
    }

    Int ceil() const { return -(-*this).floor(); }

    // Fractional part, in [0, 1).
    ExactScalar frac() const { return *this - ExactScalar(Rational(floor())); }

    // Certified dyadic enclosure of the value.
    std::pair<Rational, Rational> interval(unsigned bits) const {
        Rational lo(0), hi(0);
        for (auto &[d, c] : terms_) {
            if (d == 1) {
                lo += c;
                hi += c;
                continue;
            }
            auto [slo, shi] = sqrt_bounds(Rational(d), bits);
            if (rat_sign(c) >= 0) {
                lo += c * slo;
                hi += c * shi;
            } else {
                lo += c * shi;
                hi += c * slo;
            }
        }
        return {lo, hi};
    }

    int cmp(const ExactScalar &o) const { return (*this - o).sign(); }

    friend bool operator==(const ExactScalar &a, const ExactScalar &b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const ExactScalar &a, const ExactScalar &b) { return !(a == b); }
    friend bool operator<(const ExactScalar &a, const ExactScalar &b) { return a.cmp(b) < 0; }
    friend bool operator<=(const ExactScalar &a, const ExactScalar &b) { return a.cmp(b) <= 0; }
    friend bool operator>(const ExactScalar &a, const ExactScalar &b) { return a.cmp(b) > 0; }
    friend bool operator>=(const ExactScalar &a, const ExactScalar &b) { return a.cmp(b) >= 0; }

    // "0", "3/2", "1+1*sqrt(2)", "-1/2*sqrt(3)", "2-3*sqrt(5)".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto &[d, c] : terms_) {
            std::string t = rational_to_string(c);
            if (d != 1) t += "*sqrt(" + d.str() + ")";
            if (!s.empty() && t[0] != '-') s += "+";
            s += t;
        }
        return s;
    }

    static ExactScalar from_string(const std::string &s);

    double to_double() const {
        auto [lo, hi] = interval(64);
        return (lo.convert_to<double>() + hi.convert_to<double>()) / 2.0;
    }

  private:
    void add_term(const Rational &c, const Int &d) {
        if (rat_sign(c) == 0) return;
        auto [it, inserted] = terms_.emplace(d, c);
        if (!inserted) {
            it->second += c;
            if (rat_sign(it->second) == 0) terms_.erase(it);
        }
    }

    static Int smallest_prime_factor(Int n) {
        for (Int p = 2; p * p <= n; p == 2 ? p = 3 : p += 2)
            if (n % p == 0) return p;
        return n;
    }

    Terms terms_;
};

inline ExactScalar ExactScalar::from_string(const std::string &s) {
    if (s.empty()) throw parse_error("empty scalar literal");
    // Split into signed terms at top level; the grammar has no parentheses
    // outside of sqrt(...).
    ExactScalar total;
    std::size_t i = 0;
    while (i < s.size()) {
        int sgn = 1;
        if (s[i] == '+') ++i;
        else if (s[i] == '-') { sgn = -1; ++i; }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty()) throw parse_error("bad scalar literal: " + s);
        std::size_t star = term.find("*sqrt(");
        try {
            if (star != std::string::npos || term.rfind("sqrt(", 0) == 0) {
                std::string coeff = star == std::string::npos ? "1" : term.substr(0, star);
                std::size_t open = term.find("sqrt(") + 5;
                std::size_t close = term.find(')', open);
                if (close == std::string::npos || close + 1 != term.size())
                    throw parse_error("bad sqrt term: " + term);
                Int d(term.substr(open, close - open));
                if (d <= 0) throw parse_error("bad radicand in: " + term);
                total += ExactScalar::sqrt_term(Rational(sgn) * parse_rational(coeff), d);
            } else {
                total += ExactScalar(Rational(sgn) * parse_rational(term));
            }
        } catch (const parse_error &) {
            throw;
        } catch (const std::exception &) {
            throw parse_error("bad scalar literal: " + s);
        }
        i = j;
    }
    return total;
}

inline int scalar_sign(const ExactScalar &x) { return x.sign(); }
inline int scalar_sign(const Rational &x) { return rat_sign(x); }

} // namespace cgc
