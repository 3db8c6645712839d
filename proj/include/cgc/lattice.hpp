/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "cgc/errors.hpp"
#include "cgc/exact_scalar.hpp"
#include "cgc/int_linalg.hpp"
#include "cgc/linalg.hpp"
#include "cgc/rational.hpp"

namespace cgc {

using ExactVec = std::vector<ExactScalar>;

inline ExactVec exact_mat_vec(const IntMat &m, const ExactVec &v) {
    ExactVec r(m.size(), ExactScalar(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw internal_error("exact_mat_vec: dimension mismatch");
        for (std::size_t j = 0; j < v.size(); ++j)
            if (m[i][j] != 0) r[i] = r[i] + v[j] * Rational(m[i][j]);
    }
    return r;
}

// Sorted list of square-root keys (other than 1) appearing in the entries.
inline std::vector<Int> irrational_keys(const ExactVec &v) {
    std::set<Int> keys;
    for (const auto &x : v)
        for (const auto &[d, c] : x.terms())
            if (d != 1) keys.insert(d);
    return {keys.begin(), keys.end()};
}

inline std::vector<Int> all_keys(const ExactVec &v) {
    std::set<Int> keys;
    for (const auto &x : v)
        for (const auto &[d, c] : x.terms()) keys.insert(d);
    return {keys.begin(), keys.end()};
}

// Matrix whose rows are indexed by `keys` and columns by the entries of v:
// entry (k, j) is the coefficient of sqrt(key_k) in v_j.
inline Mat<Rational> key_coefficient_matrix(const std::vector<Int> &keys, const ExactVec &v) {
    Mat<Rational> m(keys.size(), Vec<Rational>(v.size(), Rational(0)));
    for (std::size_t k = 0; k < keys.size(); ++k)
        for (std::size_t j = 0; j < v.size(); ++j) m[k][j] = v[j].coefficient(keys[k]);
    return m;
}

// Dimension of the smallest rational subspace containing v: the rank of the
// full key-coefficient matrix of v.
inline std::size_t rational_dimension(const ExactVec &v) {
    bool nonzero = false;
    for (const auto &x : v) nonzero = nonzero || !x.is_zero();
    if (!nonzero) throw zero_vector("rational_dimension of zero vector");
    auto m = key_coefficient_matrix(all_keys(v), v);
    return rank(m);
}

struct NormalizedDirection {
    Unimodular T;        // unimodular transform
    Rational lambda;     // positive rational scaling
    ExactVec canonical;  // = lambda * (T.m * v), of shape (0^t, 1^s, alpha_1..alpha_r)
    std::size_t t = 0;   // leading zeros
    std::size_t s = 0;   // 0 or 1: presence of the unit slot
    std::size_t r = 0;   // irrational tail, (1, alpha_1..alpha_r) independent over Q
    std::size_t rational_dim = 0; // = s + r
};

// Canonicalizes a nonzero direction as lambda*T*v = (0^t, 1^s, alpha_1..alpha_r)
// with (1, alpha_1, ..., alpha_r) linearly independent over the rationals.
// Repeatedly removes a rational dependency of the irrational block via a
// unimodular inverse-transpose update, then finishes by scaling the rational
// block to a primitive integer vector and reducing it to (0^{k-1}, 1).
inline NormalizedDirection normalize_direction(const ExactVec &v) {
    std::size_t n = v.size();
    bool nonzero = false;
    for (const auto &x : v) nonzero = nonzero || !x.is_zero();
    if (!nonzero) throw zero_vector("normalize_direction of zero vector");

    ExactVec a(v);
    Unimodular T = Unimodular::identity(n);
    std::size_t k = 0; // rational prefix length

    auto apply = [&](const IntMat &tm, const IntMat &tinv) {
        a = exact_mat_vec(tm, a);
        T.m = int_mat_mul(tm, T.m);
        T.inv = int_mat_mul(T.inv, tinv);
    };

    for (;;) {
        // Stable partition: rational entries first, preserving order.
        std::vector<std::size_t> perm;
        for (std::size_t i = 0; i < n; ++i)
            if (a[i].is_rational()) perm.push_back(i);
        k = perm.size();
        for (std::size_t i = 0; i < n; ++i)
            if (!a[i].is_rational()) perm.push_back(i);
        bool ident = true;
        for (std::size_t i = 0; i < n; ++i) ident = ident && perm[i] == i;
        if (!ident) {
            IntMat p(n, IntVec(n, 0)), pinv(n, IntVec(n, 0));
            for (std::size_t i = 0; i < n; ++i) { p[i][perm[i]] = 1; pinv[perm[i]][i] = 1; }
            apply(p, pinv);
        }
        std::size_t m = n - k;
        if (m == 0) break;

        // Rational dependency c0 + <c, beta> = 0 of the irrational block beta:
        // solve for c in the nullspace of the irrational-key coefficient matrix.
        ExactVec beta(a.begin() + k, a.end());
        auto keys = irrational_keys(beta);
        auto coeffs = key_coefficient_matrix(keys, beta);
        auto ns = nullspace(coeffs, m);
        if (ns.empty()) break;

        // Clear denominators to a primitive integer c, first nonzero positive.
        Int lcm_den = 1;
        for (const auto &q : ns[0]) lcm_den = int_lcm(lcm_den, den(q));
        IntVec c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = num(ns[0][i]) * (lcm_den / den(ns[0][i]));
        c = primitive_vector(c);
        for (auto &x : c) {
            if (x == 0) continue;
            if (x < 0)
                for (auto &y : c) y = -y;
            break;
        }

        // E*c = (0^{m-1}, 1); transforming beta by E^{-T} turns the slot
        // <c, beta> (= -c0, a rational) into an explicit coordinate.
        auto er = euclid_reduce(c);
        IntMat tm = int_identity(n), tinv = int_identity(n);
        IntMat einv_t = int_transpose(er.e.inv); // E^{-T}
        IntMat et = int_transpose(er.e.m);       // (E^{-T})^{-1} = E^T
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                tm[k + i][k + j] = einv_t[i][j];
                tinv[k + i][k + j] = et[i][j];
            }
        apply(tm, tinv);
        // Loop: the partition pass will absorb the new rational entry.
    }

    NormalizedDirection nd;
    std::size_t r = n - k;
    nd.lambda = 1;
    bool rational_part_nonzero = false;
    for (std::size_t i = 0; i < k; ++i)
        rational_part_nonzero = rational_part_nonzero || !a[i].is_zero();

    if (rational_part_nonzero) {
        // Scale the rational block to a primitive integer vector, then reduce
        // it to (0^{k-1}, 1).
        Int lcm_den = 1;
        for (std::size_t i = 0; i < k; ++i) lcm_den = int_lcm(lcm_den, den(a[i].as_rational()));
        IntVec w(k);
        Int g = 0;
        for (std::size_t i = 0; i < k; ++i) {
            w[i] = num(a[i].as_rational()) * (lcm_den / den(a[i].as_rational()));
            g = int_gcd(g, w[i]);
        }
        for (auto &x : w) x /= g;
        nd.lambda = Rational(lcm_den, g); // lambda * a_R = w, integer with gcd 1
        auto er = euclid_reduce(w);
        IntMat tm = int_identity(n), tinv = int_identity(n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                tm[i][j] = er.e.m[i][j];
                tinv[i][j] = er.e.inv[i][j];
            }
        apply(tm, tinv);
        nd.t = k - 1;
        nd.s = 1;
    } else {
        nd.t = k;
        nd.s = 0;
    }
    nd.r = r;
    nd.canonical.reserve(n);
    for (const auto &x : a) nd.canonical.push_back(x * nd.lambda);
    nd.T = std::move(T);
    nd.rational_dim = nd.s + nd.r;
    return nd;
}

struct DirichletResult {
    Int n;      // multiplier, 1 <= n <= N
    IntVec s;   // s_i = round(n * v_i)
};

// Smallest 1 <= n <= N with max_i |n v_i - round(n v_i)| <= N^{-1/l}, l = dim.
// Exhaustive scan with exact sign tests on N*(n v_i - s_i)^l -+ 1.
inline DirichletResult dirichlet_approx(const ExactVec &v, const Int &N) {
    if (N < 1) throw internal_error("dirichlet_approx: N must be positive");
    std::size_t l = v.size();
    if (l == 0) throw internal_error("dirichlet_approx: empty vector");
    const Rational half(1, 2);
    for (Int n = 1; n <= N; ++n) {
        IntVec s(l);
        bool ok = true;
        for (std::size_t i = 0; i < l && ok; ++i) {
            ExactScalar nv = v[i] * Rational(n);
            s[i] = (nv + half).floor();
            ExactScalar err = nv - Rational(s[i]);
            // |err|^l <= 1/N  <=>  -1 <= N*err^l <= 1.
            ExactScalar p = Rational(N);
            for (std::size_t j = 0; j < l; ++j) p = p * err;
            ok = (p - 1).sign() <= 0 && (p + 1).sign() >= 0;
        }
        if (ok) return {n, std::move(s)};
    }
    throw internal_error("dirichlet_approx: scan failed (theorem guarantees a solution)");
}

// Smallest n = coset_offset (mod coset_stride), n >= 1, whose orbit point
// (n*v mod 1) lies within `radius` of `center` in every coordinate of the
// torus metric. Tests exactly `budget` candidates before giving up.
inline Int kronecker_hit(const ExactVec &v, const ExactVec &center, const Rational &radius,
                         const Int &coset_stride, const Int &coset_offset, const Int &budget) {
    if (coset_stride < 1) throw internal_error("kronecker_hit: stride must be positive");
    if (rat_sign(radius) <= 0) throw internal_error("kronecker_hit: radius must be positive");
    if (v.size() != center.size()) throw internal_error("kronecker_hit: dimension mismatch");
    Int n = coset_offset;
    if (n < 1) n += coset_stride * ((1 - n + coset_stride - 1) / coset_stride);
    Int tested = 0;
    for (; tested < budget; n += coset_stride) {
        ++tested;
        bool ok = true;
        for (std::size_t i = 0; i < v.size() && ok; ++i) {
            ExactScalar delta = (v[i] * Rational(n)).frac() - center[i];
            if (delta.sign() < 0) delta = -delta;
            // torus distance: min(delta, 1 - delta) <= radius
            ok = (delta - radius).sign() <= 0 || (delta + radius - 1).sign() >= 0;
        }
        if (ok) return n;
    }
    throw budget_exhausted("kronecker_hit: no orbit point found within budget");
}

struct AffineLattice {
    bool empty = true;
    std::size_t dim = 0; // ambient dimension
    IntVec basepoint;    // an integer point of the lattice (when nonempty)
    IntMat basis;        // rows: linearly independent integer generators

    static AffineLattice empty_lattice(std::size_t n) { return {true, n, {}, {}}; }
    static AffineLattice of(IntVec base, IntMat gens) {
        AffineLattice l;
        l.empty = false;
        l.dim = base.size();
        l.basepoint = std::move(base);
        l.basis = std::move(gens);
        return l;
    }
    // Rank of the affine hull's direction space.
    std::size_t rank() const { return basis.size(); }
};

using ExactEquation = std::pair<ExactVec, ExactScalar>; // <a, x> = b

// The affine lattice {x integer : <a_j, x> = b_j for all j}. Each equation
// splits through the square-root basis into one rational equation per key;
// denominators cleared, the integer system is solved by Hermite reduction.
inline AffineLattice integer_affine_hull(std::size_t n, const std::vector<ExactEquation> &equations) {
    IntMat rows;
    IntVec rhs;
    for (const auto &[coeffs, b] : equations) {
        if (coeffs.size() != n) throw internal_error("integer_affine_hull: dimension mismatch");
        std::set<Int> keys;
        for (const auto &x : coeffs)
            for (const auto &[d, c] : x.terms()) keys.insert(d);
        for (const auto &[d, c] : b.terms()) keys.insert(d);
        for (const auto &d : keys) {
            Vec<Rational> row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = coeffs[j].coefficient(d);
            Rational rb = b.coefficient(d);
            Int lcm_den = den(rb);
            for (const auto &q : row) lcm_den = int_lcm(lcm_den, den(q));
            IntVec irow(n);
            for (std::size_t j = 0; j < n; ++j)
                irow[j] = num(row[j]) * (lcm_den / den(row[j]));
            rows.push_back(std::move(irow));
            rhs.push_back(num(rb) * (lcm_den / den(rb)));
        }
    }
    if (rows.empty()) return AffineLattice::of(IntVec(n, 0), int_identity(n));
    auto sol = solve_integer(rows, rhs);
    if (!sol) return AffineLattice::empty_lattice(n);
    return AffineLattice::of(std::move(sol->particular), std::move(sol->kernel));
}

// Membership of an integer point in an affine lattice.
inline bool lattice_contains(const AffineLattice &l, const IntVec &p) {
    if (l.empty) return false;
    if (p.size() != l.dim) throw internal_error("lattice_contains: dimension mismatch");
    IntVec d(p);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= l.basepoint[i];
    if (l.basis.empty()) {
        for (auto &x : d)
            if (x != 0) return false;
        return true;
    }
    // d must be an integer combination of the basis rows.
    return solve_integer(int_transpose(l.basis), d).has_value();
}

// Set equality of two affine lattices.
inline bool lattice_equal(const AffineLattice &a, const AffineLattice &b) {
    if (a.empty || b.empty) return a.empty == b.empty;
    if (a.dim != b.dim || a.rank() != b.rank()) return false;
    if (!lattice_contains(b, a.basepoint) || !lattice_contains(a, b.basepoint)) return false;
    for (const auto &g : a.basis) {
        IntVec p(a.basepoint);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += g[i];
        if (!lattice_contains(b, p)) return false;
    }
    for (const auto &g : b.basis) {
        IntVec p(b.basepoint);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += g[i];
        if (!lattice_contains(a, p)) return false;
    }
    return true;
}

} // namespace cgc
