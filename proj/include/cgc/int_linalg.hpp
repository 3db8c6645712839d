/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#pragma once

#include <optional>
#include <vector>

#include "cgc/errors.hpp"
#include "cgc/rational.hpp"

namespace cgc {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

inline IntMat int_identity(std::size_t n) {
    IntMat m(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntVec int_mat_vec(const IntMat &m, const IntVec &v) {
    IntVec r(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw internal_error("int_mat_vec: dimension mismatch");
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    }
    return r;
}

inline IntMat int_transpose(const IntMat &m) {
    if (m.empty()) return {};
    IntMat t(m[0].size(), IntVec(m.size(), 0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

inline IntMat int_mat_mul(const IntMat &a, const IntMat &b) {
    if (a.empty() || b.empty()) return {};
    IntMat r(a.size(), IntVec(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

// A unimodular integer matrix carried together with its inverse, so both
// directions of a change of basis stay exact and cheap.
struct Unimodular {
    IntMat m;   // the matrix itself
    IntMat inv; // its inverse (also integer; det = +-1)

    static Unimodular identity(std::size_t n) { return {int_identity(n), int_identity(n)}; }

    std::size_t size() const { return m.size(); }

    // this := L * this for an elementary 2x2 block L on rows (i, j);
    // the inverse picks up the corresponding column operation.
    void apply_row_block(std::size_t i, std::size_t j, const Int &x, const Int &y,
                         const Int &u, const Int &v) {
        if (x * v - y * u != 1 && x * v - y * u != -1)
            throw internal_error("apply_row_block: block is not unimodular");
        for (std::size_t c = 0; c < m.size(); ++c) {
            Int a = m[i][c], b = m[j][c];
            m[i][c] = x * a + y * b;
            m[j][c] = u * a + v * b;
        }
        // L^{-1} = [[v,-y],[-u,x]] / det; det = +-1.
        Int d = x * v - y * u;
        for (std::size_t r = 0; r < inv.size(); ++r) {
            Int a = inv[r][i], b = inv[r][j];
            inv[r][i] = (v * a - u * b) * d;
            inv[r][j] = (-y * a + x * b) * d;
        }
    }

    void add_row_multiple(std::size_t dst, std::size_t src, const Int &c) {
        for (std::size_t k = 0; k < m.size(); ++k) m[dst][k] += c * m[src][k];
        for (std::size_t r = 0; r < inv.size(); ++r) inv[r][src] -= c * inv[r][dst];
    }

    void swap_rows(std::size_t i, std::size_t j) {
        std::swap(m[i], m[j]);
        for (std::size_t r = 0; r < inv.size(); ++r) std::swap(inv[r][i], inv[r][j]);
    }

    void negate_row(std::size_t i) {
        for (auto &x : m[i]) x = -x;
        for (std::size_t r = 0; r < inv.size(); ++r) inv[r][i] = -inv[r][i];
    }
};

struct EuclidReduction {
    Int gcd;      // positive gcd of the input entries
    Unimodular e; // e.m * v == (0, ..., 0, gcd)
};

// Row-reduces a nonzero integer vector to (0,...,0,g) by unimodular row
// operations, leaving the gcd in the last slot.
inline EuclidReduction euclid_reduce(const IntVec &v) {
    std::size_t k = v.size();
    if (k == 0) throw internal_error("euclid_reduce: empty vector");
    bool all_zero = true;
    for (auto &x : v) all_zero = all_zero && x == 0;
    if (all_zero) throw zero_vector("euclid_reduce needs a nonzero vector");
    IntVec w(v);
    Unimodular e = Unimodular::identity(k);
    for (std::size_t j = 1; j < k; ++j) {
        // Combine slots j-1 and j so slot j holds gcd(w[0..j]) and j-1 zero.
        Int a = w[j - 1], b = w[j];
        if (a == 0 && b == 0) continue;
        auto [g, x, y] = xgcd(a, b);
        // [[-b/g, a/g], [x, y]] has determinant (-b*y - a*x)/g = -1.
        e.apply_row_block(j - 1, j, -b / g, a / g, x, y);
        w[j - 1] = 0;
        w[j] = g;
    }
    if (w[k - 1] < 0) {
        e.negate_row(k - 1);
        w[k - 1] = -w[k - 1];
    }
    return {w[k - 1], std::move(e)};
}

struct HnfResult {
    IntMat h;     // h = u.m * input, in row Hermite normal form
    Unimodular u; // the row transformation
};

// Row Hermite normal form by left multiplication: pivot columns strictly
// increase, pivots are positive, entries above each pivot are reduced into
// [0, pivot).
inline HnfResult hnf(const IntMat &input) {
    IntMat h(input);
    std::size_t rows = h.size();
    std::size_t cols = rows == 0 ? 0 : h[0].size();
    Unimodular u = Unimodular::identity(rows);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Fold column c of rows r.. into a single gcd entry at row r.
        std::size_t nz = r;
        while (nz < rows && h[nz][c] == 0) ++nz;
        if (nz == rows) continue;
        if (nz != r) { u.swap_rows(nz, r); std::swap(h[nz], h[r]); }
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (h[i][c] == 0) continue;
            Int a = h[r][c], b = h[i][c];
            auto [g, x, y] = xgcd(a, b);
            Int a1 = a / g, b1 = b / g;
            // [[x, y], [-b1, a1]] has determinant x*a1 + y*b1 = 1.
            for (std::size_t k = 0; k < cols; ++k) {
                Int hr = h[r][k], hi = h[i][k];
                h[r][k] = x * hr + y * hi;
                h[i][k] = -b1 * hr + a1 * hi;
            }
            u.apply_row_block(r, i, x, y, -b1, a1);
        }
        if (h[r][c] < 0) {
            u.negate_row(r);
            for (auto &x : h[r]) x = -x;
        }
        for (std::size_t i = 0; i < r; ++i) {
            // Reduce the entry above the pivot into [0, pivot).
            Int q;
            if (h[i][c] >= 0)
                q = h[i][c] / h[r][c];
            else
                q = -((-h[i][c] + h[r][c] - 1) / h[r][c]);
            if (q == 0) continue;
            for (std::size_t k = 0; k < cols; ++k) h[i][k] -= q * h[r][k];
            u.add_row_multiple(i, r, -q);
        }
        ++r;
    }
    return {std::move(h), std::move(u)};
}

struct IntegerSolveResult {
    IntVec particular;  // one integer solution of A x = b
    IntMat kernel;      // basis (as rows) of {x integer : A x = 0}
};

// All integer solutions of A x = b, via the Hermite form of A^T. The kernel
// rows form a lattice basis of the full integer kernel (the Hermite kernel
// is saturated), which integer_affine_hull and the fiber machinery rely on.
inline std::optional<IntegerSolveResult> solve_integer(const IntMat &a, const IntVec &b) {
    std::size_t m = a.size();
    std::size_t n = m == 0 ? 0 : a[0].size();
    if (b.size() != m) throw internal_error("solve_integer: dimension mismatch");
    if (n == 0) {
        for (auto &x : b)
            if (x != 0) return std::nullopt;
        return IntegerSolveResult{{}, {}};
    }
    auto [hp, up] = hnf(int_transpose(a)); // hp = up.m * a^T, row echelon
    // g = a * up.m^T has column j equal to a * (row j of up.m)^T = (row j of hp)^T.
    // Solve g y = b by forward substitution over the pivot structure of hp.
    std::size_t rk = 0;
    std::vector<std::size_t> pivot_row; // pivot_row[j] = index of pivot in hp row j
    for (std::size_t j = 0; j < hp.size(); ++j) {
        std::size_t c = 0;
        while (c < m && hp[j][c] == 0) ++c;
        if (c == m) break;
        pivot_row.push_back(c);
        ++rk;
    }
    IntVec y(n, 0);
    IntVec residual(b);
    for (std::size_t j = 0; j < rk; ++j) {
        std::size_t c = pivot_row[j];
        if (residual[c] % hp[j][c] != 0) return std::nullopt;
        y[j] = residual[c] / hp[j][c];
        if (y[j] != 0)
            for (std::size_t i = 0; i < m; ++i) residual[i] -= y[j] * hp[j][i];
    }
    for (auto &x : residual)
        if (x != 0) return std::nullopt;
    IntMat ut = int_transpose(up.m);
    IntVec x0 = int_mat_vec(ut, y);
    IntMat kernel;
    for (std::size_t j = rk; j < n; ++j) kernel.push_back(up.m[j]);
    return IntegerSolveResult{std::move(x0), std::move(kernel)};
}

// Basis of the integer kernel {x in Z^n : A x = 0}.
inline IntMat integer_kernel(const IntMat &a, std::size_t n) {
    if (a.empty()) return int_identity(n);
    auto sol = solve_integer(a, IntVec(a.size(), 0));
    if (!sol) throw internal_error("integer_kernel: homogeneous system inconsistent");
    return sol->kernel;
}

inline IntVec primitive_vector(IntVec v) {
    Int g = 0;
    for (auto &x : v) g = int_gcd(g, x);
    if (g == 0) throw zero_vector("primitive_vector of zero");
    for (auto &x : v) x /= g;
    return v;
}

} // namespace cgc
