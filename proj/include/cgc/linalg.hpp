/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#pragma once

#include <optional>
#include <vector>

#include "cgc/errors.hpp"
#include "cgc/exact_scalar.hpp"

namespace cgc {

// Dense exact linear algebra over an ordered field scalar F (Rational or
// ExactScalar). Pivoting is "first nonzero", so every routine is
// deterministic for a given input.

template <typename F> using Vec = std::vector<F>;
template <typename F> using Mat = std::vector<std::vector<F>>;

template <typename F> bool vec_is_zero(const Vec<F> &v) {
    for (auto &x : v)
        if (scalar_sign(x) != 0) return false;
    return true;
}

template <typename F> F dot(const Vec<F> &a, const Vec<F> &b) {
    if (a.size() != b.size()) throw internal_error("dot: dimension mismatch");
    F s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <typename F> Vec<F> vec_add(const Vec<F> &a, const Vec<F> &b) {
    if (a.size() != b.size()) throw internal_error("vec_add: dimension mismatch");
    Vec<F> r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

template <typename F> Vec<F> vec_sub(const Vec<F> &a, const Vec<F> &b) {
    if (a.size() != b.size()) throw internal_error("vec_sub: dimension mismatch");
    Vec<F> r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

template <typename F> Vec<F> vec_scale(const F &c, const Vec<F> &v) {
    Vec<F> r(v);
    for (auto &x : r) x = c * x;
    return r;
}

template <typename F> Vec<F> vec_neg(const Vec<F> &v) {
    Vec<F> r(v);
    for (auto &x : r) x = -x;
    return r;
}

template <typename F> F norm_sq(const Vec<F> &v) { return dot(v, v); }

template <typename F> Mat<F> transpose(const Mat<F> &m) {
    if (m.empty()) return {};
    Mat<F> t(m[0].size(), Vec<F>(m.size(), F{}));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

template <typename F> Vec<F> mat_vec(const Mat<F> &m, const Vec<F> &v) {
    Vec<F> r;
    r.reserve(m.size());
    for (auto &row : m) r.push_back(dot(row, v));
    return r;
}

template <typename F> Mat<F> mat_mul(const Mat<F> &a, const Mat<F> &b) {
    Mat<F> bt = transpose(b);
    Mat<F> r(a.size(), Vec<F>(bt.size(), F{}));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < bt.size(); ++j) r[i][j] = dot(a[i], bt[j]);
    return r;
}

// In-place reduction to row echelon form; returns pivot columns.
template <typename F> std::vector<std::size_t> row_echelon(Mat<F> &m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && scalar_sign(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        F inv = F(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || scalar_sign(m[i][c]) == 0) continue;
            F f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename F> std::size_t rank(Mat<F> m) { return row_echelon(m).size(); }

// One solution of A x = b, or nullopt when inconsistent.
template <typename F>
std::optional<Vec<F>> solve(const Mat<F> &a, const Vec<F> &b) {
    std::size_t rows = a.size();
    if (rows != b.size()) throw internal_error("solve: dimension mismatch");
    std::size_t cols = rows == 0 ? 0 : a[0].size();
    Mat<F> aug(a);
    for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    auto pivots = row_echelon(aug);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vec<F> x(cols, F{});
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

// Basis of {x : A x = 0}, from the reduced echelon form (deterministic).
template <typename F> std::vector<Vec<F>> nullspace(const Mat<F> &a, std::size_t cols) {
    Mat<F> m(a);
    auto pivots = row_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec<F>> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        Vec<F> v(cols, F{});
        v[c] = F(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (pivots[r] < c) v[pivots[r]] = -m[r][c];
        basis.push_back(v);
    }
    return basis;
}

// Greedy maximal linearly independent subset, in input order.
template <typename F> std::vector<Vec<F>> independent_subset(const std::vector<Vec<F>> &vs) {
    std::vector<Vec<F>> kept;
    Mat<F> echelon;
    for (auto &v : vs) {
        Mat<F> trial = echelon;
        trial.push_back(v);
        if (row_echelon(trial).size() > echelon.size()) {
            kept.push_back(v);
            Mat<F> e;
            for (auto &k : kept) e.push_back(k);
            row_echelon(e);
            echelon = std::move(e);
        }
    }
    return kept;
}

// Gram matrix B^T B for column vectors given as rows of `basis`.
template <typename F> Mat<F> gram(const std::vector<Vec<F>> &basis) {
    Mat<F> g(basis.size(), Vec<F>(basis.size(), F{}));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) g[i][j] = dot(basis[i], basis[j]);
    return g;
}

// Coordinates u with x = sum u_i basis_i, for x in the span; nullopt outside.
template <typename F>
std::optional<Vec<F>> coordinates_in_span(const std::vector<Vec<F>> &basis, const Vec<F> &x) {
    if (basis.empty()) return vec_is_zero(x) ? std::optional<Vec<F>>(Vec<F>{}) : std::nullopt;
    std::size_t n = basis[0].size();
    Mat<F> a(n, Vec<F>(basis.size(), F{}));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) a[i][j] = basis[j][i];
    return solve(a, x);
}

// Orthogonal projection of x onto span(basis): B (B^T B)^{-1} B^T x.
template <typename F>
Vec<F> project_onto_span(const std::vector<Vec<F>> &basis, const Vec<F> &x) {
    if (basis.empty()) return Vec<F>(x.size(), F{});
    Mat<F> g = gram(basis);
    Vec<F> rhs;
    rhs.reserve(basis.size());
    for (auto &b : basis) rhs.push_back(dot(b, x));
    auto y = solve(g, rhs);
    if (!y) throw internal_error("project_onto_span: dependent basis");
    Vec<F> p(x.size(), F{});
    for (std::size_t j = 0; j < basis.size(); ++j) p = vec_add(p, vec_scale((*y)[j], basis[j]));
    return p;
}

template <typename F> Vec<F> to_field_vec(const std::vector<Rational> &v) {
    Vec<F> r;
    r.reserve(v.size());
    for (auto &x : v) r.emplace_back(x);
    return r;
}

inline Vec<ExactScalar> to_exact_vec(const std::vector<Rational> &v) {
    return to_field_vec<ExactScalar>(v);
}

} // namespace cgc
