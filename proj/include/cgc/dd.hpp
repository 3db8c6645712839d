/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#pragma once

#include <algorithm>
#include <vector>

#include "cgc/errors.hpp"
#include "cgc/linalg.hpp"

namespace cgc {

template <class F>
struct Halfspace { // <a, x> <= b
    Vec<F> a;
    F b;
};

template <class F>
struct Hyperplane { // <a, x> = b
    Vec<F> a;
    F b;
};

// Lexicographic comparison by exact sign tests; total order for determinism.
template <class F>
bool lex_less(const Vec<F> &x, const Vec<F> &y) {
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        int s = scalar_sign(x[i] - y[i]);
        if (s != 0) return s < 0;
    }
    return x.size() < y.size();
}

namespace detail {

// Scale a direction by 1/|first nonzero entry| (keeps orientation).
template <class F>
void normalize_ray(Vec<F> &r) {
    for (const auto &x : r) {
        int s = scalar_sign(x);
        if (s == 0) continue;
        F a = s < 0 ? F(-x) : x;
        for (auto &y : r) y = y / a;
        return;
    }
}

} // namespace detail

template <class F>
struct ConeDescription {
    std::vector<Vec<F>> lineality; // basis of the lineality space
    std::vector<Vec<F>> rays;      // extreme rays (up to positive scaling)
};

// Double description of the cone {y : <c, y> <= 0 for all inserted c}.
// Incremental insertion; adjacency of ray pairs decided by the algebraic
// rank test on their common active constraints.
template <class F>
ConeDescription<F> dd_cone(std::size_t dim, const std::vector<Vec<F>> &normals) {
    ConeDescription<F> st;
    for (std::size_t i = 0; i < dim; ++i) {
        Vec<F> e(dim, F(0));
        e[i] = F(1);
        st.lineality.push_back(std::move(e));
    }
    std::vector<Vec<F>> inserted;
    for (const auto &c : normals) {
        if (c.size() != dim) throw internal_error("dd_cone: dimension mismatch");
        if (vec_is_zero(c)) continue;

        std::size_t pivot = st.lineality.size();
        for (std::size_t i = 0; i < st.lineality.size(); ++i)
            if (scalar_sign(dot(c, st.lineality[i])) != 0) { pivot = i; break; }

        if (pivot < st.lineality.size()) {
            // The lineality space sticks out of the halfspace: split off one
            // generator as a ray and make everything else orthogonal to c.
            Vec<F> l0 = st.lineality[pivot];
            st.lineality.erase(st.lineality.begin() + pivot);
            F cl0 = dot(c, l0);
            if (scalar_sign(cl0) > 0) { l0 = vec_neg(l0); cl0 = -cl0; }
            for (auto &l : st.lineality) {
                F cl = dot(c, l);
                if (scalar_sign(cl) != 0) l = vec_sub(l, vec_scale(F(cl / cl0), l0));
            }
            for (auto &r : st.rays) {
                F cr = dot(c, r);
                if (scalar_sign(cr) != 0) r = vec_sub(r, vec_scale(F(cr / cl0), l0));
                detail::normalize_ray(r);
            }
            detail::normalize_ray(l0);
            st.rays.push_back(std::move(l0));
        } else {
            std::vector<Vec<F>> plus, zero, minus;
            for (auto &r : st.rays) {
                int s = scalar_sign(dot(c, r));
                (s > 0 ? plus : s < 0 ? minus : zero).push_back(std::move(r));
            }
            if (!plus.empty()) {
                std::size_t target = dim - st.lineality.size() - 2;
                for (const auto &p : plus)
                    for (const auto &m : minus) {
                        // adjacency: the common active constraints must cut
                        // out exactly a 2-face (modulo lineality)
                        Mat<F> act;
                        for (const auto &a : inserted)
                            if (scalar_sign(dot(a, p)) == 0 && scalar_sign(dot(a, m)) == 0)
                                act.push_back(a);
                        if (rank(act) != target) continue;
                        F cp = dot(c, p), cm = dot(c, m);
                        Vec<F> nr = vec_sub(vec_scale(cp, m), vec_scale(cm, p));
                        if (vec_is_zero(nr)) continue;
                        detail::normalize_ray(nr);
                        zero.push_back(std::move(nr));
                    }
            }
            st.rays = std::move(minus);
            for (auto &r : zero) st.rays.push_back(std::move(r));
        }
        inserted.push_back(c);

        // exact dedup of rays (normalized representatives)
        std::sort(st.rays.begin(), st.rays.end(), lex_less<F>);
        st.rays.erase(std::unique(st.rays.begin(), st.rays.end(),
                                  [](const Vec<F> &x, const Vec<F> &y) {
                                      for (std::size_t i = 0; i < x.size(); ++i)
                                          if (scalar_sign(x[i] - y[i]) != 0) return false;
                                      return true;
                                  }),
                      st.rays.end());
    }
    return st;
}

// Vertices of the polyhedron {x : <a_j, x> <= b_j}, via the homogenization
// cone over (x, t). Empty result means the empty polytope; any recession
// direction raises Unbounded.
template <class F>
std::vector<Vec<F>> dd_vertices(std::size_t n, const std::vector<Halfspace<F>> &halfspaces) {
    std::vector<Vec<F>> normals;
    Vec<F> tpos(n + 1, F(0));
    tpos[n] = F(-1); // t >= 0
    normals.push_back(std::move(tpos));
    for (const auto &h : halfspaces) {
        if (h.a.size() != n) throw internal_error("dd_vertices: dimension mismatch");
        Vec<F> c(h.a);
        c.push_back(-h.b);
        normals.push_back(std::move(c));
    }
    auto cone = dd_cone(n + 1, normals);
    std::vector<Vec<F>> vertices;
    bool recession = !cone.lineality.empty();
    for (const auto &r : cone.rays) {
        if (scalar_sign(r[n]) == 0) {
            recession = true;
            continue;
        }
        Vec<F> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / r[n];
        vertices.push_back(std::move(x));
    }
    if (vertices.empty()) return {}; // infeasible system
    if (recession) throw unbounded_polyhedron("halfspace system has a recession direction");
    std::sort(vertices.begin(), vertices.end(), lex_less<F>);
    return vertices;
}

template <class F>
struct FacetDescription {
    std::vector<Halfspace<F>> facets;      // proper facets within the affine hull
    std::vector<Hyperplane<F>> equations;  // affine hull as equalities
    Vec<F> basepoint;                      // affine hull: basepoint + span(basis)
    Mat<F> basis;
};

// Exact V-to-H conversion of a point set: affine-hull reduction to
// coordinates, a centroid shift, polar double description for the facets,
// and the affine hull itself as equations.
template <class F>
FacetDescription<F> vpolytope_facets(const std::vector<Vec<F>> &points) {
    if (points.empty()) throw empty_body("vpolytope_facets of empty point set");
    std::size_t n = points[0].size();
    FacetDescription<F> out;
    out.basepoint = points[0];
    Mat<F> diffs;
    for (const auto &p : points) diffs.push_back(vec_sub(p, out.basepoint));
    out.basis = independent_subset(diffs);
    std::size_t d = out.basis.size();

    // affine hull equations: directions orthogonal to the basis
    Mat<F> rows(out.basis);
    for (const auto &nrm : nullspace(rows, n)) {
        Vec<F> a(nrm);
        detail::normalize_ray(a);
        out.equations.push_back({a, dot(a, out.basepoint)});
    }
    if (d == 0) return out; // a single point: equations only

    // coordinates of the points in the hull basis
    Mat<F> g = gram(out.basis);
    std::vector<Vec<F>> us;
    for (const auto &p : points) {
        Vec<F> rhs(d);
        for (std::size_t k = 0; k < d; ++k) rhs[k] = dot(out.basis[k], vec_sub(p, out.basepoint));
        auto u = solve(g, rhs);
        if (!u) throw internal_error("vpolytope_facets: Gram solve failed");
        us.push_back(*u);
    }

    // centroid shift so the origin is interior, then polar duality
    Vec<F> m(d, F(0));
    for (const auto &u : us) m = vec_add(m, u);
    F inv_count = F(1) / F(static_cast<long>(us.size()));
    m = vec_scale(inv_count, m);
    std::vector<Halfspace<F>> polar;
    for (const auto &u : us) polar.push_back({vec_sub(u, m), F(1)});
    auto polar_vertices = dd_vertices(d, polar);
    if (polar_vertices.empty())
        throw internal_error("vpolytope_facets: polar of a full-dimensional polytope is empty");

    for (const auto &y : polar_vertices) {
        // u-space facet <y, u - m> <= 1 pulled back through the basis
        auto q = solve(g, y);
        if (!q) throw internal_error("vpolytope_facets: Gram solve failed");
        Vec<F> a(n, F(0));
        for (std::size_t k = 0; k < d; ++k) a = vec_add(a, vec_scale((*q)[k], out.basis[k]));
        F rhs = F(1) + dot(y, m) + dot(a, out.basepoint);
        // canonicalize scale
        Vec<F> row(a);
        row.push_back(rhs);
        detail::normalize_ray(row);
        Vec<F> a2(row.begin(), row.end() - 1);
        out.facets.push_back({std::move(a2), row.back()});
    }
    std::sort(out.facets.begin(), out.facets.end(),
              [](const Halfspace<F> &x, const Halfspace<F> &y) {
                  Vec<F> xr(x.a), yr(y.a);
                  xr.push_back(x.b);
                  yr.push_back(y.b);
                  return lex_less(xr, yr);
              });
    return out;
}

} // namespace cgc
