/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#pragma once

#include <algorithm>
#include <vector>

#include "cgc/bodies.hpp"
#include "cgc/dd.hpp"
#include "cgc/errors.hpp"
#include "cgc/int_linalg.hpp"
#include "cgc/linalg.hpp"
#include "cgc/rational.hpp"

namespace cgc {

// The halfspace <a, x> <= rhs with integer data.
struct Cut {
    IntVec a;
    Int rhs;
    bool operator==(const Cut &o) const { return a == o.a && rhs == o.rhs; }
};

// A finite family of cuts, deduplicated by direction: adding two cuts with
// the same normal keeps the stronger (smaller) right-hand side.
class CutSet {
  public:
    void add(Cut c) {
        for (auto &old : cuts_)
            if (old.a == c.a) {
                if (c.rhs < old.rhs) old.rhs = c.rhs;
                return;
            }
        cuts_.push_back(std::move(c));
    }
    void add_all(const CutSet &o) {
        for (const auto &c : o.cuts_) add(c);
    }
    const std::vector<Cut> &cuts() const { return cuts_; }
    std::size_t size() const { return cuts_.size(); }
    bool contains_direction(const IntVec &a) const {
        for (const auto &c : cuts_)
            if (c.a == a) return true;
        return false;
    }

  private:
    std::vector<Cut> cuts_;
};

// A bounded rational polyhedron, stored as its generating halfspaces plus the
// enumerated extreme points (lexicographically sorted; empty means the empty set).
struct RationalPolyhedron {
    std::size_t dim = 0;
    std::vector<Halfspace<Rational>> halfspaces;
    std::vector<Vec<Rational>> vertices;

    bool empty() const { return vertices.empty(); }

    bool contains_point(const Vec<Rational> &x) const {
        for (const auto &h : halfspaces)
            if (rat_sign(dot(h.a, x) - h.b) > 0) return false;
        return true;
    }
};

inline RationalPolyhedron polyhedron_from_halfspaces(std::size_t n,
                                                     std::vector<Halfspace<Rational>> hs) {
    RationalPolyhedron p;
    p.dim = n;
    p.halfspaces = std::move(hs);
    p.vertices = dd_vertices(n, p.halfspaces); // throws on unbounded systems
    return p;
}

inline Halfspace<Rational> cut_halfspace(const Cut &c) {
    Vec<Rational> a;
    for (const auto &x : c.a) a.emplace_back(x);
    return {std::move(a), Rational(c.rhs)};
}

inline RationalPolyhedron polyhedron_from_cuts(std::size_t n, const CutSet &s) {
    std::vector<Halfspace<Rational>> hs;
    for (const auto &c : s.cuts()) hs.push_back(cut_halfspace(c));
    return polyhedron_from_halfspaces(n, std::move(hs));
}

// The cut <a, x> <= floor(h_K(a)) induced by an integer direction.
inline Cut cut_for(const Body &k, const IntVec &a) {
    ExactVec dir;
    for (const auto &x : a) dir.emplace_back(Rational(x));
    return {a, k.support(dir).floor()};
}

// Cuts in the directions +-e_i; they bound every polyhedron built later.
inline CutSet box_cuts(const Body &k) {
    CutSet s;
    std::size_t n = k.ambient_dimension();
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        s.add(cut_for(k, e));
        e[i] = -1;
        s.add(cut_for(k, e));
    }
    return s;
}

// Set equality; extreme point lists are canonical, so compare directly.
inline bool polyhedra_equal(const RationalPolyhedron &p, const RationalPolyhedron &q) {
    return p.vertices == q.vertices;
}

// Does p contain q?
inline bool polyhedron_contains(const RationalPolyhedron &p, const RationalPolyhedron &q) {
    for (const auto &v : q.vertices)
        if (!p.contains_point(v)) return false;
    return true;
}

// Irredundant canonical H-form of a nonempty bounded polyhedron: facets and
// hull equations with primitive integer normals, lexicographically sorted.
struct CanonicalHrep {
    std::vector<std::pair<IntVec, Rational>> facets;    // <a, x> <= b
    std::vector<std::pair<IntVec, Rational>> equations; // <a, x> = b
};

inline std::pair<IntVec, Rational> primitive_row(const Vec<Rational> &a, const Rational &b) {
    Int lcm(1);
    for (const auto &x : a) lcm = int_lcm(lcm, den(x));
    lcm = int_lcm(lcm, den(b));
    IntVec ia;
    Int g(0);
    for (const auto &x : a) {
        Int v = num(x) * (lcm / den(x));
        ia.push_back(v);
        g = int_gcd(g, v);
    }
    if (g == 0) throw zero_vector("halfspace with zero normal");
    for (auto &v : ia) v /= g;
    return {std::move(ia), b * Rational(lcm) / Rational(g)};
}

inline CanonicalHrep canonical_hrep(const RationalPolyhedron &p) {
    if (p.empty()) throw empty_body("canonical H-form of an empty polyhedron");
    auto fd = vpolytope_facets<Rational>(p.vertices);
    CanonicalHrep out;
    for (const auto &f : fd.facets) out.facets.push_back(primitive_row(f.a, f.b));
    for (const auto &eq : fd.equations) {
        auto row = primitive_row(eq.a, eq.b);
        // orient equations with a positive leading entry
        for (const auto &x : row.first) {
            if (x == 0) continue;
            if (x < 0) {
                for (auto &y : row.first) y = -y;
                row.second = -row.second;
            }
            break;
        }
        out.equations.push_back(std::move(row));
    }
    auto cmp = [](const std::pair<IntVec, Rational> &l, const std::pair<IntVec, Rational> &r) {
        if (l.first != r.first) return l.first < r.first;
        return l.second < r.second;
    };
    std::sort(out.facets.begin(), out.facets.end(), cmp);
    std::sort(out.equations.begin(), out.equations.end(), cmp);
    return out;
}

} // namespace cgc
