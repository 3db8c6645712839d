/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bodies.hpp"
#include "dd.hpp"
#include "errors.hpp"
#include "exact_scalar.hpp"
#include "int_linalg.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "polyhedra.hpp"
#include "rational.hpp"

namespace cgc {

// ---------------------------------------------------------------------------
// Result records
// ---------------------------------------------------------------------------

// Witness that a cut valid on an exposed face has been replaced by a cut
// valid on the whole body: on the affine lattice of integer points of the
// exposing hyperplane, the halfspace of w' is contained in the halfspace of
// the original face cut.  The containment is re-verified exactly before the
// witness is returned.
struct LiftWitness {
    IntVec w_prime;
    Int n_dirichlet = 1;  // accepted simultaneous-approximation multiplier
    Rational epsilon;     // margin used in the acceptance inequality
    bool vacuous = false; // hyperplane has no integer points; w' = w
};

struct SeparationTrace {
    std::vector<ExactVec> simplex_directions; // w_1 .. w_{r+1} in the tail space
    Rational a;                               // orbit target magnitude
    Rational b;                               // orbit target tolerance scale
    std::vector<Int> kronecker_indices;       // accepted orbit multipliers n_i
};

// A family of integer cut directions pinning the supporting hyperplane of a
// direction v onto the affine hull of the hyperplane's integer points,
// together with an exact nonnegative combination certifying validity:
//   sum_i lambda_i * a_i       = multiple * v          (componentwise), and
//   sum_i lambda_i * floor(h_K(a_i)) <= multiple * h_K(v),
// strictly when the hyperplane carries no integer point.
struct SeparationCertificate {
    std::vector<IntVec> cut_vectors;
    std::vector<ExactScalar> lambdas;
    ExactScalar multiple;
    bool strict = false;
    SeparationTrace trace;
};

struct ClosureTrace {
    Rational delta{0}; // positive lower bound on interior-vertex boundary distance
    Rational R{0};     // 1/delta when delta > 0
    std::size_t enumerated_w_count = 0;
    std::vector<std::pair<Vec<Rational>, IntVec>> fiber_minimizers;
    int recursion_depth = 0;
};

struct ClosureResult {
    RationalPolyhedron polyhedron;
    CutSet generating_cuts;
    ClosureTrace trace;
};

// The polyhedron cut out by a family of integer cuts (plus the ambient
// dimension); emptiness is reported through the polyhedron itself.
inline RationalPolyhedron cc_polyhedron(std::size_t n, const CutSet &s) {
    return polyhedron_from_cuts(n, s);
}

namespace detail {

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

inline Int dot_int(const IntVec &a, const IntVec &b) {
    if (a.size() != b.size()) throw internal_error("dot_int: dimension mismatch");
    Int r(0);
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline Rational dot_int_rat(const IntVec &a, const Vec<Rational> &x) {
    if (a.size() != x.size()) throw internal_error("dot_int_rat: dimension mismatch");
    Rational r(0);
    for (std::size_t i = 0; i < a.size(); ++i) r += Rational(Rational(a[i]) * x[i]);
    return r;
}

inline ExactScalar dot_int_exact(const IntVec &a, const ExactVec &x) {
    if (a.size() != x.size()) throw internal_error("dot_int_exact: dimension mismatch");
    ExactScalar r(0);
    for (std::size_t i = 0; i < a.size(); ++i) r = r + x[i] * Rational(a[i]);
    return r;
}

inline Int floor_div(const Int &a, const Int &b) {
    if (b <= 0) throw internal_error("floor_div: positive divisor required");
    Int q = a / b;
    if (Int(q * b) > a) --q;
    return q;
}

// Certified positive rational lower bound for a positive exact value.
inline Rational positive_rational_lower(const ExactScalar &x) {
    if (x.sign() <= 0) throw internal_error("positive_rational_lower: nonpositive value");
    for (unsigned bits = 16; bits <= 1u << 14; bits *= 2) {
        auto iv = x.interval(bits);
        if (rat_sign(iv.first) > 0) return iv.first;
    }
    throw internal_error("positive_rational_lower: interval refinement failed");
}

// Positive rational lower bound for the square root of a positive rational.
inline Rational positive_sqrt_lower(const Rational &q) {
    if (rat_sign(q) <= 0) throw internal_error("positive_sqrt_lower: nonpositive value");
    for (unsigned bits = 32; bits <= 1u << 14; bits *= 2) {
        Rational lo = sqrt_lower_bound(q, bits);
        if (rat_sign(lo) > 0) return lo;
    }
    throw internal_error("positive_sqrt_lower: refinement failed");
}

// Does the point lie in the real affine hull of the lattice?
inline bool affine_member(const AffineLattice &l, const Vec<Rational> &x) {
    if (l.empty) return false;
    if (x.size() != l.dim) throw internal_error("affine_member: dimension mismatch");
    Vec<Rational> diff(x);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= Rational(l.basepoint[i]);
    std::vector<Vec<Rational>> rows;
    for (const auto &row : l.basis) rows.push_back(int_to_rational(row));
    return coordinates_in_span(rows, diff).has_value();
}

inline bool affine_member_exact(const AffineLattice &l, const ExactVec &x) {
    if (l.empty) return false;
    if (x.size() != l.dim) throw internal_error("affine_member_exact: dimension mismatch");
    ExactVec diff(x);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = diff[i] - Rational(l.basepoint[i]);
    std::vector<ExactVec> rows;
    for (const auto &row : l.basis) rows.push_back(int_vec_to_exact(row));
    return coordinates_in_span(rows, diff).has_value();
}

// ---------------------------------------------------------------------------
// Direction prescaling
// ---------------------------------------------------------------------------

// Rescale a direction by a positive field element so that its support value
// becomes 0, 1 or -1.  Rational support values can be rescaled for every
// body; irrational support values only for polytopes, whose support function
// is positively homogeneous over the coordinate field.
struct ScaledDirection {
    ExactVec v_used;
    ExactScalar h_used; // support of v_used, one of 0, 1, -1
    ExactScalar scale;  // v_used = scale * v with scale > 0
    ExactScalar h_orig; // support of the original direction
};

inline ScaledDirection prescale_direction(const Body &k, const ExactVec &v) {
    ExactScalar h = k.support(v);
    const int sg = h.sign();
    if (sg == 0) return {v, ExactScalar(0), ExactScalar(Rational(1)), h};
    if (h.is_rational()) {
        Rational ha = h.as_rational();
        if (rat_sign(ha) < 0) ha = Rational(-ha);
        Rational inv = Rational(Rational(1) / ha);
        ExactVec vu = vec_scale(ExactScalar(inv), v);
        return {std::move(vu), ExactScalar(Rational(sg)), ExactScalar(inv), h};
    }
    if (k.kind() != Body::Kind::vpolytope)
        throw irrational_support("direction has irrational support value on a non-polytope body");
    ExactScalar ah = sg > 0 ? h : -h;
    ExactScalar sc = ah.inverse();
    ExactVec vu = vec_scale(sc, v);
    if (!(k.support(vu) - Rational(sg)).is_zero())
        throw internal_error("prescale_direction: homogeneity check failed");
    return {std::move(vu), ExactScalar(Rational(sg)), std::move(sc), h};
}

// ---------------------------------------------------------------------------
// Equation collapsing
// ---------------------------------------------------------------------------

inline bool is_prime_int(const Int &p) {
    if (p < 2) return false;
    for (Int d(2); Int(d * d) <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Combine a system of exact affine equations into a single equation with the
// same *integer* solutions.  The multipliers are square roots of fresh primes
// (coprime to every radicand already present), so distinct equations land on
// linearly independent irrational components and an integer point satisfies
// the combination only by satisfying each equation.  The equivalence of the
// integer solution sets is re-verified exactly through their affine lattices.
inline ExactEquation collapse_equations(std::size_t n, const std::vector<ExactEquation> &eqs) {
    if (eqs.empty()) throw internal_error("collapse_equations: empty system");
    if (eqs.size() == 1) return eqs[0];
    AffineLattice target = integer_affine_hull(n, eqs);
    // Small integer-power multipliers first: when they already preserve the
    // integer solution set they yield a combination with far fewer radicands
    // than the fresh-prime construction (often a purely rational equation),
    // which keeps the downstream orbit search low-dimensional.
    for (int m = 1; m <= 64; ++m) {
        ExactVec c(n, ExactScalar(0));
        ExactScalar d(0);
        Rational mult(1);
        for (const auto &eq : eqs) {
            for (std::size_t i = 0; i < n; ++i) c[i] = c[i] + ExactScalar(mult) * eq.first[i];
            d = d + ExactScalar(mult) * eq.second;
            mult = Rational(mult * Rational(m));
        }
        if (vec_is_zero(c)) continue;
        std::vector<ExactEquation> single{{c, d}};
        if (lattice_equal(target, integer_affine_hull(n, single))) return {std::move(c), std::move(d)};
    }
    std::vector<Int> keys;
    for (const auto &eq : eqs) {
        ExactVec all(eq.first);
        all.push_back(eq.second);
        auto ks = all_keys(all);
        keys.insert(keys.end(), ks.begin(), ks.end());
    }
    std::vector<Int> primes;
    for (Int p(2); primes.size() < eqs.size(); ++p) {
        if (!is_prime_int(p)) continue;
        bool ok = true;
        for (const auto &key : keys)
            if (key % p == 0) { ok = false; break; }
        if (ok) primes.push_back(p);
    }
    ExactVec c(n, ExactScalar(0));
    ExactScalar d(0);
    for (std::size_t j = 0; j < eqs.size(); ++j) {
        ExactScalar m = ExactScalar::sqrt_term(Rational(1), primes[j]);
        for (std::size_t i = 0; i < n; ++i) c[i] = c[i] + m * eqs[j].first[i];
        d = d + m * eqs[j].second;
    }
    if (vec_is_zero(c)) throw internal_error("collapse_equations: zero combination");
    std::vector<ExactEquation> single{{c, d}};
    if (!lattice_equal(target, integer_affine_hull(n, single)))
        throw internal_error("collapse_equations: integer solution set changed");
    return {std::move(c), std::move(d)};
}

// ---------------------------------------------------------------------------
// Separating directions for points outside the body
// ---------------------------------------------------------------------------

inline ExactVec separating_direction(const Body &k, const Vec<Rational> &x) {
    ExactVec xe = rational_to_exact(x);
    auto verified = [&](const ExactVec &dir) -> bool {
        return (dot(dir, xe) - k.support(dir)).sign() > 0;
    };
    switch (k.kind()) {
    case Body::Kind::vpolytope: {
        const auto &fd = k.facet_description();
        for (const auto &f : fd.facets) {
            if ((dot(f.a, xe) - f.b).sign() > 0 && verified(f.a)) return f.a;
        }
        for (const auto &e : fd.equations) {
            int s = (dot(e.a, xe) - e.b).sign();
            if (s == 0) continue;
            ExactVec dir = s > 0 ? e.a : vec_neg(e.a);
            if (verified(dir)) return dir;
        }
        break;
    }
    case Body::Kind::ball: {
        Vec<Rational> d = vec_sub(x, k.center());
        if (!vec_is_zero(d)) {
            ExactVec dir = rational_to_exact(d);
            if (verified(dir)) return dir;
        }
        break;
    }
    case Body::Kind::sliced_ball: {
        for (const auto &cut : k.slice_cuts()) {
            if (rat_sign(Rational(dot_int_rat(cut.a, x) - cut.b)) > 0) {
                ExactVec dir = int_vec_to_exact(cut.a);
                if (verified(dir)) return dir;
            }
        }
        Vec<Rational> d = vec_sub(x, k.center());
        if (!vec_is_zero(d)) {
            ExactVec dir = rational_to_exact(d);
            if (verified(dir)) return dir;
        }
        break;
    }
    }
    throw internal_error("separating_direction: no separator for outside point");
}

// ---------------------------------------------------------------------------
// Simplex directions with a certified covering margin
// ---------------------------------------------------------------------------

// Directions e_1, .., e_r and -(1,..,1)/sqrt(r): every unit vector has inner
// product at least `margin` with one of them.
inline std::vector<ExactVec> simplex_directions(std::size_t r) {
    std::vector<ExactVec> ws;
    for (std::size_t i = 0; i < r; ++i) {
        ExactVec e(r, ExactScalar(0));
        e[i] = ExactScalar(Rational(1));
        ws.push_back(std::move(e));
    }
    ExactScalar neg = -ExactScalar::sqrt_rational(Rational(1, static_cast<long>(r)));
    ws.emplace_back(r, neg);
    return ws;
}

// Certify the margin by enumerating the vertices of the polytope
// { d : <w_i, d> <= margin for all i } and checking that each lies strictly
// inside the unit ball; then no unit vector can satisfy all inequalities.
inline Rational simplex_margin(const std::vector<ExactVec> &ws, std::size_t r) {
    Rational eps;
    switch (r) {
    case 1: eps = Rational(1, 2); break;
    case 2: eps = Rational(1, 3); break;
    case 3: eps = Rational(1, 4); break;
    case 4: eps = Rational(3, 16); break;
    default: eps = Rational(1, 2 * static_cast<long>(r)); break;
    }
    for (int tries = 0; tries < 8; ++tries) {
        std::vector<Halfspace<ExactScalar>> hs;
        for (const auto &w : ws) hs.push_back({w, ExactScalar(eps)});
        auto verts = dd_vertices(r, hs);
        bool ok = true;
        for (const auto &d : verts)
            if ((norm_sq(d) - Rational(1)).sign() >= 0) { ok = false; break; }
        if (ok) return eps;
        eps = Rational(eps / 2);
    }
    throw internal_error("simplex_margin: certification failed");
}

// ---------------------------------------------------------------------------
// Distance from interior points to the relative boundary
// ---------------------------------------------------------------------------

// Positive rational lower bound for the minimum distance from the given
// points (which must lie in the relative interior) to the relative boundary
// of the body.
inline Rational min_boundary_distance(const Body &body, const std::vector<Vec<Rational>> &pts) {
    if (pts.empty()) throw internal_error("min_boundary_distance: no points");
    std::optional<Rational> best;
    auto note = [&](const Rational &d) {
        if (rat_sign(d) <= 0) throw internal_error("min_boundary_distance: point not interior");
        if (!best || d < *best) best = d;
    };
    switch (body.kind()) {
    case Body::Kind::vpolytope: {
        const auto &fd = body.facet_description();
        if (fd.facets.empty())
            throw internal_error("min_boundary_distance: body has no proper faces");
        for (const auto &pt : pts) {
            ExactVec xe = rational_to_exact(pt);
            for (const auto &f : fd.facets) {
                ExactScalar num = f.b - dot(f.a, xe);
                if (num.sign() <= 0)
                    throw internal_error("min_boundary_distance: point not interior");
                ExactScalar d2 = num * num * norm_sq(f.a).inverse();
                note(positive_sqrt_lower(positive_rational_lower(d2)));
            }
        }
        break;
    }
    case Body::Kind::ball: {
        for (const auto &pt : pts) {
            Vec<Rational> diff = vec_sub(pt, body.center());
            Rational c2 = dot(diff, diff);
            if (rat_sign(c2) == 0) { note(body.radius()); continue; }
            bool found = false;
            for (unsigned bits = 32; bits <= 1u << 14 && !found; bits *= 2) {
                Rational cand = Rational(body.radius() - sqrt_upper_bound(c2, bits));
                if (rat_sign(cand) > 0) { note(cand); found = true; }
            }
            if (!found) throw internal_error("min_boundary_distance: point not interior");
        }
        break;
    }
    case Body::Kind::sliced_ball: {
        auto hull = body.affine_hull();
        std::vector<Vec<Rational>> basis;
        for (const auto &row : hull.second) {
            auto rr = rational_entries(row);
            if (!rr) throw internal_error("min_boundary_distance: irrational hull basis");
            basis.push_back(*rr);
        }
        auto base = rational_entries(hull.first);
        if (!base) throw internal_error("min_boundary_distance: irrational hull basepoint");
        // center of the sphere slice within the affine hull, and its radius
        Vec<Rational> cdiff = vec_sub(body.center(), *base);
        Vec<Rational> cproj = basis.empty() ? Vec<Rational>(cdiff.size(), Rational(0))
                                            : project_onto_span(basis, cdiff);
        Vec<Rational> cslice = vec_add(*base, cproj);
        Vec<Rational> cperp = vec_sub(body.center(), cslice);
        Rational rw2 = Rational(Rational(body.radius() * body.radius()) - dot(cperp, cperp));
        if (rat_sign(rw2) <= 0)
            throw internal_error("min_boundary_distance: sphere slice has no interior");
        for (const auto &pt : pts) {
            Vec<Rational> diff = vec_sub(pt, cslice);
            Rational d2 = dot(diff, diff);
            bool found = false;
            for (unsigned bits = 32; bits <= 1u << 14 && !found; bits *= 2) {
                Rational lo = sqrt_lower_bound(rw2, bits);
                Rational cand = rat_sign(d2) == 0
                                    ? lo
                                    : Rational(lo - sqrt_upper_bound(d2, bits));
                if (rat_sign(cand) > 0) { note(cand); found = true; }
            }
            if (!found) throw internal_error("min_boundary_distance: point not interior");
            for (const auto &cut : body.slice_cuts()) {
                Vec<Rational> arow = int_to_rational(cut.a);
                Vec<Rational> aproj = basis.empty() ? Vec<Rational>(arow.size(), Rational(0))
                                                    : project_onto_span(basis, arow);
                Rational np2 = dot(aproj, aproj);
                if (rat_sign(np2) == 0) continue; // cut constant on the hull
                Rational slack = Rational(cut.b - dot_int_rat(cut.a, pt));
                note(Rational(slack / sqrt_upper_bound(np2, 64)));
            }
        }
        break;
    }
    }
    if (!best) throw internal_error("min_boundary_distance: no boundary constraints");
    return *best;
}

// ---------------------------------------------------------------------------
// Integer tuple enumeration (lexicographic)
// ---------------------------------------------------------------------------

// Visit every integer tuple u with |u_j| <= box[j], in lexicographic order.
template <class Fn>
inline void for_each_box_tuple(const std::vector<Int> &box, Fn &&fn) {
    IntVec u(box.size(), Int(0));
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == box.size()) {
            fn(u);
            return;
        }
        for (Int c = -box[idx]; c <= box[idx]; ++c) {
            u[idx] = c;
            rec(idx + 1);
        }
    };
    rec(0);
}

// Visit every integer tuple with max-norm exactly `radius`, lexicographically.
template <class Fn>
inline void for_each_shell_tuple(std::size_t q, const Int &radius, Fn &&fn) {
    if (q == 0) {
        if (radius == 0) fn(IntVec{});
        return;
    }
    std::vector<Int> box(q, radius);
    for_each_box_tuple(box, [&](const IntVec &u) {
        bool on_shell = false;
        for (const auto &c : u) {
            Int ac = c < 0 ? Int(-c) : c;
            if (ac == radius) { on_shell = true; break; }
        }
        if (on_shell) fn(u);
    });
}

} // namespace detail

// ---------------------------------------------------------------------------
// Cut lifting
// ---------------------------------------------------------------------------

// Replace a cut direction w, valid for the exposed face of v, by a direction
// w' = w + s whose cut for the whole body is at least as strong on the
// integer points of the supporting hyperplane of v.  The pair (s, t) comes
// from simultaneous rational approximation of v with geometrically growing
// precision; each candidate is accepted only after the containment
//   { <w', x> <= floor(h_K(w')) }  intersect  aff(H_v cap Z^n)
//     subseteq  { <w, x> <= floor(h_F(w)) }
// has been verified exactly on a parametrization of the affine lattice.
inline LiftWitness lift_cut(const Body &k, const ExactVec &v, const IntVec &w, const Int &budget) {
    const std::size_t n = k.ambient_dimension();
    if (v.size() != n || w.size() != n) throw internal_error("lift_cut: dimension mismatch");
    if (vec_is_zero(v)) throw zero_vector("lift_cut: zero direction");
    if (budget < 1) throw internal_error("lift_cut: budget must be positive");

    auto sd = detail::prescale_direction(k, v);
    Body face = k.exposed_face(sd.v_used).face;
    ExactScalar hf = face.support(detail::int_vec_to_exact(w));
    Int fl_w = hf.floor();
    ExactScalar eps_exact = (ExactScalar(Rational(1)) - hf.frac()) * Rational(1, 2);
    Rational eps = eps_exact.is_rational() ? eps_exact.as_rational()
                                           : detail::positive_rational_lower(eps_exact);

    std::vector<ExactEquation> plane{{sd.v_used, sd.h_used}};
    AffineLattice lat = integer_affine_hull(n, plane);
    if (lat.empty) return {w, Int(1), eps, true};

    const Int hz = sd.h_used.floor(); // exact: h_used is 0, 1 or -1
    const Int d0 = detail::dot_int(w, lat.basepoint);
    std::vector<Int> dks;
    Int g(0);
    for (const auto &row : lat.basis) {
        Int dk = detail::dot_int(w, row);
        g = int_gcd(g, dk);
        dks.push_back(std::move(dk));
    }
    const Int r_target = fl_w - d0;

    Int N(2);
    for (Int iter(1); iter <= budget; ++iter, N *= 2) {
        auto dr = dirichlet_approx(sd.v_used, N);
        bool exact_pair = true;
        for (std::size_t i = 0; i < n && exact_pair; ++i)
            exact_pair = (sd.v_used[i] * Rational(dr.n) - Rational(dr.s[i])).is_zero();
        // an exact pair never improves with N; scan its integer multiples
        Int reps = exact_pair ? iter : Int(1);
        for (Int j(1); j <= reps; ++j) {
            Int tmul = dr.n * j;
            IntVec wp(w);
            for (std::size_t i = 0; i < n; ++i) wp[i] += dr.s[i] * j;
            ExactScalar hwp = k.support(detail::int_vec_to_exact(wp));
            ExactScalar devi = hwp - Rational(Rational(tmul) * Rational(hz)) - hf;
            if (devi.sign() < 0) devi = -devi;
            if ((devi - eps).sign() > 0) continue;
            // the lifted cut must agree with w on the lattice directions
            Int c0 = detail::dot_int(wp, lat.basepoint);
            Int drop = c0 - d0;
            if (drop != Int(tmul * hz)) continue;
            bool match = true;
            for (std::size_t rr = 0; rr < lat.basis.size() && match; ++rr)
                match = (detail::dot_int(wp, lat.basis[rr]) == dks[rr]);
            if (!match) continue;
            // exact containment on the lattice parametrization: points with
            // <w', x> <= floor(h_K(w')) have coordinate values g*Z shifted by
            // c0; compare against the face bound.
            Int lhs_room = hwp.floor() - c0;
            bool contained = (g == 0) ? (lhs_room < 0 || r_target >= 0)
                                      : (Int(g * detail::floor_div(lhs_room, g)) <= r_target);
            if (!contained) continue;
            return {std::move(wp), std::move(tmul), eps, false};
        }
    }
    throw budget_exhausted("lift_cut: no witness within the approximation budget");
}

// ---------------------------------------------------------------------------
// Separation for a single (typically irrational) direction
// ---------------------------------------------------------------------------

// Build at most D(v)+1 integer cuts whose closure lies inside the halfspace
// of v and meets the supporting hyperplane H_v only inside the affine hull
// of H_v's integer points.  Both properties are verified exactly by vertex
// enumeration before the certificate is returned.
inline SeparationCertificate separate_irrational(const Body &k, const ExactVec &v, const Int &budget) {
    const std::size_t n = k.ambient_dimension();
    if (v.size() != n) throw internal_error("separate_irrational: dimension mismatch");
    if (vec_is_zero(v)) throw zero_vector("separate_irrational: zero direction");
    if (budget < 1) throw internal_error("separate_irrational: budget must be positive");

    auto sd = detail::prescale_direction(k, v);
    NormalizedDirection nd = normalize_direction(sd.v_used);
    const std::size_t t = nd.t, s = nd.s, r = nd.r;
    const Rational bprime = Rational(nd.lambda * sd.h_used.as_rational());
    // the hyperplane has integer points exactly when the rational part of the
    // canonical form can be met: value b' at the single unit coordinate, or
    // b' = 0 when there is none
    const bool lattice_nonempty =
        (s == 1 && den(bprime) == 1) || (s == 0 && rat_sign(bprime) == 0);
    const bool strict = !lattice_nonempty;

    ExactScalar case_scale(Rational(1));
    Int stride(1), offset(1);
    if (strict) {
        if (s == 1) {
            // choose a multiplier whose fractional part sits well inside (0,1)
            Int c1 = den(bprime);
            Int c2(0);
            const Rational lo(1, 3), hi(2, 3);
            for (Int c(1); c <= c1; ++c) {
                Rational f = rat_frac(Rational(bprime * Rational(c)));
                if (f >= lo && f <= hi) { c2 = c; break; }
            }
            if (c2 == 0) throw internal_error("separate_irrational: no fractional multiplier");
            stride = c1;
            offset = c2;
        } else {
            // purely irrational normal with nonzero rational offset: rescale
            // so the offset becomes 1/2 and use odd multipliers
            Rational ab = bprime;
            if (rat_sign(ab) < 0) ab = Rational(-ab);
            case_scale = ExactScalar(Rational(Rational(1) / Rational(Rational(2) * ab)));
            stride = 2;
            offset = 1;
        }
    }
    const ExactVec u = vec_scale(case_scale, nd.canonical);

    SeparationTrace trace;
    std::vector<IntVec> primed;       // cut directions for the transformed body
    std::vector<ExactScalar> lambdas;
    std::vector<Int> kron;

    if (r == 0) {
        if (s == 0) throw internal_error("separate_irrational: degenerate normal form");
        Int m = lattice_nonempty ? Int(1) : offset;
        IntVec ap(n);
        for (std::size_t i = 0; i < n; ++i) {
            ExactScalar x = u[i] * Rational(m);
            if (!x.frac().is_zero())
                throw internal_error("separate_irrational: non-integer cut entry");
            ap[i] = x.floor();
        }
        primed.push_back(std::move(ap));
        lambdas.emplace_back(Rational(Int(1), m));
        kron.push_back(std::move(m));
    } else {
        auto ws = detail::simplex_directions(r);
        Rational margin = detail::simplex_margin(ws, r);
        // crude outer radius for the transformed body from per-coordinate
        // support bounds (coordinates of the transform pull back through the
        // inverse transpose columns)
        Rational percoord(0);
        for (std::size_t i = 0; i < n; ++i) {
            IntVec col(n);
            for (std::size_t rr = 0; rr < n; ++rr) col[rr] = nd.T.inv[rr][i];
            for (int sgn : {1, -1}) {
                IntVec dirv(col);
                if (sgn < 0)
                    for (auto &e : dirv) e = -e;
                Rational ub =
                    Rational(Rational(k.support(detail::int_vec_to_exact(dirv)).floor()) + Rational(1));
                if (ub > percoord) percoord = ub;
            }
        }
        if (rat_sign(percoord) <= 0) percoord = Rational(1);
        Rational outer = Rational(Rational(static_cast<long>(n)) * percoord);
        Rational aparam = Rational(Rational(1) / outer);
        if (margin < aparam) aparam = margin;
        aparam = Rational(aparam / 8);
        Rational bparam = Rational(Rational(margin * aparam) / 2);
        Rational rho = Rational(bparam / Rational(static_cast<long>(r)));
        trace.a = aparam;
        trace.b = bparam;

        ExactVec tail(u.begin() + static_cast<std::ptrdiff_t>(t + s), u.end());
        const Int kbudget = budget * 256;
        std::vector<Int> offsets(r + 1, offset);
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 8)
                throw internal_error("separate_irrational: no positive combination found");
            kron.clear();
            primed.clear();
            std::vector<ExactVec> deltas;
            for (std::size_t i = 0; i <= r; ++i) {
                ExactVec center(r);
                for (std::size_t j = 0; j < r; ++j)
                    center[j] = (ws[i][j] * aparam).frac();
                Int m = kronecker_hit(tail, center, rho, stride, offsets[i], kbudget);
                IntVec ap(n);
                ExactVec delta(n, ExactScalar(0));
                for (std::size_t jj = 0; jj < n; ++jj) {
                    ExactScalar x = u[jj] * Rational(m);
                    if (jj < t + s) {
                        if (!x.frac().is_zero())
                            throw internal_error("separate_irrational: non-integral prefix");
                        ap[jj] = x.floor();
                    } else {
                        ExactScalar gamma = ws[i][jj - (t + s)] * aparam;
                        ExactScalar y = x - gamma;
                        Int base = y.floor();
                        bool found = false;
                        for (int off = 0; off <= 1 && !found; ++off) {
                            Int cand = base + off;
                            ExactScalar dl = x - Rational(cand);
                            ExactScalar dist = dl - gamma;
                            if (dist.sign() < 0) dist = -dist;
                            if ((dist - rho).sign() <= 0) {
                                ap[jj] = std::move(cand);
                                delta[jj] = std::move(dl);
                                found = true;
                            }
                        }
                        if (!found)
                            throw internal_error("separate_irrational: orbit certificate mismatch");
                    }
                }
                kron.push_back(std::move(m));
                primed.push_back(std::move(ap));
                deltas.push_back(std::move(delta));
            }
            // positive combination: the residuals delta_i surround the origin
            // of the tail space, so lambda with sum lambda_i delta_i = 0 and
            // sum lambda_i n_i = 1 exists and is unique; require positivity
            Mat<ExactScalar> A(r + 1, Vec<ExactScalar>(r + 1, ExactScalar(0)));
            Vec<ExactScalar> rhs(r + 1, ExactScalar(0));
            for (std::size_t row = 0; row < r; ++row)
                for (std::size_t i = 0; i <= r; ++i)
                    A[row][i] = deltas[i][t + s + row];
            for (std::size_t i = 0; i <= r; ++i) A[r][i] = ExactScalar(Rational(kron[i]));
            rhs[r] = ExactScalar(Rational(1));
            auto sol = solve(A, rhs);
            bool pos = sol.has_value();
            if (pos)
                for (const auto &l : *sol)
                    if (l.sign() <= 0) { pos = false; break; }
            if (pos) {
                lambdas = std::move(*sol);
                break;
            }
            // perturb one of the orbit searches past its previous hit
            std::size_t slot = static_cast<std::size_t>(attempt) % (r + 1);
            offsets[slot] = kron[slot] + stride;
        }
        trace.simplex_directions = ws;
    }
    trace.kronecker_indices = kron;

    // pull the cuts back to the original coordinates
    std::vector<IntVec> cut_vectors;
    for (const auto &ap : primed) cut_vectors.push_back(int_mat_vec(nd.T.inv, ap));
    if (cut_vectors.size() > nd.rational_dim + 1)
        throw internal_error("separate_irrational: certificate too large");

    ExactScalar multiple = case_scale * Rational(nd.lambda) * sd.scale;
    if (multiple.sign() <= 0) throw internal_error("separate_irrational: nonpositive multiple");

    // exact certificate identities
    ExactVec comb(n, ExactScalar(0));
    for (std::size_t i = 0; i < cut_vectors.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            comb[j] = comb[j] + lambdas[i] * Rational(cut_vectors[i][j]);
    for (std::size_t j = 0; j < n; ++j)
        if (!(comb[j] - multiple * v[j]).is_zero())
            throw internal_error("separate_irrational: combination identity failed");
    ExactScalar floors(0);
    for (std::size_t i = 0; i < cut_vectors.size(); ++i) {
        Int fl = k.support(detail::int_vec_to_exact(cut_vectors[i])).floor();
        floors = floors + lambdas[i] * Rational(fl);
    }
    ExactScalar gap = multiple * sd.h_orig - floors;
    if (gap.sign() < 0 || (strict && gap.sign() == 0))
        throw internal_error("separate_irrational: support inequality failed");

    // verification by vertex enumeration: the closure of the cuts (plus a
    // bounding box) stays inside the halfspace of v, and its slice along the
    // supporting hyperplane lies in the affine hull of the integer points
    CutSet cc;
    for (const auto &a : cut_vectors) cc.add(cut_for(k, a));
    cc.add_all(box_cuts(k));
    RationalPolyhedron P = polyhedron_from_cuts(n, cc);
    for (const auto &x : P.vertices)
        if ((dot(v, detail::rational_to_exact(x)) - sd.h_orig).sign() > 0)
            throw internal_error("separate_irrational: halfspace verification failed");
    std::vector<Halfspace<ExactScalar>> hs;
    for (const auto &c : cc.cuts())
        hs.push_back({detail::int_vec_to_exact(c.a), ExactScalar(Rational(c.rhs))});
    hs.push_back({sd.v_used, sd.h_used});
    hs.push_back({vec_neg(sd.v_used), -sd.h_used});
    auto slice = dd_vertices(n, hs);
    std::vector<ExactEquation> plane{{sd.v_used, sd.h_used}};
    AffineLattice lat = integer_affine_hull(n, plane);
    for (const auto &x : slice)
        if (!detail::affine_member_exact(lat, x))
            throw internal_error("separate_irrational: hyperplane slice escapes the integer hull");

    SeparationCertificate cert;
    cert.cut_vectors = std::move(cut_vectors);
    cert.lambdas = std::move(lambdas);
    cert.multiple = std::move(multiple);
    cert.strict = strict;
    cert.trace = std::move(trace);
    return cert;
}

// ---------------------------------------------------------------------------
// Face closure lifting
// ---------------------------------------------------------------------------

namespace detail {
ClosureResult closure_impl(const Body &k, const Int &budget, int depth);
} // namespace detail

// Combine the separation family for v, the lifted versions of the given face
// cuts, and a bounding box into one cut family S with
//   CC(K, S) cap H_v  =  CC(F_v)   restricted to the hyperplane, and
//   CC(K, S)  subseteq  { <v, x> <= h_K(v) },
// both verified exactly by vertex enumeration before returning.
inline CutSet lift_face_closure(const Body &k, const ExactVec &v, const CutSet &face_cuts,
                                const Int &budget) {
    const std::size_t n = k.ambient_dimension();
    auto sd = detail::prescale_direction(k, v);
    CutSet S;
    auto cert = separate_irrational(k, v, budget);
    for (const auto &a : cert.cut_vectors) S.add(cut_for(k, a));
    for (const auto &c : face_cuts.cuts()) {
        auto wit = lift_cut(k, v, c.a, budget);
        S.add(cut_for(k, wit.w_prime));
    }
    S.add_all(box_cuts(k));

    auto slice_vertices = [&](const CutSet &cs) {
        std::vector<Halfspace<ExactScalar>> hs;
        for (const auto &c : cs.cuts())
            hs.push_back({detail::int_vec_to_exact(c.a), ExactScalar(Rational(c.rhs))});
        hs.push_back({sd.v_used, sd.h_used});
        hs.push_back({vec_neg(sd.v_used), -sd.h_used});
        return dd_vertices(n, hs);
    };
    auto left = slice_vertices(S);
    auto right = slice_vertices(face_cuts);
    bool same = left.size() == right.size();
    for (std::size_t i = 0; same && i < left.size(); ++i)
        for (std::size_t j = 0; same && j < n; ++j)
            same = (left[i][j] - right[i][j]).is_zero();
    if (!same) throw internal_error("lift_face_closure: hyperplane slice mismatch");

    RationalPolyhedron P = polyhedron_from_cuts(n, S);
    for (const auto &x : P.vertices)
        if ((dot(v, detail::rational_to_exact(x)) - sd.h_orig).sign() > 0)
            throw internal_error("lift_face_closure: hyperplane bound failed");
    return S;
}

namespace detail {

// ---------------------------------------------------------------------------
// Inside approximation
// ---------------------------------------------------------------------------

inline CutSet approx_inside_impl(const Body &k, const Int &budget, int depth) {
    const std::size_t n = k.ambient_dimension();
    CutSet S = box_cuts(k);
    auto eqs = k.affine_hull_equations();
    auto pin_equation = [&](const ExactVec &c0, const ExactScalar &d0) {
        for (int sgn : {1, -1}) {
            ExactVec c = sgn > 0 ? c0 : vec_neg(c0);
            ExactScalar dval = sgn > 0 ? d0 : -d0;
            if (!(k.support(c) - dval).is_zero())
                throw internal_error("approx_inside: hull equation not supporting");
            auto cert = separate_irrational(k, c, budget);
            for (const auto &a : cert.cut_vectors) S.add(cut_for(k, a));
        }
    };
    // Pin each affine-hull equation separately: a single equation normalizes
    // to few irrational components, so its orbit search stays cheap.  A joint
    // combination is attempted later only if the per-equation cuts leave a
    // vertex outside the integer affine hull of the full system.
    for (const auto &eq : eqs) pin_equation(eq.first, eq.second);
    RationalPolyhedron P = polyhedron_from_cuts(n, S);
    auto separate_loop = [&]() {
        for (Int iter(0);; ++iter) {
            if (P.empty()) break;
            const Vec<Rational> *bad = nullptr;
            for (const auto &x : P.vertices)
                if (!k.contains(rational_to_exact(x))) { bad = &x; break; }
            if (!bad) break;
            if (iter >= budget)
                throw budget_exhausted("approx_inside: separation budget exhausted");
            Vec<Rational> point = *bad;
            ExactVec dir = separating_direction(k, point);
            auto rec = closure_impl(k.exposed_face(dir).face, budget, depth + 1);
            S.add_all(lift_face_closure(k, dir, rec.generating_cuts, budget));
            P = polyhedron_from_cuts(n, S);
            if (!P.empty() && P.contains_point(point))
                throw internal_error("approx_inside: separated vertex persists");
        }
    };
    separate_loop();
    AffineLattice lat = integer_affine_hull(n, eqs);
    auto escapes = [&]() -> bool {
        for (const auto &x : P.vertices)
            if (!affine_member(lat, x)) return true;
        return false;
    };
    if (escapes() && eqs.size() > 1) {
        auto ce = collapse_equations(n, eqs);
        pin_equation(ce.first, ce.second);
        P = polyhedron_from_cuts(n, S);
        separate_loop();
    }
    if (escapes())
        throw internal_error("approx_inside: closure escapes the integer affine hull");
    return S;
}

// ---------------------------------------------------------------------------
// Boundary approximation
// ---------------------------------------------------------------------------

// Relative-interior sample points (vertex centroids) of every nonempty face
// of the polytope, ordered by (face size, lexicographic vertex set).
inline std::vector<Vec<Rational>> face_relint_samples(const RationalPolyhedron &P) {
    std::vector<Vec<Rational>> samples;
    const auto &verts = P.vertices;
    if (verts.empty()) return samples;
    if (verts.size() == 1) {
        samples.push_back(verts[0]);
        return samples;
    }
    auto fd = vpolytope_facets<Rational>(verts);
    const std::size_t m = fd.facets.size();
    if (m > 20) throw internal_error("face_relint_samples: too many facets");
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> faces;
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        std::vector<std::size_t> tight;
        for (std::size_t vi = 0; vi < verts.size(); ++vi) {
            bool all = true;
            for (std::size_t f = 0; f < m && all; ++f)
                if (mask & (std::size_t(1) << f))
                    all = rat_sign(Rational(dot(fd.facets[f].a, verts[vi]) - fd.facets[f].b)) == 0;
            if (all) tight.push_back(vi);
        }
        if (!tight.empty() && seen.insert(tight).second) faces.push_back(std::move(tight));
    }
    std::sort(faces.begin(), faces.end(), [](const auto &x, const auto &y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    for (const auto &f : faces) {
        Vec<Rational> sum(P.dim, Rational(0));
        for (auto vi : f) sum = vec_add(sum, verts[vi]);
        samples.push_back(vec_scale(Rational(1, static_cast<long>(f.size())), sum));
    }
    return samples;
}

inline CutSet approx_boundary_impl(const Body &k, const CutSet &inside_cuts, const Int &budget,
                                   int depth) {
    const std::size_t n = k.ambient_dimension();
    CutSet S = inside_cuts;
    RationalPolyhedron P = polyhedron_from_cuts(n, S);
    if (P.empty()) return S;
    auto samples = face_relint_samples(P);
    std::vector<std::pair<ExactVec, CutSet>> processed;
    for (const auto &x : samples) {
        auto wit = k.on_relative_boundary(rational_to_exact(x));
        if (!wit) continue;
        const ExactVec &dir = *wit;
        bool dup = false;
        for (const auto &pr : processed) {
            bool eq = pr.first.size() == dir.size();
            for (std::size_t i = 0; eq && i < dir.size(); ++i)
                eq = (pr.first[i] - dir[i]).is_zero();
            if (eq) { dup = true; break; }
        }
        if (dup) continue;
        auto rec = closure_impl(k.exposed_face(dir).face, budget, depth + 1);
        S.add_all(lift_face_closure(k, dir, rec.generating_cuts, budget));
        processed.emplace_back(dir, rec.generating_cuts);
    }
    // final closure lies inside the body's integer affine hull and the body
    RationalPolyhedron P2 = polyhedron_from_cuts(n, S);
    AffineLattice lat = integer_affine_hull(n, k.affine_hull_equations());
    for (const auto &x : P2.vertices) {
        if (!k.contains(rational_to_exact(x)))
            throw internal_error("approx_boundary: vertex outside the body");
        if (!affine_member(lat, x))
            throw internal_error("approx_boundary: vertex outside the integer affine hull");
    }
    // each processed hyperplane slice stays inside the lifted face closure
    for (const auto &pr : processed) {
        auto sdd = prescale_direction(k, pr.first);
        std::vector<Halfspace<ExactScalar>> hs;
        for (const auto &c : S.cuts())
            hs.push_back({int_vec_to_exact(c.a), ExactScalar(Rational(c.rhs))});
        hs.push_back({sdd.v_used, sdd.h_used});
        hs.push_back({vec_neg(sdd.v_used), -sdd.h_used});
        auto slice = dd_vertices(n, hs);
        for (const auto &x : slice)
            for (const auto &c : pr.second.cuts())
                if ((dot_int_exact(c.a, x) - Rational(c.rhs)).sign() > 0)
                    throw internal_error("approx_boundary: slice escapes the face closure");
    }
    return S;
}

// ---------------------------------------------------------------------------
// Full closure
// ---------------------------------------------------------------------------

inline ClosureResult closure_impl(const Body &k, const Int &budget, int depth) {
    if (depth > 8) throw internal_error("closure: recursion depth exceeded");
    const std::size_t n = k.ambient_dimension();
    if (n > 4) throw error("closure: ambient dimension above the supported bound of 4");
    ClosureTrace trace;
    trace.recursion_depth = depth;

    if (k.dimension() == 0) {
        CutSet S = box_cuts(k);
        RationalPolyhedron P = polyhedron_from_cuts(n, S);
        if (!P.empty()) {
            if (P.vertices.size() != 1 || !k.contains(rational_to_exact(P.vertices[0])))
                throw internal_error("closure: inconsistent point closure");
        }
        return {std::move(P), std::move(S), std::move(trace)};
    }

    CutSet S = approx_boundary_impl(k, approx_inside_impl(k, budget, depth), budget, depth);
    RationalPolyhedron P = polyhedron_from_cuts(n, S);
    if (P.empty()) return {std::move(P), std::move(S), std::move(trace)};

    AffineLattice lat = integer_affine_hull(n, k.affine_hull_equations());
    if (lat.empty)
        throw internal_error("closure: nonempty result without integer points in the hull");

    // translate an integer point of the affine hull to the origin
    const IntVec tvec = lat.basepoint;
    Vec<Rational> shift(n);
    for (std::size_t i = 0; i < n; ++i) shift[i] = Rational(-tvec[i]);
    Body K0 = translate_body(k, shift);
    CutSet S0;
    for (const auto &c : S.cuts()) S0.add({c.a, Int(c.rhs - dot_int(c.a, tvec))});

    const std::size_t dw = lat.basis.size();
    if (dw > 0) {
        RationalPolyhedron P0 = polyhedron_from_cuts(n, S0);
        // the body restricted to the span W of the lattice directions
        std::vector<Vec<Rational>> wrows;
        for (const auto &row : lat.basis) wrows.push_back(int_to_rational(row));
        Body KW = K0;
        if (dw < n) {
            IntMat perp = integer_kernel(lat.basis, n);
            std::vector<SliceCut> slice;
            for (const auto &q : perp) {
                slice.push_back({q, Rational(0)});
                IntVec qn(q);
                for (auto &e : qn) e = -e;
                slice.push_back({qn, Rational(0)});
            }
            KW = Body::sliced(K0, slice);
            if (KW.dimension() != dw)
                throw internal_error("closure: restricted body has unexpected dimension");
        }

        // orthogonal projections of the unit vectors onto W generate the
        // projected integer lattice; put them in Hermite form over a
        // common denominator to get a basis
        std::vector<Vec<Rational>> projs;
        for (std::size_t i = 0; i < n; ++i) {
            Vec<Rational> e(n, Rational(0));
            e[i] = Rational(1);
            projs.push_back(project_onto_span(wrows, e));
        }
        Int D(1);
        for (const auto &p : projs)
            for (const auto &q : p) D = int_lcm(D, den(q));
        IntMat scaled;
        for (const auto &p : projs) {
            IntVec row(n);
            for (std::size_t j = 0; j < n; ++j)
                row[j] = Int(num(p[j]) * Int(D / den(p[j])));
            scaled.push_back(std::move(row));
        }
        auto hf = hnf(scaled);
        std::vector<Vec<Rational>> lbasis;
        for (const auto &row : hf.h) {
            bool zero = true;
            for (const auto &e : row)
                if (e != 0) { zero = false; break; }
            if (zero) continue;
            Vec<Rational> rrow(n);
            for (std::size_t j = 0; j < n; ++j) rrow[j] = Rational(row[j], D);
            lbasis.push_back(std::move(rrow));
        }
        if (lbasis.size() != dw)
            throw internal_error("closure: projected lattice rank mismatch");

        // upper bounds on the dual basis norms, for the coefficient box
        // |c_j| <= R * ||dual basis vector j||
        Mat<Rational> G = gram(lbasis);
        std::vector<Rational> dual_norms;
        Rational dual_max(0);
        for (std::size_t j = 0; j < dw; ++j) {
            Vec<Rational> e(dw, Rational(0));
            e[j] = Rational(1);
            auto col = solve(G, e);
            if (!col) throw internal_error("closure: singular lattice Gram matrix");
            Rational dj = sqrt_upper_bound((*col)[j], 64);
            if (dj > dual_max) dual_max = dj;
            dual_norms.push_back(dj);
        }

        // Candidate directions are swept in rounds.  Each round recomputes the
        // boundary clearance of the interior vertices still present, which
        // fixes the radius R that the sweep has to cover; a direction is
        // settled once (either its fiber cut is added or it provably cannot
        // separate anything, which stays true as the polyhedron shrinks).  A
        // round that completes without adding a cut certifies that every
        // direction within the final radius is accounted for.
        std::set<IntVec> settled;
        const Int round_limit = Int(budget * 16);
        for (Int round(0);; ++round) {
            if (P0.empty()) break;
            std::vector<Vec<Rational>> interior;
            for (const auto &x : P0.vertices)
                if (!K0.on_relative_boundary(rational_to_exact(x))) interior.push_back(x);
            if (interior.empty()) break;
            if (round >= round_limit)
                throw budget_exhausted("closure: direction enumeration budget exhausted");
            Rational delta = min_boundary_distance(KW, interior);
            trace.delta = delta;
            trace.R = Rational(Rational(1) / delta);
            const Rational delta_amb = dw == n ? delta : Rational(0);
            const Rational R2 = Rational(trace.R * trace.R);
            Int max_bound(0);
            std::vector<Int> bounds;
            for (std::size_t j = 0; j < dw; ++j) {
                Int bj = Int(rat_floor(Rational(trace.R * dual_norms[j])) + 1);
                if (bj > max_bound) max_bound = bj;
                bounds.push_back(std::move(bj));
            }

            auto settle = [&](const Vec<Rational> &w) -> bool {
                // returns true when a new cut was added
                Rational maxv = dot(w, P0.vertices[0]);
                for (const auto &x : P0.vertices) {
                    Rational d = dot(w, x);
                    if (d > maxv) maxv = d;
                }
                const Int fiber_bound = KW.support(rational_to_exact(w)).floor();
                if (maxv <= Rational(fiber_bound)) return false;

                // integer fiber over w: all z in Z^n with equal inner products
                // against the lattice directions
                IntMat A;
                IntVec rhsv;
                for (const auto &brow : lat.basis) {
                    Rational val = dot(int_to_rational(brow), w);
                    Int dn = den(val);
                    IntVec arow(n);
                    for (std::size_t j = 0; j < n; ++j) arow[j] = Int(brow[j] * dn);
                    A.push_back(std::move(arow));
                    rhsv.push_back(num(val));
                }
                auto fs = solve_integer(A, rhsv);
                if (!fs) throw internal_error("closure: lattice direction without integer fiber");
                const IntVec z0 = fs->particular;
                const IntMat ker = fs->kernel;

                std::optional<std::pair<Int, IntVec>> best_z;
                auto consider = [&](const IntVec &z) {
                    Int val = K0.support(int_vec_to_exact(z)).floor();
                    if (!best_z || val < best_z->first ||
                        (val == best_z->first && z < best_z->second))
                        best_z = {std::move(val), z};
                };
                if (ker.empty()) {
                    consider(z0);
                } else {
                    Rational base = dot(w, interior[0]);
                    for (const auto &x : interior) {
                        Rational d = dot(w, x);
                        if (d > base) base = d;
                    }
                    bool done = false;
                    for (Int radius(0); radius <= budget && !done; ++radius) {
                        for_each_shell_tuple(ker.size(), radius, [&](const IntVec &uu) {
                            IntVec z(z0);
                            for (std::size_t j = 0; j < ker.size(); ++j)
                                for (std::size_t jj = 0; jj < n; ++jj)
                                    z[jj] += uu[j] * ker[j][jj];
                            consider(z);
                        });
                        if (best_z && best_z->first == fiber_bound) {
                            done = true;
                        } else if (best_z && rat_sign(delta_amb) > 0) {
                            // outside the searched box the orthogonal part of z
                            // has norm > radius/dual_max, so the support value
                            // exceeds base + delta * reach and cannot improve
                            Rational reach =
                                Rational(Rational(Rational(radius + 1)) / dual_max);
                            if (Rational(base + Rational(delta_amb * reach)) >=
                                Rational(best_z->first))
                                done = true;
                        }
                    }
                    if (!done)
                        throw budget_exhausted("closure: fiber search budget exhausted");
                }
                if (!best_z) throw internal_error("closure: empty fiber search");
                trace.fiber_minimizers.emplace_back(w, best_z->second);
                if (maxv > Rational(best_z->first)) {
                    S0.add({best_z->second, best_z->first});
                    P0 = polyhedron_from_cuts(n, S0);
                    return true;
                }
                return false;
            };

            bool added = false;
            for (Int shell(1); shell <= max_bound && !added; ++shell) {
                // this shell's open candidates, nearest directions first
                std::vector<std::pair<Rational, std::pair<IntVec, Vec<Rational>>>> open;
                for_each_shell_tuple(dw, shell, [&](const IntVec &cf) {
                    for (std::size_t j = 0; j < dw; ++j)
                        if (cf[j] > bounds[j] || cf[j] < -bounds[j]) return;
                    if (settled.count(cf)) return;
                    Vec<Rational> w(n, Rational(0));
                    for (std::size_t j = 0; j < dw; ++j)
                        w = vec_add(w, vec_scale(Rational(cf[j]), lbasis[j]));
                    Rational nrm = dot(w, w);
                    if (nrm <= R2) open.emplace_back(std::move(nrm), std::make_pair(cf, std::move(w)));
                });
                std::sort(open.begin(), open.end(), [](const auto &x, const auto &y) {
                    if (x.first != y.first) return x.first < y.first;
                    return x.second.first < y.second.first;
                });
                for (const auto &cand : open) {
                    settled.insert(cand.second.first);
                    if (settle(cand.second.second)) { added = true; break; }
                }
            }
            if (!added) break;
        }
        trace.enumerated_w_count = settled.size();
    }

    // translate back
    CutSet Sf;
    for (const auto &c : S0.cuts()) Sf.add({c.a, Int(c.rhs + dot_int(c.a, tvec))});
    RationalPolyhedron Pf = polyhedron_from_cuts(n, Sf);
    for (const auto &x : Pf.vertices)
        if (!k.contains(rational_to_exact(x)))
            throw internal_error("closure: result vertex outside the body");
    return {std::move(Pf), std::move(Sf), std::move(trace)};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

// Cuts whose closure is contained in the body's integer affine hull and whose
// vertices all lie inside the body (certified separation loop).
inline CutSet approx_inside(const Body &k, const Int &budget) {
    if (budget < 1) throw internal_error("approx_inside: budget must be positive");
    return detail::approx_inside_impl(k, budget, 0);
}

// Refine an inside approximation so that every face of the current closure
// that touches the body's relative boundary is covered by the closure of the
// corresponding exposed face.
inline CutSet approx_boundary(const Body &k, const CutSet &inside_cuts, const Int &budget) {
    if (budget < 1) throw internal_error("approx_boundary: budget must be positive");
    return detail::approx_boundary_impl(k, inside_cuts, budget, 0);
}

// The full cut closure of a compact convex body (ambient dimension <= 4),
// with a generating cut family and a trace of the enumeration that proves
// no further integer direction can improve the result.
inline ClosureResult cg_closure(const Body &k, const Int &budget) {
    if (budget < 1) throw internal_error("cg_closure: budget must be positive");
    return detail::closure_impl(k, budget, 0);
}

// Closure over an explicit direction list (no minimality claim).
inline ClosureResult closure_from_directions(const Body &k, const std::vector<IntVec> &dirs) {
    const std::size_t n = k.ambient_dimension();
    CutSet S;
    for (const auto &a : dirs) {
        bool zero = true;
        for (const auto &e : a)
            if (e != 0) { zero = false; break; }
        if (!zero) S.add(cut_for(k, a));
    }
    ClosureTrace trace;
    trace.enumerated_w_count = S.size();
    RationalPolyhedron P = polyhedron_from_cuts(n, S);
    return {std::move(P), std::move(S), std::move(trace)};
}

// Reference oracle: the closure over every nonzero integer direction with
// max-norm at most B.  Monotone non-increasing in B.
inline ClosureResult brute_force_closure(const Body &k, const Int &B) {
    if (B < 1) throw internal_error("brute_force_closure: bound must be positive");
    const std::size_t n = k.ambient_dimension();
    std::vector<IntVec> dirs;
    std::vector<Int> box(n, B);
    detail::for_each_box_tuple(box, [&](const IntVec &a) {
        for (const auto &e : a)
            if (e != 0) {
                dirs.push_back(a);
                return;
            }
    });
    return closure_from_directions(k, dirs);
}

// One-sided comparison: does the truncated closure of the body, restricted to
// the exposed face of v, stay inside the truncated closure of the face?
inline bool face_closure_equals_restriction_check(const Body &k, const ExactVec &v, const Int &B) {
    const std::size_t n = k.ambient_dimension();
    auto fr = k.exposed_face(v);
    auto pf = brute_force_closure(fr.face, B);
    auto pk = brute_force_closure(k, B);
    std::vector<Halfspace<ExactScalar>> hs;
    for (const auto &c : pk.generating_cuts.cuts())
        hs.push_back({detail::int_vec_to_exact(c.a), ExactScalar(Rational(c.rhs))});
    const auto &fd = fr.face.facet_description();
    for (const auto &f : fd.facets) hs.push_back(f);
    for (const auto &e : fd.equations) {
        hs.push_back({e.a, e.b});
        hs.push_back({vec_neg(e.a), -e.b});
    }
    auto verts = dd_vertices(n, hs);
    for (const auto &x : verts)
        for (const auto &c : pf.generating_cuts.cuts())
            if ((detail::dot_int_exact(c.a, x) - Rational(c.rhs)).sign() > 0) return false;
    return true;
}

} // namespace cgc
