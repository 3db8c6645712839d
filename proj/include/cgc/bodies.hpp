/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "cgc/dd.hpp"
#include "cgc/errors.hpp"
#include "cgc/exact_scalar.hpp"
#include "cgc/int_linalg.hpp"
#include "cgc/lattice.hpp"
#include "cgc/linalg.hpp"

namespace cgc {

struct SliceCut { // <a, x> <= b with integer a, rational b
    IntVec a;
    Rational b;
};

namespace detail {

inline Vec<Rational> int_to_rational(const IntVec &v) {
    Vec<Rational> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
    return r;
}

inline ExactVec rational_to_exact(const Vec<Rational> &v) {
    return ExactVec(v.begin(), v.end());
}

inline ExactVec int_vec_to_exact(const IntVec &v) {
    ExactVec r;
    r.reserve(v.size());
    for (const auto &x : v) r.emplace_back(Rational(x));
    return r;
}

inline std::optional<Vec<Rational>> rational_entries(const ExactVec &v) {
    Vec<Rational> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_rational()) return std::nullopt;
        r[i] = v[i].rational_part();
    }
    return r;
}

struct VPolyData {
    std::vector<ExactVec> vertices; // deduplicated, lexicographically sorted
    mutable std::once_flag once;
    mutable std::unique_ptr<FacetDescription<ExactScalar>> frep_;

    const FacetDescription<ExactScalar> &frep() const {
        std::call_once(once, [this] {
            frep_ = std::make_unique<FacetDescription<ExactScalar>>(vpolytope_facets(vertices));
        });
        return *frep_;
    }
};

struct BallData {
    Vec<Rational> center;
    Rational radius;
};

struct SlicedBallData {
    BallData ball;
    std::vector<SliceCut> cuts;
    Vec<Rational> witness; // a point of the body (projection of the center onto the cuts)
    bool singleton = false;
    mutable std::once_flag once;
    mutable std::unique_ptr<std::vector<std::size_t>> tight_; // cuts tight on the whole body
};

// Orthogonal projection of c onto the flat {rows x = rhs}: returns (point,
// multipliers mu) with point = c - rows^T mu, or nothing when the rows are
// linearly dependent (a smaller subset covers that flat).
inline std::optional<std::pair<Vec<Rational>, Vec<Rational>>>
project_on_flat(const Mat<Rational> &rows, const Vec<Rational> &rhs, const Vec<Rational> &c) {
    Mat<Rational> g = gram(rows);
    Vec<Rational> b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) b[i] = dot(rows[i], c) - rhs[i];
    if (rank(g) != rows.size()) return std::nullopt;
    auto mu = solve(g, b);
    if (!mu) return std::nullopt;
    Vec<Rational> p(c);
    for (std::size_t i = 0; i < rows.size(); ++i)
        p = vec_sub(p, vec_scale((*mu)[i], rows[i]));
    return std::make_pair(std::move(p), std::move(*mu));
}

// Exact squared distance from c to {x : cuts hold}, with a witness point;
// nothing if the cut system is infeasible. Enumerates projections onto the
// flats of all(independent) active subsets, which covers the true projection.
inline std::optional<std::pair<Rational, Vec<Rational>>>
distance_sq_to_cuts(const Vec<Rational> &c, const std::vector<SliceCut> &cuts) {
    std::size_t m = cuts.size();
    if (m > 20) throw internal_error("distance_sq_to_cuts: too many halfspaces");
    std::optional<std::pair<Rational, Vec<Rational>>> best;
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        Mat<Rational> rows;
        Vec<Rational> rhs;
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (std::size_t(1) << j)) {
                rows.push_back(int_to_rational(cuts[j].a));
                rhs.push_back(cuts[j].b);
            }
        Vec<Rational> p;
        if (rows.empty()) {
            p = c;
        } else {
            auto proj = project_on_flat(rows, rhs, c);
            if (!proj) continue;
            p = proj->first;
        }
        bool feasible = true;
        for (const auto &cut : cuts)
            feasible = feasible && rat_sign(dot(int_to_rational(cut.a), p) - cut.b) <= 0;
        if (!feasible) continue;
        Rational d2 = dot(vec_sub(p, c), vec_sub(p, c));
        if (!best || d2 < best->first) best = {d2, p};
    }
    return best;
}

struct SlicedBallOpt {
    ExactScalar value; // the support value, certified by KKT multipliers
    ExactVec point;    // a maximizer
    bool unique;       // sphere-active certificate: the maximizer is unique
};

// Support of {x : |x-c| <= r, cuts} in a rational direction a, by KKT
// certification over active subsets. Any value returned is exactly optimal;
// directions whose optimum cannot be certified in this family raise
// UnsupportedDirection.
inline SlicedBallOpt sliced_ball_support(const SlicedBallData &k, const Vec<Rational> &a) {
    const auto &c = k.ball.center;
    const Rational &r = k.ball.radius;
    std::size_t n = c.size(), m = k.cuts.size();
    if (vec_is_zero(a)) return {ExactScalar(0), rational_to_exact(k.witness), false};
    if (k.singleton)
        return {ExactScalar(dot(a, k.witness)), rational_to_exact(k.witness), true};

    auto feasible_outside = [&](const ExactVec &x, std::size_t mask) {
        for (std::size_t j = 0; j < m; ++j) {
            if (mask & (std::size_t(1) << j)) continue;
            ExactScalar lhs(0);
            for (std::size_t i = 0; i < n; ++i) lhs = lhs + x[i] * Rational(k.cuts[j].a[i]);
            if ((lhs - k.cuts[j].b).sign() > 0) return false;
        }
        return true;
    };

    // unconstrained tangent point c + r a/|a|
    {
        Rational s = dot(a, a);
        ExactScalar scale = ExactScalar::sqrt_rational(s) * Rational(r / s); // r/|a|
        ExactVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = ExactScalar(c[i]) + scale * a[i];
        if (feasible_outside(x, 0)) {
            ExactScalar val = ExactScalar(dot(a, c)) + ExactScalar::sqrt_rational(s) * r;
            return {val, std::move(x), true};
        }
    }

    if (m > 20) throw internal_error("sliced_ball_support: too many halfspaces");
    for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
        Mat<Rational> rows;
        Vec<Rational> rhs;
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (std::size_t(1) << j)) {
                rows.push_back(int_to_rational(k.cuts[j].a));
                rhs.push_back(k.cuts[j].b);
            }
        auto proj = project_on_flat(rows, rhs, c);
        if (!proj) continue;
        const Vec<Rational> &p = proj->first;
        const Vec<Rational> &mu = proj->second;
        Rational rs2 = r * r - dot(vec_sub(p, c), vec_sub(p, c));
        if (rat_sign(rs2) < 0) continue;

        // split a into the flat component d and the normal component
        Mat<Rational> g = gram(rows);
        Vec<Rational> ga(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) ga[i] = dot(rows[i], a);
        auto nu = solve(g, ga);
        if (!nu) continue;
        Vec<Rational> d(a);
        for (std::size_t i = 0; i < rows.size(); ++i)
            d = vec_sub(d, vec_scale((*nu)[i], rows[i]));

        if (vec_is_zero(d)) {
            // objective constant on the flat; p itself must be feasible and
            // the multipliers nonnegative for the KKT certificate
            bool nonneg = true;
            for (const auto &x : *nu) nonneg = nonneg && rat_sign(x) >= 0;
            if (!nonneg) continue;
            ExactVec px = rational_to_exact(p);
            if (!feasible_outside(px, mask)) continue;
            return {ExactScalar(dot(a, p)), std::move(px), false};
        }
        if (rat_sign(rs2) == 0) continue; // point section, objective not constant
        Rational dd = dot(d, d);
        // maximizer p + t d with t = sqrt(rs2/dd); sphere multiplier 1/t > 0
        ExactScalar t = ExactScalar::sqrt_rational(rs2 / dd);
        ExactScalar inv_t = ExactScalar::sqrt_rational(dd / rs2);
        bool nonneg = true;
        for (std::size_t i = 0; i < rows.size() && nonneg; ++i) {
            ExactScalar lam = ExactScalar((*nu)[i]) + inv_t * mu[i];
            nonneg = lam.sign() >= 0;
        }
        if (!nonneg) continue;
        ExactVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = ExactScalar(p[i]) + t * d[i];
        if (!feasible_outside(x, mask)) continue;
        ExactScalar val = ExactScalar(dot(a, p)) + ExactScalar::sqrt_rational(rs2 * dd);
        return {val, std::move(x), true};
    }
    throw unsupported_direction("sliced ball support not certifiable in this direction");
}

} // namespace detail

struct FaceResult;

class Body {
  public:
    enum class Kind { vpolytope, ball, sliced_ball };

    static Body vpolytope(std::vector<ExactVec> vertices) {
        if (vertices.empty()) throw empty_body("VPolytope needs at least one vertex");
        std::size_t n = vertices[0].size();
        for (const auto &v : vertices)
            if (v.size() != n) throw internal_error("VPolytope: inconsistent dimensions");
        std::sort(vertices.begin(), vertices.end(), lex_less<ExactScalar>);
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        auto data = std::make_shared<detail::VPolyData>();
        data->vertices = std::move(vertices);
        Body b;
        b.impl_ = std::move(data);
        return b;
    }

    static Body ball(Vec<Rational> center, Rational radius) {
        if (rat_sign(radius) <= 0) throw internal_error("ball radius must be positive");
        auto data = std::make_shared<detail::BallData>();
        data->center = std::move(center);
        data->radius = std::move(radius);
        Body b;
        b.impl_ = std::move(data);
        return b;
    }

    static Body sliced(const Body &base, std::vector<SliceCut> cuts);

    Kind kind() const {
        if (std::holds_alternative<std::shared_ptr<const detail::VPolyData>>(impl_))
            return Kind::vpolytope;
        if (std::holds_alternative<std::shared_ptr<const detail::BallData>>(impl_))
            return Kind::ball;
        return Kind::sliced_ball;
    }

    std::size_t ambient_dimension() const {
        if (auto *p = vpoly()) return p->vertices[0].size();
        if (auto *p = ballp()) return p->center.size();
        return sball()->ball.center.size();
    }

    // h_K(a) = max over K of <a, x>, exact.
    ExactScalar support(const ExactVec &a) const {
        if (auto *p = vpoly()) {
            ExactScalar best = dot(a, p->vertices[0]);
            for (std::size_t i = 1; i < p->vertices.size(); ++i) {
                ExactScalar v = dot(a, p->vertices[i]);
                if ((v - best).sign() > 0) best = v;
            }
            return best;
        }
        auto ra = detail::rational_entries(a);
        if (!ra)
            throw unsupported_direction("ball support needs a rational direction");
        if (auto *p = ballp()) {
            Rational s = dot(*ra, *ra);
            return ExactScalar(dot(*ra, p->center)) + ExactScalar::sqrt_rational(s) * p->radius;
        }
        return detail::sliced_ball_support(*sball(), *ra).value;
    }

    FaceResult exposed_face(const ExactVec &v) const;

    bool contains(const ExactVec &x) const {
        if (auto *p = vpoly()) {
            const auto &fr = p->frep();
            for (const auto &eq : fr.equations)
                if ((dot(eq.a, x) - eq.b).sign() != 0) return false;
            for (const auto &f : fr.facets)
                if ((dot(f.a, x) - f.b).sign() > 0) return false;
            return true;
        }
        const auto &bl = ballp() ? *ballp() : sball()->ball;
        ExactVec d(x);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = d[i] - bl.center[i];
        ExactScalar dist2 = dot(d, d);
        if ((dist2 - Rational(bl.radius * bl.radius)).sign() > 0) return false;
        if (auto *p = sballp()) {
            for (const auto &cut : p->cuts) {
                ExactScalar lhs(0);
                for (std::size_t i = 0; i < x.size(); ++i)
                    lhs = lhs + x[i] * Rational(cut.a[i]);
                if ((lhs - cut.b).sign() > 0) return false;
            }
        }
        return true;
    }

    // For x in K: an exposing direction v with <v,x> = h_K(v) and F_v != K
    // when x lies on the relative boundary; nothing in the relative interior.
    std::optional<ExactVec> on_relative_boundary(const ExactVec &x) const {
        if (auto *p = vpoly()) {
            const auto &fr = p->frep();
            for (const auto &f : fr.facets)
                if ((dot(f.a, x) - f.b).sign() == 0) return f.a;
            return std::nullopt;
        }
        if (auto *p = sballp()) {
            if (p->singleton) return std::nullopt;
            const auto &tight = tight_cuts(*p);
            ExactVec d(x);
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = d[i] - p->ball.center[i];
            if ((dot(d, d) - Rational(p->ball.radius * p->ball.radius)).sign() == 0) return d;
            for (std::size_t j = 0; j < p->cuts.size(); ++j) {
                bool is_tight = std::find(tight.begin(), tight.end(), j) != tight.end();
                if (is_tight) continue; // the whole body lies on this hyperplane
                ExactScalar lhs(0);
                for (std::size_t i = 0; i < x.size(); ++i)
                    lhs = lhs + x[i] * Rational(p->cuts[j].a[i]);
                if ((lhs - p->cuts[j].b).sign() == 0)
                    return detail::int_vec_to_exact(p->cuts[j].a);
            }
            return std::nullopt;
        }
        const auto *p = ballp();
        ExactVec d(x);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = d[i] - p->center[i];
        if ((dot(d, d) - Rational(p->radius * p->radius)).sign() == 0) return d;
        return std::nullopt;
    }

    // Exact affine hull as basepoint + span(basis rows).
    std::pair<ExactVec, Mat<ExactScalar>> affine_hull() const {
        if (auto *p = vpoly()) {
            const auto &fr = p->frep();
            return {fr.basepoint, fr.basis};
        }
        if (auto *p = ballp()) {
            Mat<ExactScalar> basis;
            std::size_t n = p->center.size();
            for (std::size_t i = 0; i < n; ++i) {
                ExactVec e(n, ExactScalar(0));
                e[i] = ExactScalar(1);
                basis.push_back(std::move(e));
            }
            return {detail::rational_to_exact(p->center), std::move(basis)};
        }
        const auto *p = sball();
        ExactVec base = detail::rational_to_exact(p->witness);
        if (p->singleton) return {std::move(base), {}};
        const auto &tight = tight_cuts(*p);
        Mat<ExactScalar> rows;
        for (auto j : tight) rows.push_back(detail::int_vec_to_exact(p->cuts[j].a));
        std::size_t n = p->ball.center.size();
        return {std::move(base), nullspace(rows, n)};
    }

    // The affine hull as a list of equations <a, x> = b (empty when full-dim).
    std::vector<std::pair<ExactVec, ExactScalar>> affine_hull_equations() const {
        std::vector<std::pair<ExactVec, ExactScalar>> eqs;
        if (auto *p = vpoly()) {
            for (const auto &eq : p->frep().equations) eqs.push_back({eq.a, eq.b});
            return eqs;
        }
        if (ballp()) return eqs;
        const auto *p = sball();
        std::size_t n = p->ball.center.size();
        if (p->singleton) {
            for (std::size_t i = 0; i < n; ++i) {
                ExactVec e(n, ExactScalar(0));
                e[i] = ExactScalar(1);
                eqs.push_back({std::move(e), ExactScalar(p->witness[i])});
            }
            return eqs;
        }
        for (auto j : tight_cuts(*p))
            eqs.push_back({detail::int_vec_to_exact(p->cuts[j].a), ExactScalar(p->cuts[j].b)});
        return eqs;
    }

    std::size_t dimension() const { return affine_hull().second.size(); }

    // accessors (narrow, for tests and the CLI)
    const std::vector<ExactVec> &vertices() const {
        auto *p = vpoly();
        if (!p) throw internal_error("vertices() on a non-polytope body");
        return p->vertices;
    }
    const FacetDescription<ExactScalar> &facet_description() const {
        auto *p = vpoly();
        if (!p) throw internal_error("facet_description() on a non-polytope body");
        return p->frep();
    }
    const Vec<Rational> &center() const {
        if (auto *p = ballp()) return p->center;
        if (auto *p = sballp()) return p->ball.center;
        throw internal_error("center() on a polytope body");
    }
    const Rational &radius() const {
        if (auto *p = ballp()) return p->radius;
        if (auto *p = sballp()) return p->ball.radius;
        throw internal_error("radius() on a polytope body");
    }
    const std::vector<SliceCut> &slice_cuts() const {
        if (auto *p = sballp()) return p->cuts;
        throw internal_error("slice_cuts() on a non-sliced body");
    }

    friend Body translate_body(const Body &k, const Vec<Rational> &t);
    friend Body apply_unimodular(const Body &k, const Unimodular &u);

  private:
    Body() = default;

    const detail::VPolyData *vpoly() const {
        auto *p = std::get_if<std::shared_ptr<const detail::VPolyData>>(&impl_);
        return p ? p->get() : nullptr;
    }
    const detail::BallData *ballp() const {
        auto *p = std::get_if<std::shared_ptr<const detail::BallData>>(&impl_);
        return p ? p->get() : nullptr;
    }
    const detail::SlicedBallData *sballp() const {
        auto *p = std::get_if<std::shared_ptr<const detail::SlicedBallData>>(&impl_);
        return p ? p->get() : nullptr;
    }
    const detail::SlicedBallData *sball() const {
        auto *p = sballp();
        if (!p) throw internal_error("sliced-ball accessor on wrong body kind");
        return p;
    }

    // Indices of cuts that hold with equality on the whole body.
    static const std::vector<std::size_t> &tight_cuts(const detail::SlicedBallData &p) {
        std::call_once(p.once, [&p] {
            auto tight = std::make_unique<std::vector<std::size_t>>();
            for (std::size_t j = 0; j < p.cuts.size(); ++j) {
                Vec<Rational> arow = detail::int_to_rational(p.cuts[j].a);
                if (rat_sign(dot(arow, p.witness) - p.cuts[j].b) != 0) continue;
                Vec<Rational> neg = vec_neg(arow);
                auto opt = detail::sliced_ball_support(p, neg);
                if ((opt.value + p.cuts[j].b).sign() == 0) tight->push_back(j);
            }
            p.tight_ = std::move(tight);
        });
        return *p.tight_;
    }

    std::variant<std::shared_ptr<const detail::VPolyData>,
                 std::shared_ptr<const detail::BallData>,
                 std::shared_ptr<const detail::SlicedBallData>>
        impl_;
};

struct FaceResult {
    Body face;                  // the exposed face, in vertex form
    ExactScalar support_value;  // h_K(v)
    ExactVec hyperplane_normal; // v itself
};

inline FaceResult Body::exposed_face(const ExactVec &v) const {
    bool zero_dir = true;
    for (const auto &x : v) zero_dir = zero_dir && x.is_zero();
    if (zero_dir) return {*this, ExactScalar(0), v}; // F_0(K) = K
    if (auto *p = vpoly()) {
        ExactScalar h = support(v);
        std::vector<ExactVec> face;
        for (const auto &x : p->vertices)
            if ((dot(v, x) - h).sign() == 0) face.push_back(x);
        return {Body::vpolytope(std::move(face)), h, v};
    }
    auto ra = detail::rational_entries(v);
    if (!ra) throw unsupported_direction("ball face needs a rational direction");
    if (auto *p = ballp()) {
        Rational s = dot(*ra, *ra);
        ExactScalar scale = ExactScalar::sqrt_rational(s) * Rational(p->radius / s);
        ExactVec x(p->center.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = ExactScalar(p->center[i]) + scale * (*ra)[i];
        ExactScalar h = ExactScalar(dot(*ra, p->center)) + ExactScalar::sqrt_rational(s) * p->radius;
        return {Body::vpolytope({std::move(x)}), std::move(h), v};
    }
    auto opt = detail::sliced_ball_support(*sball(), *ra);
    if (!opt.unique)
        throw irrational_face_point("sliced-ball face is not a certified single point");
    return {Body::vpolytope({std::move(opt.point)}), std::move(opt.value), v};
}

inline Body Body::sliced(const Body &base, std::vector<SliceCut> cuts) {
    std::size_t n = base.ambient_dimension();
    for (const auto &c : cuts)
        if (c.a.size() != n) throw internal_error("sliced: halfspace dimension mismatch");

    if (auto *p = base.vpoly()) {
        const auto &fr = p->frep();
        std::vector<Halfspace<ExactScalar>> hs;
        for (const auto &f : fr.facets) hs.push_back(f);
        for (const auto &eq : fr.equations) {
            hs.push_back({eq.a, eq.b});
            hs.push_back({vec_neg(eq.a), -eq.b});
        }
        for (const auto &c : cuts)
            hs.push_back({detail::int_vec_to_exact(c.a), ExactScalar(c.b)});
        auto verts = dd_vertices(n, hs);
        if (verts.empty()) throw empty_body("sliced polytope is empty");
        return Body::vpolytope(std::move(verts));
    }

    const detail::BallData *bl = base.ballp();
    std::vector<SliceCut> all;
    if (!bl) {
        const auto *sb = base.sball();
        bl = &sb->ball;
        all = sb->cuts;
    }
    for (auto &c : cuts) all.push_back(std::move(c));
    auto dist = detail::distance_sq_to_cuts(bl->center, all);
    if (!dist) throw empty_body("sliced ball is empty (cut system infeasible)");
    Rational r2 = bl->radius * bl->radius;
    if (dist->first > r2) throw empty_body("sliced ball is empty (cuts miss the ball)");
    auto data = std::make_shared<detail::SlicedBallData>();
    data->ball = *bl;
    data->cuts = std::move(all);
    data->singleton = dist->first == r2;
    data->witness = std::move(dist->second);
    Body b;
    b.impl_ = std::move(data);
    return b;
}

inline Body translate_body(const Body &k, const Vec<Rational> &t) {
    if (auto *p = k.vpoly()) {
        std::vector<ExactVec> vs;
        for (const auto &v : p->vertices) {
            ExactVec w(v);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = w[i] + t[i];
            vs.push_back(std::move(w));
        }
        return Body::vpolytope(std::move(vs));
    }
    if (auto *p = k.ballp()) return Body::ball(vec_add(p->center, t), p->radius);
    const auto *p = k.sball();
    Body moved = Body::ball(vec_add(p->ball.center, t), p->ball.radius);
    std::vector<SliceCut> cuts(p->cuts);
    for (auto &c : cuts) c.b += dot(detail::int_to_rational(c.a), t);
    return Body::sliced(moved, std::move(cuts));
}

inline bool is_signed_permutation(const IntMat &m) {
    for (const auto &row : m) {
        int nz = 0;
        for (const auto &x : row)
            if (x != 0) { ++nz; if (x != 1 && x != -1) return false; }
        if (nz != 1) return false;
    }
    for (std::size_t c = 0; c < m.size(); ++c) {
        int nz = 0;
        for (std::size_t r = 0; r < m.size(); ++r)
            if (m[r][c] != 0) ++nz;
        if (nz != 1) return false;
    }
    return true;
}

// Image of the body under a unimodular map. Polytopes accept any unimodular
// matrix; balls only signed permutations (anything else leaves the grammar).
inline Body apply_unimodular(const Body &k, const Unimodular &u) {
    if (auto *p = k.vpoly()) {
        std::vector<ExactVec> vs;
        for (const auto &v : p->vertices) vs.push_back(exact_mat_vec(u.m, v));
        return Body::vpolytope(std::move(vs));
    }
    if (!is_signed_permutation(u.m))
        throw internal_error("non-permutation unimodular image of a ball is not representable");
    auto map_center = [&](const Vec<Rational> &c) {
        Vec<Rational> r(c.size(), Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j)
                if (u.m[i][j] != 0) r[i] += Rational(u.m[i][j]) * c[j];
        return r;
    };
    if (auto *p = k.ballp()) return Body::ball(map_center(p->center), p->radius);
    const auto *p = k.sball();
    Body moved = Body::ball(map_center(p->ball.center), p->ball.radius);
    IntMat uinv_t = int_transpose(u.inv);
    std::vector<SliceCut> cuts(p->cuts);
    for (auto &c : cuts) c.a = int_mat_vec(uinv_t, c.a);
    return Body::sliced(moved, std::move(cuts));
}

} // namespace cgc
