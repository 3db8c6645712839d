/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#ifndef CGC_JSON_IO_HPP
#define CGC_JSON_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cgc/bodies.hpp"
#include "cgc/polyhedra.hpp"

namespace cgc {

// Key order is preserved so identical inputs serialize byte-identically.
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// scalars
//
// A scalar is either {"rat": "p/q"} or {"terms": [{"coef": "p/q", "sqrt": d},
// ...]} with squarefree positive d (d = 1 marks the rational term).  Parsing
// also accepts the plain text form ("3/2", "1+1*sqrt(2)") and bare integers.
// ---------------------------------------------------------------------------

inline json scalar_to_json(const ExactScalar &x) {
    if (x.is_rational()) {
        json o = json::object();
        o["rat"] = rational_to_string(x.rational_part());
        return o;
    }
    json terms = json::array();
    for (const auto &[d, c] : x.terms()) {
        json t = json::object();
        t["coef"] = rational_to_string(c);
        t["sqrt"] = d.convert_to<long long>();
        terms.push_back(std::move(t));
    }
    json o = json::object();
    o["terms"] = std::move(terms);
    return o;
}

inline Int int_from_json(const json &j) {
    try {
        if (j.is_number_integer()) return Int(j.get<long long>());
        if (j.is_string()) return Int(j.get<std::string>());
    } catch (const std::exception &) {
    }
    throw parse_error("expected an integer, got " + j.dump());
}

inline ExactScalar scalar_from_json(const json &j) {
    if (j.is_string()) return ExactScalar::from_string(j.get<std::string>());
    if (j.is_number_integer()) return ExactScalar(Rational(Int(j.get<long long>())));
    if (j.is_object() && j.contains("rat")) {
        const json &r = j.at("rat");
        if (!r.is_string()) throw parse_error("\"rat\" must hold a rational string");
        return ExactScalar(parse_rational(r.get<std::string>()));
    }
    if (j.is_object() && j.contains("terms")) {
        const json &ts = j.at("terms");
        if (!ts.is_array()) throw parse_error("\"terms\" must hold an array");
        ExactScalar total;
        for (const json &t : ts) {
            if (!t.is_object() || !t.contains("coef") || !t.contains("sqrt"))
                throw parse_error("scalar term needs \"coef\" and \"sqrt\": " + t.dump());
            const json &cj = t.at("coef");
            if (!cj.is_string()) throw parse_error("\"coef\" must hold a rational string");
            Rational c = parse_rational(cj.get<std::string>());
            Int d = int_from_json(t.at("sqrt"));
            if (d <= 0) throw parse_error("radicand must be positive, got " + d.str());
            total += ExactScalar::sqrt_term(c, d);
        }
        return total;
    }
    throw parse_error("expected a scalar, got " + j.dump());
}

inline Rational rational_from_json(const json &j) {
    ExactScalar x = scalar_from_json(j);
    if (!x.is_rational()) throw parse_error("expected a rational value, got " + j.dump());
    return x.rational_part();
}

inline ExactVec vector_from_json(const json &j) {
    if (!j.is_array() || j.empty()) throw parse_error("expected a nonempty vector");
    ExactVec v;
    for (const json &e : j) v.push_back(scalar_from_json(e));
    return v;
}

inline IntVec int_vector_from_json(const json &j) {
    if (!j.is_array() || j.empty()) throw parse_error("expected a nonempty integer vector");
    IntVec v;
    for (const json &e : j) v.push_back(int_from_json(e));
    return v;
}

// ---------------------------------------------------------------------------
// bodies
//
// {"vpolytope": {"vertices": [[scalar, ...], ...]}}
// {"ball":      {"center": [rational, ...], "radius": "p/q"}}
// {"sliced":    {"base": <body>, "halfspaces": [{"a": [ints], "b": "p/q"}, ...]}}
// ---------------------------------------------------------------------------

inline Body body_from_json(const json &j) {
    if (!j.is_object()) throw parse_error("body: expected an object");
    if (j.contains("vpolytope")) {
        const json &p = j.at("vpolytope");
        if (!p.is_object() || !p.contains("vertices"))
            throw parse_error("vpolytope: expected {\"vertices\": [[...], ...]}");
        const json &vs = p.at("vertices");
        if (!vs.is_array() || vs.empty()) throw parse_error("vpolytope: needs at least one vertex");
        std::vector<ExactVec> verts;
        for (const json &v : vs) verts.push_back(vector_from_json(v));
        for (const auto &v : verts)
            if (v.size() != verts.front().size())
                throw parse_error("vpolytope: vertices of mixed dimension");
        return Body::vpolytope(std::move(verts));
    }
    if (j.contains("ball")) {
        const json &b = j.at("ball");
        if (!b.is_object() || !b.contains("center") || !b.contains("radius"))
            throw parse_error("ball: expected {\"center\": [...], \"radius\": \"p/q\"}");
        const json &cj = b.at("center");
        if (!cj.is_array() || cj.empty()) throw parse_error("ball: center must be a nonempty vector");
        Vec<Rational> center;
        for (const json &e : cj) center.push_back(rational_from_json(e));
        Rational radius = rational_from_json(b.at("radius"));
        if (rat_sign(radius) <= 0) throw parse_error("ball: radius must be positive");
        return Body::ball(std::move(center), std::move(radius));
    }
    if (j.contains("sliced")) {
        const json &s = j.at("sliced");
        if (!s.is_object() || !s.contains("base") || !s.contains("halfspaces"))
            throw parse_error("sliced: expected {\"base\": <body>, \"halfspaces\": [...]}");
        Body base = body_from_json(s.at("base"));
        const json &hs = s.at("halfspaces");
        if (!hs.is_array() || hs.empty())
            throw parse_error("sliced: needs at least one halfspace");
        std::vector<SliceCut> cuts;
        for (const json &h : hs) {
            if (!h.is_object() || !h.contains("a") || !h.contains("b"))
                throw parse_error("halfspace: expected {\"a\": [ints], \"b\": \"p/q\"}");
            SliceCut c{int_vector_from_json(h.at("a")), rational_from_json(h.at("b"))};
            if (c.a.size() != base.ambient_dimension())
                throw parse_error("halfspace: normal dimension does not match the base body");
            cuts.push_back(std::move(c));
        }
        return Body::sliced(base, std::move(cuts));
    }
    throw parse_error("body: unknown kind (expected vpolytope, ball, or sliced)");
}

// ---------------------------------------------------------------------------
// polyhedra
//
// {"hrep": [{"a": ["..."], "b": "p/q"}, ...], "vrep": [["p/q", ...], ...]}
// with primitive integer normals, lexicographically sorted; hull equations
// appear as inequality pairs.  The empty polyhedron is encoded by the single
// infeasible row 0 <= -1 and an empty vrep.
// ---------------------------------------------------------------------------

inline json polyhedron_to_json(const RationalPolyhedron &p) {
    std::vector<std::pair<IntVec, Rational>> rows;
    if (p.empty()) {
        rows.emplace_back(IntVec(p.dim, Int(0)), Rational(-1));
    } else {
        CanonicalHrep ch = canonical_hrep(p);
        rows = std::move(ch.facets);
        for (const auto &eq : ch.equations) {
            rows.push_back(eq);
            IntVec neg;
            for (const auto &x : eq.first) neg.push_back(Int(-x));
            rows.emplace_back(std::move(neg), Rational(-eq.second));
        }
        std::sort(rows.begin(), rows.end());
    }
    json hrep = json::array();
    for (const auto &[a, b] : rows) {
        json row = json::object();
        json av = json::array();
        for (const auto &x : a) av.push_back(x.str());
        row["a"] = std::move(av);
        row["b"] = rational_to_string(b);
        hrep.push_back(std::move(row));
    }
    json vrep = json::array();
    for (const auto &v : p.vertices) {
        json pt = json::array();
        for (const auto &x : v) pt.push_back(rational_to_string(x));
        vrep.push_back(std::move(pt));
    }
    json out = json::object();
    out["hrep"] = std::move(hrep);
    out["vrep"] = std::move(vrep);
    return out;
}

} // namespace cgc

#endif // CGC_JSON_IO_HPP
