/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

// Command-line front end: parses a job file describing a compact convex body,
// runs the requested computation, and emits exact results as JSON, a CSV
// vertex dump, or a 2-D SVG sketch.
//
//   cgclosure --input job.json --command closure [--budget N] [--output json]
//
// Commands:
//   closure    cutting-plane closure of the body (certified construction)
//   oracle     brute-force closure over all directions with max-norm <= bound
//   compare    both of the above plus the smallest bound at which they agree
//   lift       pull a cut on an exposed face back to a cut on the body
//   normalize  canonical form of a direction vector
//   separate   certificate pinning the supporting hyperplane of a direction
//
// All numeric output is exact: rationals as "p/q", big integers as decimal
// strings, extended scalars in the "1+1*sqrt(2)" text form.  Floating point
// appears only inside SVG geometry attributes.  Exit codes: 0 success,
// 1 internal failure, 2 malformed input or flags, 3 search budget exhausted,
// 4 direction not supported for this body kind.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgc/closure.hpp"
#include "cgc/json_io.hpp"

namespace {

using namespace cgc;

struct Job {
    std::string command;
    std::string output = "json";
    std::string outfile;
    long long bound = 2;
    long long budget = 16;
    json input;
};

json load_input(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const std::exception &e) {
        throw parse_error(std::string("input is not valid JSON: ") + e.what());
    }
}

// The job file either is a body object or wraps one under "body".
const json &body_slot(const json &j) {
    if (j.is_object() && j.contains("body")) return j.at("body");
    return j;
}

json closure_payload(const ClosureResult &res) {
    json out = polyhedron_to_json(res.polyhedron);
    json trace = json::object();
    trace["delta"] = rational_to_string(res.trace.delta);
    trace["radius"] = rational_to_string(res.trace.R);
    trace["directions"] = res.trace.enumerated_w_count;
    out["trace"] = std::move(trace);
    return out;
}

json run_compare(const Body &k, const RationalPolyhedron &closure, long long bound) {
    long long matched = -1;
    for (long long b = 1; b <= bound && matched < 0; ++b)
        if (polyhedra_equal(closure, brute_force_closure(k, Int(b)).polyhedron))
            matched = b;
    json out = json::object();
    out["verdict"] = matched < 0 ? "not equal up to B=" + std::to_string(bound)
                                 : "equal at B=" + std::to_string(matched);
    json body = polyhedron_to_json(closure);
    out["hrep"] = std::move(body["hrep"]);
    out["vrep"] = std::move(body["vrep"]);
    return out;
}

json run_lift(const json &input, long long budget) {
    Body k = body_from_json(body_slot(input));
    if (!input.is_object() || !input.contains("v") || !input.contains("w"))
        throw parse_error("lift needs {\"body\": ..., \"v\": [...], \"w\": [...]}");
    ExactVec v = vector_from_json(input.at("v"));
    IntVec w = int_vector_from_json(input.at("w"));
    if (v.size() != k.ambient_dimension() || w.size() != k.ambient_dimension())
        throw parse_error("lift: v and w must match the body dimension");
    LiftWitness wit = lift_cut(k, v, w, Int(budget));
    json out = json::object();
    json wp = json::array();
    for (const auto &x : wit.w_prime) wp.push_back(x.str());
    out["w_prime"] = std::move(wp);
    out["n_dirichlet"] = wit.n_dirichlet.str();
    out["epsilon"] = rational_to_string(wit.epsilon);
    out["vacuous"] = wit.vacuous;
    return out;
}

json run_normalize(const json &input) {
    if (!input.is_object() || !input.contains("v"))
        throw parse_error("normalize needs {\"v\": [...]}");
    ExactVec v = vector_from_json(input.at("v"));
    NormalizedDirection nd = normalize_direction(v);
    json out = json::object();
    out["t"] = nd.t;
    out["s"] = nd.s;
    out["r"] = nd.r;
    out["rational_dimension"] = nd.rational_dim;
    out["lambda"] = rational_to_string(nd.lambda);
    json canon = json::array();
    for (const auto &x : nd.canonical) canon.push_back(x.to_string());
    out["canonical"] = std::move(canon);
    return out;
}

json run_separate(const json &input, long long budget) {
    Body k = body_from_json(body_slot(input));
    if (!input.is_object() || !input.contains("v"))
        throw parse_error("separate needs {\"body\": ..., \"v\": [...]}");
    ExactVec v = vector_from_json(input.at("v"));
    if (v.size() != k.ambient_dimension())
        throw parse_error("separate: v must match the body dimension");
    SeparationCertificate cert = separate_irrational(k, v, Int(budget));
    json out = json::object();
    json cuts = json::array();
    for (const auto &a : cert.cut_vectors) {
        Cut c = cut_for(k, a);
        json row = json::object();
        json av = json::array();
        for (const auto &x : c.a) av.push_back(x.str());
        row["a"] = std::move(av);
        row["b"] = c.rhs.str();
        cuts.push_back(std::move(row));
    }
    out["cuts"] = std::move(cuts);
    json lambdas = json::array();
    for (const auto &l : cert.lambdas) lambdas.push_back(l.to_string());
    out["lambdas"] = std::move(lambdas);
    out["multiple"] = cert.multiple.to_string();
    out["strict"] = cert.strict;
    json kron = json::array();
    for (const auto &n : cert.trace.kronecker_indices) kron.push_back(n.str());
    out["kronecker"] = std::move(kron);
    return out;
}

std::string csv_payload(const RationalPolyhedron &p) {
    std::ostringstream out;
    for (std::size_t i = 0; i < p.dim; ++i) out << (i ? "," : "") << "x" << (i + 1);
    out << "\n";
    for (const auto &v : p.vertices) {
        for (std::size_t i = 0; i < v.size(); ++i)
            out << (i ? "," : "") << rational_to_string(v[i]);
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// SVG sketch: body outline (polygon or circle), slice lines, lattice dots, and
// the closure polygon.  Coordinates are the only floating-point output.
// ---------------------------------------------------------------------------

double scalar_width(const Rational &q) { return q.convert_to<double>(); }

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

struct Frame {
    double minx, miny, scale, height;
    double X(double x) const { return (x - minx) * scale + 20.0; }
    double Y(double y) const { return height - ((y - miny) * scale + 20.0); }
};

std::vector<std::pair<double, double>> hull_order(std::vector<std::pair<double, double>> pts) {
    double cx = 0, cy = 0;
    for (auto &[x, y] : pts) { cx += x; cy += y; }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const auto &p, const auto &q) {
        double ap = std::atan2(p.second - cy, p.first - cx);
        double aq = std::atan2(q.second - cy, q.first - cx);
        if (ap != aq) return ap < aq;
        return p < q;
    });
    return pts;
}

void svg_points(std::ostream &out, const Frame &f,
                const std::vector<std::pair<double, double>> &pts, const char *style) {
    if (pts.size() == 1) {
        out << "<circle cx=\"" << fmt(f.X(pts[0].first)) << "\" cy=\"" << fmt(f.Y(pts[0].second))
            << "\" r=\"3\" " << style << "/>\n";
        return;
    }
    out << (pts.size() == 2 ? "<polyline points=\"" : "<polygon points=\"");
    for (const auto &[x, y] : hull_order(pts))
        out << fmt(f.X(x)) << "," << fmt(f.Y(y)) << " ";
    out << "\" " << style << "/>\n";
}

std::string svg_payload(const Body &k, const RationalPolyhedron &p) {
    if (k.ambient_dimension() != 2)
        throw parse_error("svg output is only available for 2-D bodies");
    std::vector<std::pair<double, double>> body_pts;
    const Body *ball = k.kind() == Body::Kind::vpolytope ? nullptr : &k;
    if (k.kind() == Body::Kind::vpolytope) {
        for (const auto &v : k.vertices()) body_pts.emplace_back(v[0].to_double(), v[1].to_double());
    } else {
        double cx = scalar_width(k.center()[0]), cy = scalar_width(k.center()[1]);
        double r = scalar_width(k.radius());
        body_pts = {{cx - r, cy - r}, {cx + r, cy + r}};
    }
    double minx = body_pts[0].first, maxx = minx, miny = body_pts[0].second, maxy = miny;
    auto grow = [&](double x, double y) {
        minx = std::min(minx, x); maxx = std::max(maxx, x);
        miny = std::min(miny, y); maxy = std::max(maxy, y);
    };
    for (const auto &[x, y] : body_pts) grow(x, y);
    std::vector<std::pair<double, double>> closure_pts;
    for (const auto &v : p.vertices) {
        closure_pts.emplace_back(scalar_width(v[0]), scalar_width(v[1]));
        grow(closure_pts.back().first, closure_pts.back().second);
    }
    minx -= 0.5; miny -= 0.5; maxx += 0.5; maxy += 0.5;
    double span = std::max(maxx - minx, maxy - miny);
    Frame f{minx, miny, 400.0 / span, (maxy - miny) * (400.0 / span) + 40.0};
    double width = (maxx - minx) * f.scale + 40.0;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(width) << " "
        << fmt(f.height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (long gx = static_cast<long>(std::ceil(minx)); gx <= static_cast<long>(std::floor(maxx)); ++gx)
        for (long gy = static_cast<long>(std::ceil(miny)); gy <= static_cast<long>(std::floor(maxy)); ++gy)
            out << "<circle cx=\"" << fmt(f.X(static_cast<double>(gx))) << "\" cy=\""
                << fmt(f.Y(static_cast<double>(gy))) << "\" r=\"1.5\" fill=\"#bbbbbb\"/>\n";
    const char *body_style = "fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"";
    if (ball) {
        double cx = scalar_width(k.center()[0]), cy = scalar_width(k.center()[1]);
        out << "<circle cx=\"" << fmt(f.X(cx)) << "\" cy=\"" << fmt(f.Y(cy)) << "\" r=\""
            << fmt(scalar_width(k.radius()) * f.scale) << "\" " << body_style << "/>\n";
        static const std::vector<SliceCut> no_cuts;
        for (const auto &c : (k.kind() == Body::Kind::sliced_ball ? k.slice_cuts() : no_cuts)) {
            // draw the slice boundary a1 x + a2 y = b clipped to the frame
            double a1 = c.a[0].convert_to<double>(), a2 = c.a[1].convert_to<double>();
            double b = scalar_width(c.b);
            std::vector<std::pair<double, double>> ends;
            auto try_edge = [&](double x, double y, bool vertical) {
                if (vertical) { // x fixed, solve for y
                    if (a2 != 0) { double yy = (b - a1 * x) / a2; if (yy >= miny && yy <= maxy) ends.emplace_back(x, yy); }
                } else {
                    if (a1 != 0) { double xx = (b - a2 * y) / a1; if (xx >= minx && xx <= maxx) ends.emplace_back(xx, y); }
                }
            };
            try_edge(minx, 0, true);
            try_edge(maxx, 0, true);
            try_edge(0, miny, false);
            try_edge(0, maxy, false);
            if (ends.size() >= 2)
                out << "<line x1=\"" << fmt(f.X(ends[0].first)) << "\" y1=\"" << fmt(f.Y(ends[0].second))
                    << "\" x2=\"" << fmt(f.X(ends[1].first)) << "\" y2=\"" << fmt(f.Y(ends[1].second))
                    << "\" stroke=\"steelblue\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
        }
    } else {
        svg_points(out, f, body_pts, body_style);
    }
    if (!closure_pts.empty())
        svg_points(out, f, closure_pts,
                   "fill=\"darkorange\" fill-opacity=\"0.35\" stroke=\"darkorange\" stroke-width=\"2\"");
    out << "</svg>\n";
    return out.str();
}

std::string run_job(const Job &job) {
    const bool polyhedral = job.command == "closure" || job.command == "oracle" ||
                            job.command == "compare";
    if (!polyhedral && job.output != "json")
        throw parse_error("output format \"" + job.output + "\" is only available for "
                          "closure, oracle, and compare");
    json payload;
    RationalPolyhedron result;
    Body body = Body::vpolytope({{ExactScalar(0)}}); // replaced below when used
    if (polyhedral) {
        body = body_from_json(body_slot(job.input));
        if (job.command == "closure") {
            ClosureResult res = cg_closure(body, Int(job.budget));
            result = res.polyhedron;
            payload = closure_payload(res);
        } else if (job.command == "oracle") {
            ClosureResult res = brute_force_closure(body, Int(job.bound));
            result = res.polyhedron;
            payload = polyhedron_to_json(result);
        } else {
            result = cg_closure(body, Int(job.budget)).polyhedron;
            payload = run_compare(body, result, job.bound);
        }
        if (job.output == "csv") return csv_payload(result);
        if (job.output == "svg") return svg_payload(body, result);
    } else if (job.command == "lift") {
        payload = run_lift(job.input, job.budget);
    } else if (job.command == "normalize") {
        payload = run_normalize(job.input);
    } else {
        payload = run_separate(job.input, job.budget);
    }
    return payload.dump(2) + "\n";
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact cutting-plane closures of compact convex bodies"};
    std::string input, command, output = "json", outfile;
    long long bound = 2, budget = 16, seed = 0;
    app.add_option("--input", input, "job file (JSON)")->required();
    app.add_option("--command", command, "closure|oracle|lift|normalize|separate|compare")
        ->required()
        ->check(CLI::IsMember({"closure", "oracle", "lift", "normalize", "separate", "compare"}));
    app.add_option("--bound", bound, "oracle direction bound (max-norm)")
        ->check(CLI::Range(1LL, 1000000LL));
    app.add_option("--budget", budget, "search budget for certified constructions")
        ->check(CLI::Range(1LL, 1000000LL));
    app.add_option("--output", output, "json|csv|svg")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    app.add_option("--out", outfile, "write the result here instead of stdout");
    app.add_option("--seed", seed, "reserved; all computations are deterministic");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }
    try {
        Job job;
        job.command = command;
        job.output = output;
        job.outfile = outfile;
        job.bound = bound;
        job.budget = budget;
        job.input = load_input(input);
        std::string payload = run_job(job);
        if (outfile.empty()) {
            std::cout << payload;
        } else {
            std::ofstream out(outfile, std::ios::binary);
            if (!out) throw cgc::error("cannot open output file: " + outfile);
            out << payload;
        }
        return 0;
    } catch (const cgc::parse_error &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const cgc::budget_exhausted &e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const cgc::unsupported_direction &e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const cgc::error &e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return 1;
    }
}
