/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The cgclosure authors
 */

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cgc/lattice.hpp"

using namespace cgc;

namespace {

Rational int_det(const IntMat &m) {
    std::size_t n = m.size();
    Mat<Rational> a(n, Vec<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) { std::swap(a[p], a[c]); det = -det; }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

void check_unimodular(const Unimodular &u) {
    Rational d = int_det(u.m);
    CHECK((d == 1 || d == -1));
    CHECK(int_mat_mul(u.m, u.inv) == int_identity(u.m.size()));
    CHECK(int_mat_mul(u.inv, u.m) == int_identity(u.m.size()));
}

IntMat random_int_mat(std::mt19937 &rng, std::size_t rows, std::size_t cols, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMat m(rows, IntVec(cols));
    for (auto &row : m)
        for (auto &x : row) x = d(rng);
    return m;
}

ExactScalar sq(long long cn, long long cd, long long rad) {
    return ExactScalar::sqrt_term(Rational(cn, cd), Int(rad));
}

ExactVec ev(std::initializer_list<ExactScalar> xs) { return ExactVec(xs); }

// Random nonzero vector over Q(sqrt 2, sqrt 3, sqrt 5), keys {1,2,3,5}.
ExactVec random_direction(std::mt19937 &rng, std::size_t n) {
    std::uniform_int_distribution<int> numd(-4, 4), dend(1, 3), pick(0, 3);
    static const long long keys[4] = {1, 2, 3, 5};
    for (;;) {
        ExactVec v(n, ExactScalar(0));
        for (auto &x : v) {
            int nterms = pick(rng);
            for (int t = 0; t < nterms; ++t)
                x = x + sq(numd(rng), dend(rng), keys[pick(rng)]);
        }
        for (const auto &x : v)
            if (!x.is_zero()) return v;
    }
}

} // namespace

TEST_CASE("hermite normal form examples") {
    auto [h1, u1] = hnf(int_identity(3));
    CHECK(h1 == int_identity(3));
    CHECK(u1.m == int_identity(3));

    // single column (2,3): reduced to gcd pivot 1
    auto [h2, u2] = hnf(IntMat{{2}, {3}});
    CHECK(h2 == IntMat{{1}, {0}});
    CHECK(int_mat_mul(u2.m, IntMat{{2}, {3}}) == h2);
    check_unimodular(u2);

    // diag(2,3) is already in Hermite form
    auto [h3, u3] = hnf(IntMat{{2, 0}, {0, 3}});
    CHECK(h3 == IntMat{{2, 0}, {0, 3}});
    CHECK(u3.m == int_identity(2));
}

TEST_CASE("hermite normal form properties") {
    std::mt19937 rng(101);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t rows = 1 + iter % 4, cols = 1 + (iter / 2) % 4;
        IntMat m = random_int_mat(rng, rows, cols, -9, 9);
        auto [h, u] = hnf(m);
        check_unimodular(u);
        CHECK(int_mat_mul(u.m, m) == h);
        // row-echelon shape with positive pivots and reduced entries above
        std::size_t last_pivot = 0;
        bool seen_zero_row = false;
        for (std::size_t i = 0; i < rows; ++i) {
            std::size_t c = 0;
            while (c < cols && h[i][c] == 0) ++c;
            if (c == cols) { seen_zero_row = true; continue; }
            CHECK(!seen_zero_row);
            if (i > 0) CHECK(c >= last_pivot + (i > 0 ? 1 : 0));
            last_pivot = c;
            CHECK(h[i][c] > 0);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(h[k][c] >= 0);
                CHECK(h[k][c] < h[i][c]);
            }
        }
    }
}

TEST_CASE("euclidean vector reduction") {
    auto r1 = euclid_reduce({2, 3});
    CHECK(r1.gcd == 1);
    CHECK(int_mat_vec(r1.e.m, {2, 3}) == IntVec{0, 1});
    check_unimodular(r1.e);

    auto r2 = euclid_reduce({4, 6});
    CHECK(r2.gcd == 2);
    CHECK(int_mat_vec(r2.e.m, {4, 6}) == IntVec{0, 2});

    auto r3 = euclid_reduce({0, 0, 5});
    CHECK(r3.gcd == 5);
    CHECK(int_mat_vec(r3.e.m, {0, 0, 5}) == IntVec{0, 0, 5});

    CHECK_THROWS_AS(euclid_reduce({0, 0}), zero_vector);

    std::mt19937 rng(103);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t n = 1 + iter % 5;
        IntVec v(n);
        Int g = 0;
        bool nonzero = false;
        for (auto &x : v) { x = d(rng); g = int_gcd(g, x); nonzero = nonzero || x != 0; }
        if (!nonzero) continue;
        auto r = euclid_reduce(v);
        CHECK(r.gcd == g);
        IntVec img = int_mat_vec(r.e.m, v);
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(img[i] == 0);
        CHECK(img[n - 1] == g);
        check_unimodular(r.e);
    }
}

TEST_CASE("integer linear systems") {
    // 2x = 1 has no integer solution
    CHECK(!solve_integer({{2}}, {1}).has_value());
    // x1 + x2 = 1
    auto s = solve_integer({{1, 1}}, {1});
    REQUIRE(s.has_value());
    CHECK(s->particular[0] + s->particular[1] == 1);
    REQUIRE(s->kernel.size() == 1);
    CHECK(s->kernel[0][0] + s->kernel[0][1] == 0);

    std::mt19937 rng(107);
    for (int iter = 0; iter < 80; ++iter) {
        std::size_t m = 1 + iter % 3, n = 1 + (iter / 3) % 4;
        IntMat a = random_int_mat(rng, m, n, -6, 6);
        // build a guaranteed-solvable rhs from a random integer point
        IntVec x = random_int_mat(rng, 1, n, -5, 5)[0];
        IntVec b = int_mat_vec(a, x);
        auto sol = solve_integer(a, b);
        REQUIRE(sol.has_value());
        CHECK(int_mat_vec(a, sol->particular) == b);
        for (const auto &k : sol->kernel)
            CHECK(int_mat_vec(a, k) == IntVec(m, 0));
        // x - particular must lie in the kernel lattice (saturation)
        IntVec diff(n);
        for (std::size_t i = 0; i < n; ++i) diff[i] = x[i] - sol->particular[i];
        if (sol->kernel.empty()) {
            CHECK(diff == IntVec(n, 0));
        } else {
            CHECK(solve_integer(int_transpose(sol->kernel), diff).has_value());
        }
    }
}

TEST_CASE("direction normalization examples") {
    auto n1 = normalize_direction(ev({ExactScalar(2), ExactScalar(3)}));
    CHECK(n1.t == 1);
    CHECK(n1.s == 1);
    CHECK(n1.r == 0);
    CHECK(n1.lambda == Rational(1));
    CHECK(n1.rational_dim == 1);
    CHECK(n1.canonical == ev({ExactScalar(0), ExactScalar(1)}));

    auto n2 = normalize_direction(ev({ExactScalar(1), sq(1, 1, 2)}));
    CHECK(n2.t == 0);
    CHECK(n2.s == 1);
    CHECK(n2.r == 1);
    CHECK(n2.T.m == int_identity(2));
    CHECK(n2.rational_dim == 2);
    CHECK(n2.canonical == ev({ExactScalar(1), sq(1, 1, 2)}));

    auto n3 = normalize_direction(ev({sq(1, 1, 2), sq(1, 1, 2)}));
    CHECK(n3.t == 1);
    CHECK(n3.s == 0);
    CHECK(n3.r == 1);
    CHECK(n3.rational_dim == 1);
    CHECK(n3.canonical == ev({ExactScalar(0), sq(1, 1, 2)}));

    CHECK_THROWS_AS(normalize_direction(ev({ExactScalar(0)})), zero_vector);
}

TEST_CASE("direction normalization invariants") {
    std::mt19937 rng(109);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 1 + iter % 4;
        ExactVec v = random_direction(rng, n);
        auto nd = normalize_direction(v);
        check_unimodular(nd.T);
        CHECK(rat_sign(nd.lambda) > 0);
        // canonical = lambda * T * v, exactly
        ExactVec tv = exact_mat_vec(nd.T.m, v);
        for (auto &x : tv) x = x * nd.lambda;
        CHECK(tv == nd.canonical);
        // shape (0^t, 1^s, alpha_1..alpha_r)
        REQUIRE(nd.t + nd.s + nd.r == n);
        for (std::size_t i = 0; i < nd.t; ++i) CHECK(nd.canonical[i].is_zero());
        if (nd.s == 1) CHECK(nd.canonical[nd.t] == ExactScalar(1));
        ExactVec one_alpha{ExactScalar(1)};
        for (std::size_t i = 0; i < nd.r; ++i) {
            const auto &alpha = nd.canonical[nd.t + nd.s + i];
            CHECK(!alpha.is_rational());
            one_alpha.push_back(alpha);
        }
        // (1, alpha_1..alpha_r) linearly independent over Q
        CHECK(rational_dimension(one_alpha) == nd.r + 1);
        // independent rank computation agrees
        CHECK(rational_dimension(v) == nd.s + nd.r);
        CHECK(nd.rational_dim == nd.s + nd.r);
    }
}

TEST_CASE("rational dimension examples") {
    CHECK(rational_dimension(ev({ExactScalar(2), ExactScalar(3)})) == 1);
    CHECK(rational_dimension(ev({ExactScalar(1), sq(1, 1, 2)})) == 2);
    CHECK(rational_dimension(ev({ExactScalar(0), ExactScalar(0), ExactScalar(7)})) == 1);
    CHECK_THROWS_AS(rational_dimension(ev({ExactScalar(0), ExactScalar(0)})), zero_vector);
}

TEST_CASE("dirichlet approximation examples") {
    auto d1 = dirichlet_approx(ev({sq(1, 1, 2)}), 5);
    CHECK(d1.n == 2);
    CHECK(d1.s == IntVec{3});

    // (1/2) with N=2: n=1 already attains |1/2 - 1| = 1/2 = N^{-1}, the
    // smallest valid multiplier under the theorem's non-strict bound.
    auto d2 = dirichlet_approx(ev({ExactScalar(Rational(1, 2))}), 2);
    CHECK(d2.n == 1);
    // the exact-multiple property the bound family relies on: at n=2 the
    // error vanishes identically
    CHECK((ExactScalar(Rational(1, 2)) * Rational(2)).frac().is_zero());

    auto d3 = dirichlet_approx(ev({sq(1, 1, 2), sq(1, 1, 3)}), 16);
    CHECK(d3.n == 3);
    CHECK(d3.s == IntVec{4, 5});
}

TEST_CASE("dirichlet bound holds exactly on random vectors") {
    std::mt19937 rng(113);
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t l = 1 + iter % 3;
        ExactVec v = random_direction(rng, l);
        for (Int N : {Int(4), Int(16), Int(64)}) {
            auto d = dirichlet_approx(v, N);
            CHECK(d.n >= 1);
            CHECK(d.n <= N);
            for (std::size_t i = 0; i < l; ++i) {
                ExactScalar err = v[i] * Rational(d.n) - Rational(d.s[i]);
                ExactScalar p = Rational(N);
                for (std::size_t j = 0; j < l; ++j) p = p * err;
                CHECK((p - 1).sign() <= 0);
                CHECK((p + 1).sign() >= 0);
            }
        }
    }
}

TEST_CASE("kronecker orbit hitting") {
    // orbit of sqrt(2): first landing in [0.3, 0.4] is n = 8
    Int n1 = kronecker_hit(ev({sq(1, 1, 2)}), ev({ExactScalar(Rational(7, 20))}),
                           Rational(1, 20), 1, 0, 100);
    CHECK(n1 == 8);

    // center frac(sqrt 2) exactly: the first orbit point is a direct hit
    Int n2 = kronecker_hit(ev({sq(1, 1, 2)}), ev({sq(1, 1, 2) - 1}),
                           Rational(1, 100), 1, 0, 100);
    CHECK(n2 == 1);

    // fracs of n*sqrt(3): .732, .464, .196 — none within 1/10 of .9
    CHECK_THROWS_AS(kronecker_hit(ev({sq(1, 1, 3)}), ev({ExactScalar(Rational(9, 10))}),
                                  Rational(1, 10), 1, 0, 3),
                    budget_exhausted);

    // coset scanning: n = 3, 5, 7, ... only
    Int n3 = kronecker_hit(ev({sq(1, 1, 2)}), ev({ExactScalar(Rational(7, 20))}),
                           Rational(1, 20), 2, 1, 100);
    CHECK(n3 % 2 == 1);
    CHECK(n3 >= 1);

    // re-verification property on random targets hit by the scan
    std::mt19937 rng(127);
    std::uniform_int_distribution<int> cd(0, 9);
    for (int iter = 0; iter < 20; ++iter) {
        ExactVec v = ev({sq(1, 1, 2)});
        ExactVec c = ev({ExactScalar(Rational(cd(rng), 10))});
        Rational radius(1, 7);
        Int n = kronecker_hit(v, c, radius, 1, 0, 500);
        ExactScalar delta = (v[0] * Rational(n)).frac() - c[0];
        if (delta.sign() < 0) delta = -delta;
        bool near = (delta - radius).sign() <= 0 || (delta + radius - 1).sign() >= 0;
        CHECK(near);
    }
}

TEST_CASE("integer affine hulls") {
    // sqrt(2)*x1 - x2 = 0 pins the origin
    auto l1 = integer_affine_hull(2, {{ev({sq(1, 1, 2), ExactScalar(-1)}), ExactScalar(0)}});
    REQUIRE(!l1.empty);
    CHECK(l1.basepoint == IntVec{0, 0});
    CHECK(l1.basis.empty());

    // x1 + x2 = 1: the lattice {(1,0) + t(1,-1)}
    auto l2 = integer_affine_hull(2, {{ev({ExactScalar(1), ExactScalar(1)}), ExactScalar(1)}});
    REQUIRE(!l2.empty);
    CHECK(lattice_equal(l2, AffineLattice::of({1, 0}, {{1, -1}})));

    // x1 = 1/2: no integer points
    auto l3 = integer_affine_hull(1, {{ev({ExactScalar(1)}), ExactScalar(Rational(1, 2))}});
    CHECK(l3.empty);

    // empty system: all of Z^n
    auto l4 = integer_affine_hull(3, {});
    REQUIRE(!l4.empty);
    CHECK(l4.rank() == 3);
    CHECK(lattice_contains(l4, {7, -2, 5}));

    // every reported point satisfies the input equations exactly
    std::mt19937 rng(131);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 2 + iter % 3;
        std::vector<ExactEquation> eqs;
        std::size_t rows = 1 + iter % 2;
        // build equations satisfied by a known integer point
        IntVec x0(n);
        for (auto &x : x0) x = d(rng);
        for (std::size_t rix = 0; rix < rows; ++rix) {
            ExactVec a(n, ExactScalar(0));
            for (auto &x : a)
                x = sq(d(rng), 1, 2) + ExactScalar(d(rng));
            ExactScalar b(0);
            for (std::size_t i = 0; i < n; ++i) b = b + a[i] * Rational(x0[i]);
            eqs.push_back({a, b});
        }
        auto l = integer_affine_hull(n, eqs);
        REQUIRE(!l.empty);
        CHECK(lattice_contains(l, x0));
        auto satisfies = [&](const IntVec &p) {
            for (const auto &[a, b] : eqs) {
                ExactScalar lhs(0);
                for (std::size_t i = 0; i < n; ++i) lhs = lhs + a[i] * Rational(p[i]);
                if (!(lhs == b)) return false;
            }
            return true;
        };
        CHECK(satisfies(l.basepoint));
        for (const auto &g : l.basis) {
            IntVec p(l.basepoint);
            for (std::size_t i = 0; i < n; ++i) p[i] += g[i];
            CHECK(satisfies(p));
        }
    }
}
