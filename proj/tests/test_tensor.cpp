#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "qorbit/leg_matrix.hpp"

using namespace qorbit;

namespace {

using Dense = std::vector<std::vector<RatFunc>>;

Dense to_dense(const LegMatrix& m) {
    Dense d(m.size(), std::vector<RatFunc>(m.size()));
    for (int r = 0; r < m.size(); ++r)
        for (const auto& [c, v] : m.row(r)) d[r][c] = v;
    return d;
}

// Schoolbook reference product, written independently of the library kernel.
Dense dense_mul(const Dense& a, const Dense& b) {
    const int n = static_cast<int>(a.size());
    Dense c(n, std::vector<RatFunc>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

bool dense_eq(const Dense& a, const LegMatrix& m) {
    for (int r = 0; r < m.size(); ++r)
        for (int c = 0; c < m.size(); ++c)
            if (!(a[r][c] == m.at(r, c))) return false;
    return true;
}

RatFunc random_entry(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-3, 3), exp(-2, 2);
    LaurentPoly p;
    for (int i = 0; i < 2; ++i) p += LaurentPoly::term(exp(rng), Rat(coef(rng)));
    return RatFunc(p, LaurentPoly(Rat(1)));
}

LegMatrix random_matrix(std::vector<int> dims, double fill, std::mt19937_64& rng) {
    LegMatrix m(std::move(dims));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int r = 0; r < m.size(); ++r)
        for (int c = 0; c < m.size(); ++c)
            if (u(rng) < fill) m.set(r, c, random_entry(rng));
    return m;
}

}  // namespace

TEST_CASE("mixed-radix split/join roundtrip") {
    LegMatrix m(std::vector<int>{2, 3, 4});
    REQUIRE(m.size() == 24);
    for (int flat = 0; flat < 24; ++flat) {
        auto d = m.split(flat);
        REQUIRE(d.size() == 3);
        CHECK(d[0] == flat / 12);
        CHECK(d[1] == (flat / 4) % 3);
        CHECK(d[2] == flat % 4);
        CHECK(m.join(d) == flat);
    }
}

TEST_CASE("product matches dense oracle, parallel and serial kernels agree") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 6; ++trial) {
        auto a = random_matrix({2, 3}, 0.4, rng);
        auto b = random_matrix({2, 3}, 0.4, rng);
        LegMatrix p = a * b;
        LegMatrix ps = LegMatrix::multiply_serial(a, b);
        CHECK(p == ps);
        CHECK(dense_eq(dense_mul(to_dense(a), to_dense(b)), p));
    }
}

TEST_CASE("ring laws: identity, associativity, distributivity") {
    std::mt19937_64 rng(7);
    auto a = random_matrix({3, 2}, 0.35, rng);
    auto b = random_matrix({3, 2}, 0.35, rng);
    auto c = random_matrix({3, 2}, 0.35, rng);
    auto id = LegMatrix::identity({3, 2});
    CHECK(a * id == a);
    CHECK(id * a == a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == LegMatrix(std::vector<int>{3, 2}));
    CHECK((a + b) - b == a);
    CHECK(-(-a) == a);
}

TEST_CASE("transpose and q-inversion are involutive antihomomorphism / homomorphism") {
    std::mt19937_64 rng(99);
    auto a = random_matrix({2, 2}, 0.5, rng);
    auto b = random_matrix({2, 2}, 0.5, rng);
    CHECK(a.transpose().transpose() == a);
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK(a.subst_inv().subst_inv() == a);
    CHECK((a * b).subst_inv() == a.subst_inv() * b.subst_inv());
    CHECK((a + b).subst_inv() == a.subst_inv() + b.subst_inv());
}

TEST_CASE("trace is linear and cyclic; partial traces compose to the full trace") {
    std::mt19937_64 rng(123);
    auto a = random_matrix({2, 3}, 0.5, rng);
    auto b = random_matrix({2, 3}, 0.5, rng);
    CHECK((a * b).trace() == (b * a).trace());
    CHECK((a + b).trace() == a.trace() + b.trace());
    LegMatrix t2 = a.partial_trace(2);
    REQUIRE(t2.dims() == std::vector<int>{2});
    RatFunc full;
    for (int r = 0; r < t2.size(); ++r) full += t2.at(r, r);
    CHECK(full == a.trace());
    LegMatrix t1 = a.partial_trace(1);
    REQUIRE(t1.dims() == std::vector<int>{3});
    RatFunc full2;
    for (int r = 0; r < t1.size(); ++r) full2 += t1.at(r, r);
    CHECK(full2 == a.trace());
}

TEST_CASE("partial trace against a handwritten sum") {
    std::mt19937_64 rng(5);
    auto a = random_matrix({3, 2}, 0.6, rng);
    LegMatrix tr1 = a.partial_trace(1);
    for (int i2 = 0; i2 < 2; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
            RatFunc want;
            for (int s = 0; s < 3; ++s) want += a.at(s * 2 + i2, s * 2 + j2);
            CHECK(tr1.at(i2, j2) == want);
        }
}

TEST_CASE("partial transpose swaps one leg and squares to the identity") {
    std::mt19937_64 rng(11);
    auto a = random_matrix({2, 3}, 0.5, rng);
    CHECK(a.partial_transpose(1).partial_transpose(1) == a);
    CHECK(a.partial_transpose(2).partial_transpose(2) == a);
    CHECK(a.partial_transpose(1).partial_transpose(2) == a.transpose());
    LegMatrix pt = a.partial_transpose(2);
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 3; ++i2)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int j2 = 0; j2 < 3; ++j2)
                    CHECK(pt.at(i1 * 3 + i2, j1 * 3 + j2) == a.at(i1 * 3 + j2, j1 * 3 + i2));
}

TEST_CASE("embed places legs correctly and commutes with products") {
    std::mt19937_64 rng(42);
    auto a = random_matrix({2, 2}, 0.5, rng);
    std::vector<int> target{2, 3, 2};

    LegMatrix e = a.embed(target, {3, 1});
    for (int r = 0; r < e.size(); ++r) {
        auto rd = e.split(r);
        for (int c = 0; c < e.size(); ++c) {
            auto cd = e.split(c);
            RatFunc want;
            if (rd[1] == cd[1]) want = a.at(rd[2] * 2 + rd[0], cd[2] * 2 + cd[0]);
            CHECK(e.at(r, c) == want);
        }
    }

    // Embedding is multiplicative, and disjoint embeddings commute.
    auto b = random_matrix({2, 2}, 0.5, rng);
    CHECK((a * b).embed(target, {3, 1}) == a.embed(target, {3, 1}) * b.embed(target, {3, 1}));
    auto c1 = random_matrix({3}, 0.7, rng);
    CHECK(a.embed(target, {3, 1}) * c1.embed(target, {2}) ==
          c1.embed(target, {2}) * a.embed(target, {3, 1}));

    CHECK(LegMatrix::identity({2, 2}).embed(target, {1, 3}) == LegMatrix::identity(target));
    CHECK_THROWS_AS(a.embed(target, {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(a.embed(target, {1, 2}), InvalidArgument);
}

TEST_CASE("inverse: permuted block matrices invert exactly") {
    std::mt19937_64 rng(314);
    // Invertible by construction: unit lower triangular times diagonal monomials,
    // then conjugated by a permutation so blocks are scattered.
    const int n = 12;
    LegMatrix a(std::vector<int>{n});
    for (int i = 0; i < n; ++i) {
        a.set(i, i, RatFunc::t_pow((i % 5) - 2));
        for (int j = 0; j < i; ++j)
            if ((i + 2 * j) % 3 == 0) a.set(i, j, random_entry(rng));
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    LegMatrix p(std::vector<int>{n});
    for (int i = 0; i < n; ++i) p.set(perm[i], i, RatFunc(1));
    LegMatrix m = p * a * p.transpose();

    LegMatrix mi = m.inverse();
    CHECK(m * mi == LegMatrix::identity({n}));
    CHECK(mi * m == LegMatrix::identity({n}));

    CHECK(p.inverse() == p.transpose());
}

TEST_CASE("inverse failure reports the fixed phrase") {
    LegMatrix z(std::vector<int>{3});
    z.set(0, 1, RatFunc(1));
    z.set(1, 0, RatFunc(1));  // row 2 is zero
    try {
        (void)z.inverse();
        FAIL("expected a throw");
    } catch (const NotInvertible& e) {
        CHECK(std::string(e.what()).rfind(NotInvertible::kPhrase, 0) == 0);
    }
}

TEST_CASE("scaled multiplies every entry") {
    std::mt19937_64 rng(8);
    auto a = random_matrix({2, 2}, 0.5, rng);
    RatFunc s = RatFunc::q_pow2(3) + RatFunc(2);
    LegMatrix sa = a.scaled(s);
    for (int r = 0; r < a.size(); ++r)
        for (int c = 0; c < a.size(); ++c) CHECK(sa.at(r, c) == s * a.at(r, c));
    CHECK(a.scaled(RatFunc()).is_zero());
}
