#include <catch2/catch_amalgamated.hpp>

#include "k3pencil/unipoly.hpp"

#include <random>

using namespace k3pencil;

namespace {

UniPoly P(std::initializer_list<long> lowestFirst) {
    std::vector<Rational> c;
    for (long v : lowestFirst) c.push_back(make_rational(v));
    return UniPoly(std::move(c));
}

std::mt19937_64 rng(0xA5A5F00Dull);

Rational rnd_rat(int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    return make_rational(d(rng));
}

UniPoly rnd_monic(int deg) {
    std::vector<Rational> c(deg + 1);
    for (int i = 0; i < deg; ++i) c[i] = rnd_rat();
    c[deg] = make_rational(1);
    return UniPoly(std::move(c));
}

UniPoly rnd_squarefree_monic(int deg) {
    while (true) {
        UniPoly f = rnd_monic(deg);
        if (poly_gcd(f, derivative(f)).degree() == 0) return f;
    }
}

}  // namespace

TEST_CASE("poly gcd basics") {
    CHECK(poly_gcd(P({-1, 0, 1}), P({-1, 1})) == P({-1, 1}));  // gcd(t^2-1, t-1) = t-1
    CHECK(poly_gcd(P({1, 0, 1}), P({-3, 1})) == P({1}));       // coprime
    CHECK(poly_gcd(UniPoly::zero(), UniPoly::zero()).is_zero());
    CHECK(poly_gcd(P({0, 2}), UniPoly::zero()) == P({0, 1}));  // monic output
}

TEST_CASE("poly gcd of planted common factors") {
    for (int iter = 0; iter < 40; ++iter) {
        UniPoly f = rnd_squarefree_monic(1 + iter % 4);
        UniPoly g = rnd_squarefree_monic(1 + (iter / 2) % 4);
        UniPoly h = rnd_squarefree_monic(1 + (iter / 3) % 4);
        if (poly_gcd(f, g).degree() > 0 || poly_gcd(f, h).degree() > 0 ||
            poly_gcd(g, h).degree() > 0)
            continue;
        CHECK(poly_gcd(f * g, f * h) == monic(f));
    }
}

TEST_CASE("squarefree decomposition") {
    // t^2 (t-1)
    UniPoly f = P({0, 0, 1}) * P({-1, 1});
    auto d = squarefree_decompose(f);
    REQUIRE(d.parts.size() == 2);
    CHECK(d.parts[0].second == 1);
    CHECK(d.parts[0].first == P({-1, 1}));
    CHECK(d.parts[1].second == 2);
    CHECK(d.parts[1].first == P({0, 1}));
    CHECK(d.unit == 1);
    CHECK(d.reconstruct() == f);

    // squarefree degree-6 input decomposes as itself
    UniPoly g = rnd_squarefree_monic(6);
    auto dg = squarefree_decompose(g);
    REQUIRE(dg.parts.size() == 1);
    CHECK(dg.parts[0].second == 1);
    CHECK(dg.reconstruct() == g);

    CHECK_THROWS_AS(squarefree_decompose(UniPoly::zero()), Error);
}

TEST_CASE("squarefree reconstruction and coprimality on random inputs") {
    for (int iter = 0; iter < 30; ++iter) {
        UniPoly f = rnd_monic(1 + iter % 3);
        UniPoly g = rnd_squarefree_monic(1 + (iter / 2) % 3);
        UniPoly prod = f * f * g * make_rational((iter % 5) + 1, 3);
        auto d = squarefree_decompose(prod);
        CHECK(d.reconstruct() == prod);
        for (size_t i = 0; i < d.parts.size(); ++i) {
            CHECK(poly_gcd(d.parts[i].first, derivative(d.parts[i].first)).degree() == 0);
            for (size_t j = i + 1; j < d.parts.size(); ++j)
                CHECK(poly_gcd(d.parts[i].first, d.parts[j].first).degree() == 0);
            if (i) CHECK(d.parts[i].second > d.parts[i - 1].second);
        }
    }
}

TEST_CASE("resultant convention and basics") {
    CHECK(resultant(P({-2, 1}), P({-4, 0, 1})) == 0);  // shared root 2
    // pinned 2x2 Sylvester determinant: det [[1,0],[1,-1]] = -1
    CHECK(resultant(P({0, 1}), P({-1, 1})) == make_rational(-1));
    CHECK(resultant_sylvester(P({0, 1}), P({-1, 1})) == make_rational(-1));
    CHECK_THROWS_AS(resultant(UniPoly::zero(), P({1, 1})), Error);
}

TEST_CASE("resultant: PRS route agrees with Sylvester determinant") {
    for (int iter = 0; iter < 60; ++iter) {
        UniPoly a = rnd_monic(1 + iter % 5);
        UniPoly b = rnd_monic(1 + (iter / 2) % 4);
        a.c[0] += make_rational(1, 2);  // exercise non-integer coefficients
        CHECK(resultant(a, b) == resultant_sylvester(a, b));
    }
}

TEST_CASE("resultant(f, f') equals +/- discriminant * leading for cubics") {
    for (int iter = 0; iter < 100; ++iter) {
        UniPoly f = rnd_monic(3);
        f.c[3] = make_rational((iter % 4) + 1);  // non-monic leading
        f.trim();
        if (derivative(f).is_zero()) continue;
        // n = 3: disc = (-1)^3 Res(f,f')/lc, so Res(f,f') = -disc * lc
        CHECK(resultant(f, derivative(f)) == Rational(-discriminant(f) * f.lead()));
    }
}

TEST_CASE("resultant vanishes exactly when a common factor exists") {
    for (int iter = 0; iter < 50; ++iter) {
        UniPoly f = rnd_squarefree_monic(1 + iter % 3);
        UniPoly g = rnd_monic(1 + (iter / 2) % 3);
        UniPoly h = rnd_monic(1 + (iter / 3) % 3);
        bool planted = iter % 2 == 0;
        UniPoly a = planted ? f * g : g;
        UniPoly b = planted ? f * h : h;
        if (a.is_zero() || b.is_zero()) continue;
        bool share = poly_gcd(a, b).degree() >= 1;
        CHECK((resultant(a, b) == 0) == share);
    }
}

TEST_CASE("discriminant closed forms") {
    CHECK(discriminant(P({1, 0, 1})) == make_rational(-4));   // t^2 + 1
    CHECK(discriminant(P({1, -2, 1})) == 0);                  // (t-1)^2
    for (int iter = 0; iter < 50; ++iter) {
        Rational A = rnd_rat(), B = rnd_rat();
        UniPoly f = UniPoly({B, A, make_rational(0), make_rational(1)});
        Rational expect = make_rational(-4) * A * A * A + make_rational(-27) * B * B;
        CHECK(discriminant(f) == expect);
    }
    CHECK_THROWS_AS(discriminant(P({5})), Error);
}

TEST_CASE("rational roots") {
    auto r1 = rational_roots(P({-1, -1, 2}));  // 2t^2 - t - 1 = (2t+1)(t-1)
    REQUIRE(r1.size() == 2);
    CHECK(r1[0] == make_rational(-1, 2));
    CHECK(r1[1] == make_rational(1));
    CHECK(rational_roots(P({1, 0, 1})).empty());
    CHECK(rational_roots(P({1, 1, 1, 2})).empty());  // 2t^3 + t^2 + t + 1
    auto r2 = rational_roots(P({0, 0, -4, 4}));      // 4t^2(t-1)
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == 0);
    CHECK(r2[1] == 1);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == P({-1, 1}));
    CHECK(cyclotomic(4) == P({1, 0, 1}));
    // n = 12 oracle: divide t^12 - 1 by the cyclotomics at proper divisors
    std::vector<Rational> c13(13, make_rational(0));
    c13[0] = make_rational(-1);
    c13[12] = make_rational(1);
    UniPoly t12(std::move(c13));
    UniPoly expected = t12;
    for (unsigned d : {1u, 2u, 3u, 4u, 6u}) expected = exact_div(expected, cyclotomic(d));
    CHECK(expected == P({1, 0, -1, 0, 1}));
    CHECK(cyclotomic(12) == expected);
    CHECK_THROWS_AS(cyclotomic(0), Error);
}

TEST_CASE("newton identities: (T-19)^2 and round trips") {
    UniPoly f = P({-19, 1}) * P({-19, 1});
    auto p = power_sums_from_poly(f, 3);
    CHECK(p[0] == make_rational(38));
    CHECK(p[1] == make_rational(722));
    CHECK(p[2] == make_rational(13718));

    for (int iter = 0; iter < 40; ++iter) {
        int d = 1 + iter % 8;
        UniPoly g = rnd_monic(d);
        auto sums = power_sums_from_poly(g, d);
        CHECK(poly_from_power_sums(sums, d) == g);
    }
    CHECK_THROWS_AS(power_sums_from_poly(P({1, 2}), 3), Error);  // non-monic
}
