#include "circfac/univar.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace circfac;
using upoly::Poly;

namespace {
Poly P(std::vector<long> c) { return Poly(c.begin(), c.end()); }

bool has_rational_root(const Poly& f)
{
    auto z = primitive_integer(f);
    Integer a0 = z.front(), an = z.back();
    if (a0 == 0) return true;
    auto divisors = [](Integer n) {
        n = abs(n);
        std::vector<Integer> d;
        for (Integer i = 1; i * i <= n; ++i)
            if (n % i == 0) {
                d.push_back(i);
                d.push_back(n / i);
            }
        return d;
    };
    for (const auto& p : divisors(a0))
        for (const auto& q : divisors(an))
            for (int sgn : {1, -1}) {
                Rational r(sgn * p, q);
                r.canonicalize();
                Rational v = 0;
                for (std::size_t i = f.size(); i-- > 0;) v = v * r + f[i];
                if (v == 0) return true;
            }
    return false;
}
}  // namespace

TEST_CASE("squarefree examples")
{
    auto s = squarefree_decompose(upoly::mul(upoly::mul(P({-1, 1}), P({-1, 1})), P({2, 1})));
    REQUIRE(s.size() == 2);
    CHECK(s[0].poly == P({2, 1}));
    CHECK(s[0].multiplicity == 1);
    CHECK(s[1].poly == P({-1, 1}));
    CHECK(s[1].multiplicity == 2);
    auto s2 = squarefree_decompose(P({2, 0, 4}));
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].poly == Poly{Rational(1, 2), 0, 1});
    auto s3 = squarefree_decompose(P({0, 0, 1}));
    REQUIRE(s3.size() == 1);
    CHECK(s3[0].poly == P({0, 1}));
    CHECK(s3[0].multiplicity == 2);
    CHECK_THROWS_AS(squarefree_decompose(Poly{}), Error);
}

TEST_CASE("factor examples")
{
    auto f = factor_rational(P({-1, 0, 0, 0, 1}));
    CHECK(f.content == 1);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0].poly == P({-1, 1}));
    CHECK(f.factors[1].poly == P({1, 1}));
    CHECK(f.factors[2].poly == P({1, 0, 1}));
    auto g = factor_rational(P({1, 0, 1}));
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0].poly == P({1, 0, 1}));
    auto h = factor_rational(P({-6, 0, 6}));
    CHECK(h.content == 6);
    REQUIRE(h.factors.size() == 2);
    CHECK(h.factors[0].poly == P({-1, 1}));
    CHECK(h.factors[1].poly == P({1, 1}));
    CHECK(format_factorization(h) == "6 * (y - 1) * (y + 1)");
}

TEST_CASE("harder factorizations")
{
    // x^4 + 1 is irreducible over Q but splits modulo every prime
    auto a = factor_rational(P({1, 0, 0, 0, 1}));
    CHECK(a.factors.size() == 1);
    // Swinnerton-Dyer polynomial for sqrt2, sqrt3: x^4 - 10x^2 + 1
    auto b = factor_rational(P({1, 0, -10, 0, 1}));
    CHECK(b.factors.size() == 1);
    // (x^2 - 2)(x^2 - 3)(x^3 - x - 1)^2 with a non-monic content
    Poly p = upoly::mul(upoly::mul(P({-2, 0, 1}), P({-3, 0, 1})), P({-1, -1, 0, 1}));
    p = upoly::mul(p, P({-1, -1, 0, 1}));
    for (auto& c : p) c *= Rational(3, 7);
    auto c = factor_rational(p);
    CHECK(c.product() == p);
    CHECK(c.factors.size() == 3);
    // non-monic integer factors: (2x+1)(3x^2-5)
    Poly q = upoly::mul(P({1, 2}), P({-5, 0, 3}));
    auto d = factor_rational(q);
    REQUIRE(d.factors.size() == 2);
    CHECK(d.factors[0].poly == Poly{Rational(1, 2), 1});
    CHECK(d.product() == q);
}

TEST_CASE("random planted products")
{
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int t = 0; t < 150; ++t) {
        int c0 = coef(rng);
        Poly p = P({c0 == 0 ? 1 : c0});
        int nf = 1 + t % 3;
        for (int i = 0; i < nf; ++i) {
            int deg = 1 + (t + i) % 4;
            Poly g;
            for (int j = 0; j < deg; ++j) g.push_back(coef(rng));
            g.push_back(1 + (t % 2));
            int e = 1 + (t + i) % 2;
            for (int k = 0; k < e; ++k) p = upoly::mul(p, g);
        }
        upoly::trim(p);
        auto f = factor_rational(p);
        CHECK(f.product() == p);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            const auto& fi = f.factors[i].poly;
            CHECK(fi.back() == 1);
            if (upoly::degree(fi) <= 3 && upoly::degree(fi) >= 2) CHECK(!has_rational_root(fi));
            for (std::size_t j = i + 1; j < f.factors.size(); ++j) {
                Poly s, tt;
                CHECK(upoly::degree(upoly::xgcd(fi, f.factors[j].poly, s, tt)) == 0);
            }
        }
    }
}

TEST_CASE("extensions")
{
    auto k1 = make_extension(P({-3, 1}));
    CHECK(k1->degree() == 1);
    CHECK(Scalar::generator(k1) == Scalar::embed(k1, 3));
    auto k2 = make_extension(P({-2, 0, 1}));
    CHECK(k2->degree() == 2);
    CHECK(Scalar::generator(k2).pow(2) == Scalar::embed(k2, 2));
    auto k3 = make_extension(P({1, 0, 1}));
    CHECK(Scalar::generator(k3).pow(2) == Scalar::embed(k3, -1));
    CHECK_THROWS_AS(make_extension(P({1, 2})), Error);
}

TEST_CASE("dense front end")
{
    DensePoly y = DensePoly::variable(2, 1);
    DensePoly one = DensePoly::constant(2, Scalar(1));
    auto f = factor_rational((y - one) * (y - one) * (y + one), 1);
    REQUIRE(f.factors.size() == 2);
    CHECK(to_dense(f.factors[0].poly, 2, 1) == y - one);
    CHECK(f.factors[0].multiplicity == 2);
}
