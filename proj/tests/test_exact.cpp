#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modflow/exact.hpp"

using namespace modflow;

namespace {

ExactReal R(long n, long d = 1) { return ExactReal::from_rational(n, d); }
ExactReal S(long p, long q, long d, long r) { return ExactReal::make_surd(p, q, d, r); }

std::mt19937_64 rng(20260808u);

ExactReal random_rational(long max_den = 60) {
    std::uniform_int_distribution<long> den(1, max_den);
    long d = den(rng);
    std::uniform_int_distribution<long> num(-4 * max_den, 4 * max_den);
    return R(num(rng), d);
}

ExactReal random_surd() {
    static const long squarefree[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23};
    std::uniform_int_distribution<size_t> di(0, std::size(squarefree) - 1);
    std::uniform_int_distribution<long> small(-12, 12);
    std::uniform_int_distribution<long> pos(1, 12);
    long q = small(rng);
    if (q == 0) q = 1;
    return S(small(rng), q, squarefree[di(rng)], pos(rng));
}

UnimodularMap random_psl2z(int words = 8) {
    UnimodularMap m;
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<long> shift(-3, 3);
    for (int i = 0; i < words; ++i) {
        if (coin(rng))
            m = m * UnimodularMap(0, -1, 1, 0);
        else
            m = m * UnimodularMap::translation(shift(rng));
    }
    return m;
}

}  // namespace

TEST_CASE("normalization produces canonical forms") {
    CHECK(S(2, 2, 4, 2) == R(3));           // sqrt(4) collapses
    CHECK(R(2, 4) == R(1, 2));              // gcd reduction
    CHECK(S(2, 2, 2, 4) == S(1, 1, 2, 2));  // content division
    CHECK(S(0, 1, 8, 1) == S(0, 2, 2, 1));  // square part folds into q
    CHECK(S(1, 1, 2, -2) == S(-1, -1, 2, 2));
    CHECK_THROWS_AS(ExactReal::from_rational(1, 0), mf_error);
    CHECK_THROWS_AS(S(0, 1, -2, 1), mf_error);  // complex surds rejected
}

TEST_CASE("conjugation") {
    CHECK(conjugate(S(1, 1, 5, 2)) == S(1, -1, 5, 2));
    CHECK(conjugate(R(3, 2)) == R(3, 2));
    CHECK(conjugate(S(0, 1, 2, 1)) == -ExactReal::sqrt_int(2));
    CHECK_THROWS_AS(conjugate(ExactReal::inf()), mf_error);
}

TEST_CASE("moebius action") {
    UnimodularMap T = UnimodularMap::translation(1);
    CHECK(T(ExactReal::sqrt_int(2)) == S(1, 1, 2, 1));

    // S(z) = (2z-3)/(z-1) sends infinity to 2
    UnimodularMap Smap(2, -3, 1, -1);
    CHECK(Smap(ExactReal::inf()) == R(2));

    // T^-2 S T = -1/z, so it sends 1 to -1
    UnimodularMap m = UnimodularMap::translation(-2) * Smap * UnimodularMap::translation(1);
    CHECK(m(R(1)) == R(-1));
    CHECK(m(ExactReal::sqrt_int(2)) == -ExactReal::sqrt_int(2).reciprocal());
}

TEST_CASE("comparison") {
    CHECK(ExactReal::sqrt_int(2) < R(3, 2));
    CHECK(S(1, 1, 5, 2) > R(3, 2));
    CHECK(ExactReal::sqrt_int(2) == ExactReal::sqrt_int(2));
    CHECK(ExactReal::inf() > R(1000000));
    CHECK(ExactReal::inf() == ExactReal::inf());
    // cross-field comparisons
    CHECK(ExactReal::sqrt_int(2) < ExactReal::sqrt_int(3));
    CHECK(S(1, 1, 2, 1) > S(0, 1, 5, 1));          // 1+sqrt2 ~ 2.414 > sqrt5 ~ 2.236
    CHECK(S(1, 2, 3, 2) > S(-1, 3, 2, 2));         // (1+2sqrt3)/2 ~ 2.23 > (-1+3sqrt2)/2 ~ 1.62
    CHECK(S(0, 5, 2, 1) < S(0, 1, 51, 1));         // 5 sqrt2 ~ 7.071 < sqrt51 ~ 7.141
    CHECK(S(0, 5, 2, 1) > S(0, 7, 1 * 2, 7));      // 5 sqrt2 > sqrt2
}

TEST_CASE("discriminants") {
    CHECK(discriminant(ExactReal::sqrt_int(2)) == 8);
    CHECK(discriminant(S(1, 1, 5, 2)) == 5);
    CHECK(discriminant(S(3, 1, 3, 3)) == 12);
    CHECK_THROWS_AS(discriminant(R(1, 2)), mf_error);
}

TEST_CASE("floor and to_float") {
    CHECK(ExactReal::sqrt_int(2).floor() == 1);
    CHECK((-ExactReal::sqrt_int(2)).floor() == -2);
    CHECK(S(1, 1, 5, 2).floor() == 1);
    CHECK(R(-7, 2).floor() == -4);
    CHECK(ExactReal::sqrt_int(2).to_double() == doctest::Approx(1.4142135623730951).epsilon(1e-15));
    CHECK(R(4, 3).to_double() == doctest::Approx(1.3333333333333333).epsilon(1e-15));
    CHECK((R(1) - ExactReal::sqrt_int(2)).to_double() ==
          doctest::Approx(-0.41421356237309515).epsilon(1e-15));
    CHECK(to_float(ExactReal::inf(), 64).is_inf());
    CHECK_THROWS_AS(to_float(R(1), 10), mf_error);
}

TEST_CASE("parser and emitter round-trip") {
    const char* cases[] = {"4/3", "sqrt(2)", "(1+sqrt(5))/2", "-2/3", "1-sqrt(2)", "inf",
                           "(2+sqrt(2))/2", "3*sqrt(7)/5", "-sqrt(11)", "0", "42"};
    for (const char* c : cases) {
        ExactReal v = parse_exact(c);
        ExactReal again = parse_exact(v.str());
        CHECK(v == again);
        CHECK(v.str() == again.str());
    }
    CHECK(parse_exact("(1+1*sqrt(5))/2") == S(1, 1, 5, 2));
    CHECK(parse_exact("sqrt(9)") == R(3));
    CHECK(parse_exact("sqrt(4/9)") == R(2, 3));
    CHECK_THROWS_AS(parse_exact("1+"), mf_error);
    CHECK_THROWS_AS(parse_exact("sqrt(2"), mf_error);
    CHECK_THROWS_AS(parse_exact("1/0"), mf_error);
}

TEST_CASE("parse/emit fuzz round trip") {
    for (int i = 0; i < 2000; ++i) {
        ExactReal x = (i % 3 == 0) ? random_rational(500) : random_surd();
        ExactReal back = parse_exact(x.str());
        CHECK(back == x);
        CHECK(back.str() == x.str());
    }
}

TEST_CASE("exact square roots inside a field") {
    // (3+2sqrt2) = (1+sqrt2)^2
    auto r = exact_sqrt(S(3, 2, 2, 1));
    REQUIRE(r.has_value());
    CHECK(*r == S(1, 1, 2, 1));
    CHECK(!exact_sqrt(ExactReal::sqrt_int(2)).has_value());
    CHECK(*exact_sqrt(R(2, 9)) == S(0, 1, 2, 3));
}

TEST_CASE("composition property on random inputs") {
    for (int i = 0; i < 1000; ++i) {
        UnimodularMap m1 = random_psl2z(5), m2 = random_psl2z(5);
        ExactReal x = (i % 2 == 0) ? random_rational() : random_surd();
        CHECK((m1 * m2)(x) == m1(m2(x)));
    }
}

TEST_CASE("conjugation commutes with integer moebius maps") {
    for (int i = 0; i < 500; ++i) {
        UnimodularMap m = random_psl2z(5);
        ExactReal x = random_surd();
        ExactReal lhs = m(x);
        ExactReal rhs = m(conjugate(x));
        if (lhs.is_infinity() || rhs.is_infinity()) continue;
        CHECK(conjugate(lhs) == rhs);
    }
}

TEST_CASE("discriminant is a PSL(2,Z) invariant") {
    int tested = 0;
    while (tested < 1000) {
        UnimodularMap g = random_psl2z(6);
        if (g.det() != 1) continue;
        ExactReal x = random_surd();
        ExactReal y = g(x);
        if (!y.is_surd()) continue;
        CHECK(discriminant(y) == discriminant(x));
        ++tested;
    }
}

TEST_CASE("compare agrees with high-precision floats") {
    for (int i = 0; i < 500; ++i) {
        ExactReal x = (i % 3 == 0) ? random_rational() : random_surd();
        ExactReal y = (i % 2 == 0) ? random_surd() : random_rational();
        BigFloat fx = to_float(x, 128), fy = to_float(y, 128);
        BigFloat gap = (fx - fy).abs();
        if (!(BigFloat::pow2(-100, 128) < gap)) continue;
        int ce = x.compare(y);
        int cf = fx.compare(fy);
        CHECK(ce == cf);
    }
}

TEST_CASE("projective matrix canon") {
    UnimodularMap m(-2, -4, 2, -2);
    CHECK(m == UnimodularMap(1, 2, -1, 1));
    CHECK(m.det() == 3);
    CHECK_THROWS_AS(UnimodularMap(1, 2, 2, 4), mf_error);
    UnimodularMap g(0, -1, 1, 0);
    CHECK(g.inverse() * g == UnimodularMap::identity());
}
