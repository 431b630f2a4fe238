#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modflow/cf.hpp"

using namespace modflow;

namespace {

ExactReal R(long n, long d = 1) { return ExactReal::from_rational(n, d); }

GeneralCFWord W(std::initializer_list<std::pair<long, int>> ts) {
    GeneralCFWord w;
    for (auto [q, s] : ts) w.terms.push_back(CFTerm{mpz_class(q), s});
    return w;
}

std::vector<CFTerm> terms(std::initializer_list<std::pair<long, int>> ts) {
    std::vector<CFTerm> v;
    for (auto [q, s] : ts) v.push_back(CFTerm{mpz_class(q), s});
    return v;
}

const RootInterval lehner_range{ExactReal::from_int(1), ExactReal::from_int(2)};

}  // namespace

TEST_CASE("digit sequence canonical form") {
    DigitSequence<RcfDigit> s({RcfDigit{2}}, {RcfDigit{1}, RcfDigit{2}, RcfDigit{1}, RcfDigit{2}});
    CHECK(s.period.size() == 2);     // power reduced
    CHECK(s.preperiod.empty());      // tail absorbed by rotation
    CHECK(s.period[0].n == 2);
    CHECK(s.period[1].n == 1);

    DigitSequence<RcfDigit> t({}, {RcfDigit{3}, RcfDigit{3}, RcfDigit{3}});
    CHECK(t.period.size() == 1);
    auto pre = t.prefix(4);
    CHECK(pre.size() == 4);
    CHECK(pre[3].n == 3);
}

TEST_CASE("rcf expansion of classical values") {
    auto e = rcf_expand(ExactReal::sqrt_int(2));
    CHECK(e.head == 1);
    CHECK(e.digits.preperiod.empty());
    REQUIRE(e.digits.period.size() == 1);
    CHECK(e.digits.period[0].n == 2);

    auto phi = rcf_expand(ExactReal::make_surd(1, 1, 5, 2));
    CHECK(phi.head == 1);
    REQUIRE(phi.digits.period.size() == 1);
    CHECK(phi.digits.period[0].n == 1);

    auto r = rcf_expand(R(4, 3));
    CHECK(r.head == 1);
    CHECK(r.digits.finite());
    REQUIRE(r.digits.preperiod.size() == 1);
    CHECK(r.digits.preperiod[0].n == 3);

    auto n = rcf_expand(R(7));
    CHECK(n.head == 7);
    CHECK(n.digits.finite());
    CHECK(n.digits.preperiod.empty());
}

TEST_CASE("word evaluation") {
    CHECK(evaluate_word(W({{2, -1}, {1, +1}}), R(1)) == R(3, 2));
    CHECK(evaluate_word(W({{1, +1}, {1, +1}}), R(1)) == R(3, 2));
    CHECK(evaluate_word(W({{2, -1}}), std::nullopt) == R(2));
    CHECK(evaluate_word(W({{2, -1}, {2, -1}, {1, +1}}), R(1)) == R(4, 3));
    // infinity tail: the trailing fraction vanishes
    CHECK(evaluate_word(W({{3, +1}}), ExactReal::inf()) == R(3));
    CHECK_THROWS_AS(evaluate_word(W({{1, +1}, {0, +1}}), std::nullopt), mf_error);
}

TEST_CASE("periodic word values") {
    CHECK(value_of_periodic_word({}, terms({{1, +1}}), lehner_range) ==
          ExactReal::make_surd(1, 1, 5, 2));
    CHECK(value_of_periodic_word({}, terms({{2, -1}, {1, +1}}), lehner_range) ==
          ExactReal::sqrt_int(2));
    CHECK(value_of_periodic_word({}, terms({{2, -1}}), lehner_range) == R(1));
    CHECK_THROWS_AS(value_of_periodic_word({}, {}, lehner_range), mf_error);
    CHECK_THROWS_AS(
        value_of_periodic_word({}, terms({{5, +1}}), RootInterval{R(1), R(2)}), mf_error);
}

TEST_CASE("round trip through rcf for rationals and quadratic families") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> den(2, 400), num_off(1, 399);
    for (int i = 0; i < 1000; ++i) {
        long d = den(rng);
        long n = num_off(rng) % d;
        if (n == 0) n = 1;
        ExactReal x = R(d + n, d);  // in (1, 2)
        auto e = rcf_expand(x);
        CHECK(rcf_value(e.head, e.digits) == x);
    }
    for (long d = 2; d <= 50; ++d) {
        if (mpz_perfect_square_p(mpz_class(d).get_mpz_t())) continue;
        ExactReal rt = ExactReal::sqrt_int(d);
        auto e = rcf_expand(rt);
        CHECK(rcf_value(e.head, e.digits) == rt);
        ExactReal mixed = ExactReal::make_surd(1, 1, d, 2);
        auto m = rcf_expand(mixed);
        CHECK(rcf_value(m.head, m.digits) == mixed);
    }
}

TEST_CASE("rcf canonicity: never ends in digit 1, and the two forms agree") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> den(2, 300);
    for (int i = 0; i < 500; ++i) {
        long d = den(rng), n = 1 + (long)(rng() % (4 * d));
        auto e = rcf_expand(R(n, d));
        if (!e.digits.preperiod.empty()) CHECK(e.digits.preperiod.back().n >= 2);
    }
    // [...,n] equals [..., n-1, 1] under the evaluator
    CHECK(evaluate_word(W({{1, +1}, {3, +1}}), std::nullopt) ==
          evaluate_word(W({{1, +1}, {2, +1}, {1, +1}}), std::nullopt));
}
