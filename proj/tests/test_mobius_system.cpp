#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modflow/lehner.hpp"
#include "modflow/mobius_system.hpp"

using namespace modflow;

namespace {

ExactReal R(long n, long d = 1) { return ExactReal::from_rational(n, d); }

EndIval iv(long ln, long ld, long hn, long hd, bool lc, bool hc) {
    return EndIval{R(ln, ld), R(hn, hd), lc, hc};
}

}  // namespace

TEST_CASE("the built-in systems verify") {
    CHECK(verify_system(farey_system()).ok);
    CHECK(verify_system(lehner_system()).ok);
    CHECK(verify_system(fstar_system()).ok);
}

TEST_CASE("corrupted mutants are rejected with defects") {
    // overlap
    MobiusSystem overlap = farey_system();
    overlap.cells[0].iv.hi = R(1, 10);
    auto r1 = verify_system(overlap);
    CHECK_FALSE(r1.ok);

    // gap
    MobiusSystem gap = farey_system();
    gap.cells[1].iv.lo = R(1, 10);
    auto r2 = verify_system(gap);
    CHECK_FALSE(r2.ok);

    // singular matrix
    MobiusSystem sing = lehner_system();
    sing.cells[0].a = 0;
    sing.cells[0].b = 0;
    auto r3 = verify_system(sing);
    CHECK_FALSE(r3.ok);

    // non-surjective branch
    MobiusSystem bad = lehner_system();
    bad.cells[1].a = 0;
    bad.cells[1].b = 1;
    bad.cells[1].c = 1;
    bad.cells[1].d = 0;  // 1/x maps [3/2,2) to (1/2,2/3]
    auto r4 = verify_system(bad);
    CHECK_FALSE(r4.ok);

    // reversed interval bounds
    MobiusSystem rev = lehner_system();
    std::swap(rev.cells[0].iv.lo, rev.cells[0].iv.hi);
    auto r5 = verify_system(rev);
    CHECK_FALSE(r5.ok);

    for (const auto& r : {r1, r2, r3, r4, r5}) CHECK_FALSE(r.defects.empty());
}

TEST_CASE("natural dual of the Farey system is the F* system") {
    MobiusSystem farey = farey_system();
    std::vector<EndIval> cells{iv(1, 2, 2, 3, false, true), iv(2, 3, 1, 1, false, true)};
    MobiusSystem dual = natural_dual(farey, EndIval{R(1, 2), R(1), false, true}, cells);
    CHECK(verify_system(dual).ok);
    // the matched system is exactly F*: same matrix over the same interval
    MobiusSystem expected = fstar_system();
    for (const auto& cell : dual.cells) {
        ExactReal probe = (cell.iv.lo + cell.iv.hi) / R(2);
        size_t j = expected.cell_of(probe);
        CHECK(cell.map() == expected.cells[j].map());
        CHECK(cell.iv.lo == expected.cells[j].iv.lo);
        CHECK(cell.iv.hi == expected.cells[j].iv.hi);
    }

    // involution: transposing back on the original partition returns Farey
    std::vector<EndIval> orig{farey.cells[0].iv, farey.cells[1].iv};
    MobiusSystem back = natural_dual(dual, farey.carrier, orig);
    CHECK(verify_system(back).ok);
    for (const auto& cell : back.cells) {
        ExactReal probe =
            cell.iv.hi.is_infinity() ? R(1) : (cell.iv.lo + cell.iv.hi) / R(2);
        size_t j = farey.cell_of(probe);
        CHECK(cell.map() == farey.cells[j].map());
    }

    // mismatched cell count
    CHECK_THROWS_AS(natural_dual(farey, EndIval{R(1, 2), R(1), false, true},
                                 std::vector<EndIval>{cells[0]}),
                    mf_error);

    // the two-cell partition search recovers the same split point
    auto found = dual_partition_for(farey, EndIval{R(1, 2), R(1), false, true});
    REQUIRE(found.size() == 2);
    CHECK(found[0].hi == R(2, 3));
    CHECK(found[1].lo == R(2, 3));
}

TEST_CASE("fstar step and expansion") {
    auto s0 = fstar_step(R(2, 3));
    CHECK(s0.first == LehnerDigit::d11);
    CHECK(s0.second == R(1, 2));

    auto s1 = fstar_step(R(1));
    CHECK(s1.first == LehnerDigit::d21);
    CHECK(s1.second == R(1));

    ExactReal half_sqrt2 = ExactReal::make_surd(0, 1, 2, 2);
    auto s2 = fstar_step(half_sqrt2);
    CHECK(s2.first == LehnerDigit::d21);
    CHECK(s2.second == ExactReal::make_surd(2, -1, 2, 1));

    CHECK_THROWS_AS(fstar_step(R(1, 2)), mf_error);
    CHECK_THROWS_AS(fstar_step(R(3, 2)), mf_error);

    CHECK(fstar_expand(half_sqrt2).digits == lehner_expand(ExactReal::sqrt_int(2)));
    ExactReal inv_golden = ExactReal::make_surd(-1, 1, 5, 2);  // 2/(1+sqrt5)
    CHECK(fstar_expand(inv_golden).digits ==
          lehner_expand(ExactReal::make_surd(1, 1, 5, 2)));
    auto fin = fstar_expand(R(3, 4));
    CHECK(fin.digits == lehner_expand(R(4, 3)));
    CHECK(fin.boundary_terminated);
    CHECK(fstar_expand(R(1)).digits == lehner_expand(R(1)));
}

TEST_CASE("fstar conjugacy on random values") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 500; ++i) {
        long d = 3 + (long)(rng() % 200);
        long n = 1 + (long)(rng() % (unsigned long)(d - 1));
        ExactReal x = R(d, d + n);  // 1/x = (d+n)/d in (1,2) => x in (1/2,1)
        CHECK(fstar_expand(x).digits == lehner_expand(x.reciprocal()));
    }
    int surds = 0;
    for (long d = 2; d <= 40 && surds < 20; ++d) {
        if (mpz_perfect_square_p(mpz_class(d).get_mpz_t())) continue;
        for (long r = 2; r <= 3 && surds < 20; ++r)
            for (long p = 0; p <= 8 && surds < 20; ++p) {
                ExactReal y = ExactReal::make_surd(p, 1, d, r);  // candidate in (1,2)
                if (!y.is_surd() || y <= R(1) || y >= R(2)) continue;
                CHECK(fstar_expand(y.reciprocal()).digits == lehner_expand(y));
                ++surds;
            }
    }
    CHECK(surds == 20);
}

TEST_CASE("transfer identity for F*") {
    CHECK(transfer_check_Fstar(R(3, 4)));
    CHECK(transfer_check_Fstar(R(5, 8)));
    CHECK(transfer_check_Fstar(R(7, 9)));
    std::mt19937_64 rng(67);
    for (int i = 0; i < 2000; ++i) {
        long d = 3 + (long)(rng() % 300);
        long n = 1 + (long)(rng() % (unsigned long)(d - 1));
        ExactReal x = R(d, d + n);
        if (x <= R(1, 2) || x >= R(1)) continue;
        CHECK(transfer_check_Fstar(x));
    }
    CHECK_THROWS_AS(transfer_check_Fstar(R(1)), mf_error);
}

TEST_CASE("dual natural extension steps") {
    MobiusSystem farey = farey_system();
    std::vector<EndIval> cells{iv(1, 2, 2, 3, false, true), iv(2, 3, 1, 1, false, true)};
    MobiusSystem fdual = natural_dual(farey, EndIval{R(1, 2), R(1), false, true}, cells);

    auto [x1, y1] = dual_natext_step(farey, fdual, R(1), R(1));
    CHECK(x1 == R(0));
    CHECK(y1 == R(1, 2));

    // the generic step with the F*/Farey pair is the hand-written Fbar
    MobiusSystem fstar = fstar_system();
    std::vector<EndIval> dual_cells{farey.cells[0].iv, farey.cells[1].iv};
    MobiusSystem fsdual = natural_dual(fstar, farey.carrier, dual_cells);

    ExactReal half_sqrt2 = ExactReal::make_surd(0, 1, 2, 2);
    auto [a, b] = dual_natext_step(fstar, fsdual, half_sqrt2, R(0));
    CHECK(a == ExactReal::make_surd(2, -1, 2, 1));
    CHECK(b == R(-1, 2));
    auto fb = fbar_step(half_sqrt2, R(0));
    CHECK(a == fb.first);
    CHECK(b == fb.second);

    auto [c, d] = fbar_step(R(3, 5), R(0));
    CHECK(c == R(2, 3));
    CHECK(d == R(1));

    std::mt19937_64 rng(71);
    int done = 0;
    while (done < 1000) {
        long dd = 3 + (long)(rng() % 60);
        long nn = 1 + (long)(rng() % (unsigned long)(dd - 1));
        ExactReal x = R(dd, dd + nn);
        if (x <= R(1, 2) || x > R(1)) continue;
        long dy = 1 + (long)(rng() % 20);
        long ny = (long)(rng() % (unsigned long)(10 * dy)) - dy;
        ExactReal y = R(ny, dy);
        if (y < R(-1)) continue;
        try {
            auto [gx, gy] = dual_natext_step(fstar, fsdual, x, y);
            auto hw = fbar_step(x, y);
            bool same = gx == hw.first && gy == hw.second;
            CHECK(same);
            ++done;
        } catch (const mf_error& e) {
            CHECK(e.code() == errc::division_by_zero);
        }
    }
}

TEST_CASE("jacobian invariance for 1/(1+xy)^2") {
    CHECK(invariance_check_1pxy(R(3, 5), R(0)));
    CHECK(invariance_check_1pxy(R(3, 4), R(1)));
    CHECK(invariance_check_1pxy(ExactReal::make_surd(0, 1, 2, 2), ExactReal::sqrt_int(2)));
    std::mt19937_64 rng(73);
    int done = 0;
    while (done < 2000) {
        long dd = 3 + (long)(rng() % 100);
        long nn = 1 + (long)(rng() % (unsigned long)(dd - 1));
        ExactReal x = R(dd, dd + nn);
        if (x <= R(1, 2) || x > R(1)) continue;
        long dy = 1 + (long)(rng() % 25);
        long ny = (long)(rng() % (unsigned long)(10 * dy)) - dy;
        ExactReal y = R(ny, dy);
        if (y < R(-1) || (R(1) + x * y).is_zero()) continue;
        try {
            bool ok = invariance_check_1pxy(x, y);
            CHECK(ok);
            ++done;
        } catch (const mf_error& e) {
            CHECK(e.code() == errc::division_by_zero);
        }
    }
}
