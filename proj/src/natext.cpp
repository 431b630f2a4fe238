#include "modflow/natext.hpp"

namespace modflow {

namespace {

const ExactReal kOne = ExactReal::from_int(1);
const ExactReal kTwo = ExactReal::from_int(2);
const ExactReal kMinusOne = ExactReal::from_int(-1);
const ExactReal kThreeHalves = ExactReal::from_rational(3, 2);

}  // namespace

OmegaPoint::OmegaPoint(ExactReal x_, ExactReal y_, int eps_)
    : x(std::move(x_)), y(std::move(y_)), eps(eps_) {
    // x = 2 is reachable as the one-step image of x = 3/2; points holding the
    // right edge cannot be stepped again.
    if (x.is_infinity() || x < kOne || x > kTwo)
        raise(errc::out_of_domain, "Omega needs x in [1,2), got " + x.str());
    if (y.is_infinity() || y < kMinusOne)
        raise(errc::out_of_domain, "Omega needs y in [-1,oo), got " + y.str());
    if (eps != 1 && eps != -1) raise(errc::out_of_domain, "eps must be +-1");
}

OmegaPoint natext_step(const OmegaPoint& p) {
    if (p.x >= kTwo) raise(errc::out_of_domain, "cannot step from the boundary x = 2");
    if (p.x < kThreeHalves) {
        // digit (2,-1)
        return OmegaPoint(-(p.x - kTwo).reciprocal(), -(p.y + kTwo).reciprocal(), p.eps);
    }
    // digit (1,+1); y = -1 maps to 1/0
    if (p.y == kMinusOne)
        raise(errc::division_by_zero, "y = -1 on the (1,+1) branch");
    return OmegaPoint((p.x - kOne).reciprocal(), (p.y + kOne).reciprocal(), -p.eps);
}

OmegaPoint natext_inverse(const OmegaPoint& p) {
    // the image's y determines the digit that produced it:
    // (2,-1) gives y' in [-1,0), (1,+1) gives y' in (0,oo)
    if (p.y.is_zero()) raise(errc::not_in_image, "y = 0 has no predecessor");
    ExactReal x_prev, y_prev;
    int eps_prev;
    if (p.y < ExactReal::from_int(0)) {
        // the (2,-1) branch maps [1,3/2) onto [1,2), so x = 2 has no
        // predecessor here (it is reached only from 3/2 on the other branch)
        if (p.x >= kTwo) raise(errc::not_in_image, "x = 2 with negative y");
        x_prev = kTwo - p.x.reciprocal();
        y_prev = -p.y.reciprocal() - kTwo;
        eps_prev = p.eps;
    } else {
        x_prev = kOne + p.x.reciprocal();
        y_prev = p.y.reciprocal() - kOne;
        eps_prev = -p.eps;
    }
    if (x_prev < kOne || x_prev >= kTwo || y_prev < kMinusOne)
        raise(errc::not_in_image, "inverted point leaves Omega");
    return OmegaPoint(std::move(x_prev), std::move(y_prev), eps_prev);
}

bool shift_property_check(const ExactReal& x, const ExactReal& y, size_t depth) {
    OmegaPoint p(x, y);
    LehnerDigit digit = lehner_step(x).first;
    OmegaPoint q = natext_step(p);

    auto x_digits = lehner_expand(x).prefix(depth + 1);
    std::vector<LehnerDigit> x_shift;
    if (q.x != kTwo) x_shift = lehner_expand(q.x).prefix(depth);
    for (size_t i = 0; i + 1 < x_digits.size() && i < x_shift.size(); ++i)
        if (x_digits[i + 1] != x_shift[i]) return false;

    auto y_digits = farey_expand(y).prefix(depth);
    auto y_new = farey_expand(q.y).prefix(depth + 1);
    if (y_new.empty() || y_new.front() != lehner_to_farey(digit)) return false;
    for (size_t i = 0; i + 1 < y_new.size() && i < y_digits.size(); ++i)
        if (y_new[i + 1] != y_digits[i]) return false;
    return true;
}

bool jacobian_invariance_check_L(const OmegaPoint& p) {
    if ((p.x + p.y).is_zero())
        raise(errc::degenerate_denominator, "x + y = 0 is singular for the density");
    auto h = [](const ExactReal& x, const ExactReal& y) {
        ExactReal s = x + y;
        return (s * s).reciprocal();
    };
    OmegaPoint q = natext_step(p);
    mpz_class a0 = p.x < kThreeHalves ? 2 : 1;
    ExactReal dx = p.x - ExactReal::from_mpz(a0);
    ExactReal dy = p.y + ExactReal::from_mpz(a0);
    ExactReal jac = ((dx * dx) * (dy * dy)).reciprocal();
    return h(q.x, q.y) * jac == h(p.x, p.y);
}

}  // namespace modflow
