#pragma once

#include "modflow/farey.hpp"

namespace modflow {

/**
 * The invertible natural extension of the Lehner map on
 * Omega = [1,2) x [-1,oo),
 *
 *     (x,y) -> (-1/(x-2), -1/(y+2))  for x in [1,3/2),
 *     (x,y) -> ( 1/(x-1),  1/(y+1))  for x in [3/2,2),
 *
 * together with the sign-tracking layer on Omega x {-1,+1} (the third
 * coordinate is multiplied by -e0(x) each step), the shift property on
 * expansion pairs, and the exact Jacobian identity for the invariant density
 * 1/(x+y)^2.
 */
struct OmegaPoint {
    ExactReal x;  // in [1,2)
    ExactReal y;  // in [-1,oo)
    int eps = +1;

    OmegaPoint() = default;
    OmegaPoint(ExactReal x_, ExactReal y_, int eps_ = +1);

    bool operator==(const OmegaPoint& o) const {
        return x == o.x && y == o.y && eps == o.eps;
    }
};

OmegaPoint natext_step(const OmegaPoint& p);

// Recovers the previous digit from the leading Farey digit of y and inverts
// both coordinates; inverse of natext_step.
OmegaPoint natext_inverse(const OmegaPoint& p);

// One step of the extension shifts the Lehner word of x left by one digit
// and prefixes (e0/a0) to the Farey word of y; checked to `depth` digits.
bool shift_property_check(const ExactReal& x, const ExactReal& y, size_t depth);

// h(L(x,y)) |Jac L| = h(x,y) for h = 1/(x+y)^2, exactly.
bool jacobian_invariance_check_L(const OmegaPoint& p);

}  // namespace modflow
