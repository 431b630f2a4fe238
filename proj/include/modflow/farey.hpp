#pragma once

#include <optional>

#include "modflow/digits.hpp"
#include "modflow/lehner.hpp"

namespace modflow {

/**
 * The Farey Gauss map on [-1, oo),
 *
 *     F(x) = -1/x - 2 on [-1,0)   with digit (-1/2),
 *     F(0) = 0                     (expansion terminates),
 *     F(x) =  1/x - 1 on (0,oo)   with digit (+1/1),
 *
 * its expansions, the two insertion rewrites, the closed-form conversion from
 * regular continued fractions, Farey tails, and the transfer-operator
 * identity for 1/((x+1)(x+2)).
 */

// One step of F; nullopt means x = 0 (terminated).
std::optional<std::pair<FareyDigit, ExactReal>> farey_step(const ExactReal& x);

// Rationals terminate at 0; surds cycle-detect; -1 yields the purely periodic
// word (-1/2)(-1/2)...
DigitSequence<FareyDigit> farey_expand(const ExactReal& x, size_t max_digits = 4096);

// Value of a Farey word f0/(b0 + f1/(b1 + ...)); the empty word is 0.
ExactReal farey_value(const DigitSequence<FareyDigit>& seq);

// A + e/(B + rest)  ->  A+e + (-e)/(1 + 1/(B-1 + rest)); needs B >= 2.
GeneralCFWord insertion_rewrite(const GeneralCFWord& word, size_t position);

// A + e/(B + rest)  ->  A-e + e/(1 - 1/(B+1 + rest)).
GeneralCFWord alt_insertion_rewrite(const GeneralCFWord& word, size_t position);

/**
 * Closed-form Farey expansion of y = sign * [head; digits...], y in (-1,oo),
 * y != 0:
 *   (a) y > 0:        (1/1)(-1/2)^n0 (1/1)(-1/2)^(n1-1) ...   (n0 = head)
 *   (b) -1 < y < 0:   (-1/2)^(n2+1) (1/1)(-1/2)^(n3-1) ...    if n1 = 1
 *                     (-1/2)(1/1)(-1/2)^(n1-2) (1/1)(-1/2)^(n2-1) ...  else
 * The stream is cross-checked against farey_expand of the same value
 * (truncated at a rational's termination point) before being returned.
 */
DigitSequence<FareyDigit> farey_from_rcf(int sign, const mpz_class& head,
                                         const DigitSequence<RcfDigit>& rcf);

// m-tail (m >= 1): sign (-f_1)...(-f_m) together with F^m(x). The value may
// be 0 when the expansion terminates exactly at index m.
SignedTail farey_tail(const ExactReal& x, long m);

// Exact two-branch transfer-operator identity for 1/((x+1)(x+2)).
bool transfer_check_F(const ExactReal& x);

}  // namespace modflow
