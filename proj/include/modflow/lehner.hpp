#pragma once

#include <optional>

#include "modflow/digits.hpp"

namespace modflow {

/**
 * The Lehner Gauss map on [1,2),
 *
 *     L(x) = 1/(2-x) on [1,3/2)   with digit (2,-1),
 *     L(x) = 1/(x-1) on [3/2,2)   with digit (1,+1),
 *
 * its expansions, the insertion rule from regular continued fractions, tails,
 * the pure-periodicity criterion, the reversed dual period, tail-based
 * PSL(2,Z) equivalence and the transfer-operator identity for dx/(x-1).
 */

struct SignedTail {
    int sign;         // product of (-e_i) up to the tail index
    ExactReal value;  // the remaining expansion's value
    long index;
};

std::pair<LehnerDigit, ExactReal> lehner_step(const ExactReal& x);

// Exact expansion. Surds cycle-detect into (preperiod, period); rationals
// produce the canonical finite word, which reproduces x under
// lehner_value/evaluate with tail 1 (the terminal "+1/2" convention).
// The input 1 yields the purely periodic word (2,-1) (2,-1) ...
DigitSequence<LehnerDigit> lehner_expand(const ExactReal& x, size_t max_digits = 4096);

// Insertion rule: [1; n1, n2, ...] -> (2,-1)^(n1-1) (1,+1) (2,-1)^(n2-1) (1,+1) ...
DigitSequence<LehnerDigit> lehner_from_rcf(const mpz_class& head,
                                           const DigitSequence<RcfDigit>& rcf);

// Value of a Lehner word: finite words evaluate with tail 1, periodic words
// solve the period's fixed point in [1,2].
ExactReal lehner_value(const DigitSequence<LehnerDigit>& seq);

// m-tail: sign (-e_0)...(-e_m) together with L^(m+1)(x).
SignedTail lehner_tail(const ExactReal& x, long m);

// True iff x is in (1,2) with Galois conjugate < 1; equivalent to the Lehner
// expansion of x being purely periodic.
bool pure_periodicity_criterion(const ExactReal& x);

// Reverse the period and flip each digit (a,e) -> (e/a). The resulting Farey
// periodic value v satisfies -v = conjugate of the Lehner periodic value.
std::vector<FareyDigit> dual_of_period(const std::vector<LehnerDigit>& period);

// Tail-matching equivalence test; returns a witness g with g(x) = y when the
// two surds are PSL(2,Z)-equivalent.
std::optional<UnimodularMap> psl2z_equivalent(const ExactReal& x, const ExactReal& y);

// Exact two-branch transfer-operator identity for the invariant density
// 1/(x-1): f(y1)/|L'(y1)| + f(y2)/|L'(y2)| = f(x).
bool transfer_check_L(const ExactReal& x);

}  // namespace modflow
