#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "modflow/exact.hpp"

namespace modflow {

/**
 * Eventually periodic word over a digit alphabet. An empty period means the
 * expansion is finite. Canonical form: the period is primitive (not a power
 * of a shorter word) and the preperiod is minimal (nothing absorbable into a
 * rotation of the period), so equality of sequences is plain field equality.
 */
template <class A>
struct DigitSequence {
    std::vector<A> preperiod;
    std::vector<A> period;

    DigitSequence() = default;
    DigitSequence(std::vector<A> pre, std::vector<A> per)
        : preperiod(std::move(pre)), period(std::move(per)) {
        canonicalize();
    }

    bool finite() const { return period.empty(); }
    size_t stream_length() const {
        return finite() ? preperiod.size() : static_cast<size_t>(-1);
    }

    // First n digits of the stream (fewer when finite and exhausted).
    std::vector<A> prefix(size_t n) const {
        std::vector<A> out;
        out.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            if (i < preperiod.size())
                out.push_back(preperiod[i]);
            else if (!period.empty())
                out.push_back(period[(i - preperiod.size()) % period.size()]);
            else
                break;
        }
        return out;
    }

    bool operator==(const DigitSequence& o) const {
        return preperiod == o.preperiod && period == o.period;
    }
    bool operator!=(const DigitSequence& o) const { return !(*this == o); }

    void canonicalize() {
        if (period.empty()) return;
        // primitive root of the period
        for (size_t len = 1; len <= period.size() / 2; ++len) {
            if (period.size() % len != 0) continue;
            bool tiles = true;
            for (size_t i = len; i < period.size() && tiles; ++i)
                tiles = period[i] == period[i % len];
            if (tiles) {
                period.resize(len);
                break;
            }
        }
        // absorb a matching preperiod tail by rotating the period
        while (!preperiod.empty() && preperiod.back() == period.back()) {
            preperiod.pop_back();
            std::rotate(period.begin(), period.end() - 1, period.end());
        }
    }
};

struct RcfDigit {
    mpz_class n;  // >= 1
    bool operator==(const RcfDigit& o) const { return n == o.n; }
};

/// Regular continued fraction [head; digits...] of a finite exact real.
struct RcfExpansion {
    mpz_class head;
    DigitSequence<RcfDigit> digits;
};

/**
 * Signed continued-fraction word (a_0,e_0)(a_1,e_1)...: the value is
 * a_0 + e_0/(a_1 + e_1/(... + e_{k-1}/(a_k [+ e_k/tail]))). The sign of a
 * term connects it to the next one; the final sign is the connector to an
 * optional tail and is dropped when no tail is supplied.
 */
struct CFTerm {
    mpz_class quotient;
    int sign;  // +1 or -1
    bool operator==(const CFTerm& o) const { return quotient == o.quotient && sign == o.sign; }
};

struct GeneralCFWord {
    std::vector<CFTerm> terms;
};

// The one-step Moebius map t -> a + e/t of a term.
UnimodularMap term_step_matrix(const CFTerm& t);

RcfExpansion rcf_expand(const ExactReal& x, size_t max_digits = 4096);

ExactReal evaluate_word(const GeneralCFWord& w, const std::optional<ExactReal>& tail);

// Closed interval with an optional upper bound (nullopt = unbounded above).
struct RootInterval {
    ExactReal lo;
    std::optional<ExactReal> hi;
};

/**
 * Value of an eventually periodic expansion given the one-step Moebius maps
 * of its digits: solves the period's fixed-point equation, keeps the root
 * inside `range` (the attracting one if two qualify), then folds the
 * preperiod over it.
 */
ExactReal value_of_periodic_maps(const std::vector<UnimodularMap>& preperiod,
                                 const std::vector<UnimodularMap>& period,
                                 const RootInterval& range);

// Same, for signed words whose step maps are t -> a + e/t.
ExactReal value_of_periodic_word(const std::vector<CFTerm>& preperiod,
                                 const std::vector<CFTerm>& period, const RootInterval& range);

// RCF value: head + 1/(digit tail); finite sequences evaluate directly.
ExactReal rcf_value(const mpz_class& head, const DigitSequence<RcfDigit>& digits);

}  // namespace modflow
