#include "modflow/cf.hpp"

#include <map>

namespace modflow {

UnimodularMap term_step_matrix(const CFTerm& t) {
    return UnimodularMap(t.quotient, t.sign, 1, 0);
}

RcfExpansion rcf_expand(const ExactReal& x, size_t max_digits) {
    if (x.is_infinity()) raise(errc::invalid_number, "cannot expand infinity");
    RcfExpansion out;
    out.head = x.floor();
    ExactReal frac = x - ExactReal::from_mpz(out.head);
    if (frac.is_zero()) return out;

    ExactReal state = frac.reciprocal();  // complete quotient, > 1
    std::map<ExactReal, size_t, ExactReal::CanonicalLess> seen;
    std::vector<RcfDigit> emitted;
    while (emitted.size() < max_digits) {
        if (state.is_surd()) {
            auto it = seen.find(state);
            if (it != seen.end()) {
                size_t start = it->second;
                std::vector<RcfDigit> pre(emitted.begin(), emitted.begin() + start);
                std::vector<RcfDigit> per(emitted.begin() + start, emitted.end());
                out.digits = DigitSequence<RcfDigit>(std::move(pre), std::move(per));
                return out;
            }
            seen.emplace(state, emitted.size());
        }
        mpz_class n = state.floor();
        ExactReal rem = state - ExactReal::from_mpz(n);
        if (rem.is_zero()) {
            emitted.push_back(RcfDigit{n});
            // canonical form: last digit >= 2
            if (emitted.size() >= 2 && emitted.back().n == 1) {
                emitted.pop_back();
                emitted.back().n += 1;
            } else if (emitted.size() == 1 && emitted.back().n == 1) {
                emitted.clear();
                out.head += 1;
            }
            out.digits = DigitSequence<RcfDigit>(std::move(emitted), {});
            return out;
        }
        emitted.push_back(RcfDigit{n});
        state = rem.reciprocal();
    }
    raise(errc::budget_exceeded, "no termination or cycle within digit budget");
}

ExactReal evaluate_word(const GeneralCFWord& w, const std::optional<ExactReal>& tail) {
    if (w.terms.empty()) {
        if (!tail) raise(errc::invalid_number, "empty word with no tail");
        return *tail;
    }
    ExactReal acc;
    bool have_acc = false;
    if (tail && !tail->is_infinity()) {
        acc = *tail;
        have_acc = true;
    }
    for (auto it = w.terms.rbegin(); it != w.terms.rend(); ++it) {
        ExactReal q = ExactReal::from_mpz(it->quotient);
        if (!have_acc) {
            acc = q;
            have_acc = true;
            continue;
        }
        if (acc.is_zero()) raise(errc::division_by_zero, "intermediate denominator vanished");
        ExactReal frac = acc.is_infinity() ? ExactReal::from_int(0) : acc.reciprocal();
        if (it->sign < 0) frac = -frac;
        acc = q + frac;
    }
    return acc;
}

namespace {

// Both fixed points of m (as exact reals), empty when none are real.
std::vector<ExactReal> fixed_points(const UnimodularMap& m) {
    // c t^2 + (d - a) t - b = 0; divide out the content first, since the
    // entries of a long period product are huge while the primitive form of
    // the fixed point's polynomial is field-small
    mpz_class A = m.c(), B = m.d() - m.a(), C = -m.b();
    mpz_class g = gcd(gcd(abs(A), abs(B)), abs(C));
    if (g > 1) {
        A /= g;
        B /= g;
        C /= g;
    }
    std::vector<ExactReal> roots;
    if (A == 0) {
        if (B != 0) roots.push_back(ExactReal::from_rational(-C, B));
        return roots;
    }
    mpz_class disc = B * B - 4 * A * C;
    if (disc < 0) return roots;
    roots.push_back(ExactReal::make_surd(-B, 1, disc, 2 * A));
    roots.push_back(ExactReal::make_surd(-B, -1, disc, 2 * A));
    if (roots[0] == roots[1]) roots.pop_back();
    return roots;
}

bool in_range(const ExactReal& t, const RootInterval& range) {
    if (t < range.lo) return false;
    if (range.hi && t > *range.hi) return false;
    return true;
}

// |m'(t)| < 1 at a fixed point t marks the attracting one: (c t + d)^2 > |det|.
bool attracting(const UnimodularMap& m, const ExactReal& t) {
    ExactReal den = t * ExactReal::from_mpz(m.c()) + ExactReal::from_mpz(m.d());
    ExactReal lhs = den * den;
    return lhs > ExactReal::from_mpz(abs(m.det()));
}

}  // namespace

ExactReal value_of_periodic_maps(const std::vector<UnimodularMap>& preperiod,
                                 const std::vector<UnimodularMap>& period,
                                 const RootInterval& range) {
    if (period.empty()) raise(errc::invalid_period, "period must be nonempty");
    UnimodularMap m;
    for (const UnimodularMap& s : period) m = m * s;
    std::vector<ExactReal> candidates;
    for (const ExactReal& t : fixed_points(m))
        if (in_range(t, range)) candidates.push_back(t);
    ExactReal value;
    if (candidates.empty())
        raise(errc::no_root_in_range, "no fixed point of the period lies in range");
    if (candidates.size() == 1)
        value = candidates[0];
    else
        value = attracting(m, candidates[0]) ? candidates[0] : candidates[1];
    UnimodularMap fold;
    for (const UnimodularMap& s : preperiod) fold = fold * s;
    return fold(value);
}

ExactReal value_of_periodic_word(const std::vector<CFTerm>& preperiod,
                                 const std::vector<CFTerm>& period, const RootInterval& range) {
    std::vector<UnimodularMap> pre, per;
    for (const CFTerm& t : preperiod) pre.push_back(term_step_matrix(t));
    for (const CFTerm& t : period) per.push_back(term_step_matrix(t));
    return value_of_periodic_maps(pre, per, range);
}

ExactReal rcf_value(const mpz_class& head, const DigitSequence<RcfDigit>& digits) {
    auto to_term = [](const RcfDigit& d) { return CFTerm{d.n, +1}; };
    if (digits.finite()) {
        GeneralCFWord w;
        w.terms.push_back(CFTerm{head, +1});
        for (const auto& d : digits.preperiod) w.terms.push_back(to_term(d));
        return evaluate_word(w, std::nullopt);
    }
    std::vector<CFTerm> pre, per;
    pre.push_back(CFTerm{head, +1});
    for (const auto& d : digits.preperiod) pre.push_back(to_term(d));
    for (const auto& d : digits.period) per.push_back(to_term(d));
    return value_of_periodic_word(pre, per, RootInterval{ExactReal::from_int(1), std::nullopt});
}

}  // namespace modflow
