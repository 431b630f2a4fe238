#include "modflow/lehner.hpp"

#include <map>

namespace modflow {

namespace {

const ExactReal kOne = ExactReal::from_int(1);
const ExactReal kTwo = ExactReal::from_int(2);
const ExactReal kThreeHalves = ExactReal::from_rational(3, 2);

void require_lehner_domain(const ExactReal& x) {
    if (x.is_infinity() || x < kOne || x >= kTwo)
        raise(errc::out_of_domain, "Lehner map needs x in [1,2), got " + x.str());
}

}  // namespace

std::pair<LehnerDigit, ExactReal> lehner_step(const ExactReal& x) {
    require_lehner_domain(x);
    if (x < kThreeHalves)
        return {LehnerDigit::d21, (kTwo - x).reciprocal()};
    return {LehnerDigit::d11, (x - kOne).reciprocal()};
}

DigitSequence<LehnerDigit> lehner_expand(const ExactReal& x, size_t max_digits) {
    require_lehner_domain(x);
    if (x == kOne) return DigitSequence<LehnerDigit>({}, {LehnerDigit::d21});

    std::vector<LehnerDigit> emitted;
    ExactReal state = x;
    if (state.is_surd()) {
        std::map<ExactReal, size_t, ExactReal::CanonicalLess> seen;
        while (emitted.size() < max_digits) {
            auto it = seen.find(state);
            if (it != seen.end()) {
                std::vector<LehnerDigit> pre(emitted.begin(), emitted.begin() + it->second);
                std::vector<LehnerDigit> per(emitted.begin() + it->second, emitted.end());
                return DigitSequence<LehnerDigit>(std::move(pre), std::move(per));
            }
            seen.emplace(state, emitted.size());
            auto [digit, next] = lehner_step(state);
            emitted.push_back(digit);
            state = next;
        }
        raise(errc::budget_exceeded, "no cycle within digit budget");
    }

    // Rational: the orbit reaches 2 (necessarily through 3/2). The canonical
    // finite word takes the (2,-1) branch at 3/2 and records the terminal
    // "+1/2" as a final (1,+1); evaluating with tail 1 reproduces x.
    while (emitted.size() < max_digits) {
        if (state == kTwo) {
            emitted.push_back(LehnerDigit::d11);
            return DigitSequence<LehnerDigit>(std::move(emitted), {});
        }
        if (state == kThreeHalves) {
            emitted.push_back(LehnerDigit::d21);
            state = kTwo;
            continue;
        }
        auto [digit, next] = lehner_step(state);
        emitted.push_back(digit);
        state = next;
    }
    raise(errc::budget_exceeded, "no termination within digit budget");
}

DigitSequence<LehnerDigit> lehner_from_rcf(const mpz_class& head,
                                           const DigitSequence<RcfDigit>& rcf) {
    if (head != 1) raise(errc::unsupported_head, "insertion rule needs head 1");
    if (rcf.preperiod.empty() && rcf.period.empty())
        raise(errc::out_of_domain, "value 1 has no expansion under the insertion rule");
    auto emit = [](std::vector<LehnerDigit>& out, const RcfDigit& d) {
        for (mpz_class i = 1; i < d.n; ++i) out.push_back(LehnerDigit::d21);
        out.push_back(LehnerDigit::d11);
    };
    std::vector<LehnerDigit> pre, per;
    for (const auto& d : rcf.preperiod) emit(pre, d);
    for (const auto& d : rcf.period) emit(per, d);
    return DigitSequence<LehnerDigit>(std::move(pre), std::move(per));
}

ExactReal lehner_value(const DigitSequence<LehnerDigit>& seq) {
    if (seq.finite()) {
        GeneralCFWord w;
        for (LehnerDigit d : seq.preperiod) w.terms.push_back(lehner_term(d));
        return evaluate_word(w, ExactReal::from_int(1));
    }
    std::vector<CFTerm> pre, per;
    for (LehnerDigit d : seq.preperiod) pre.push_back(lehner_term(d));
    for (LehnerDigit d : seq.period) per.push_back(lehner_term(d));
    return value_of_periodic_word(pre, per, RootInterval{kOne, kTwo});
}

SignedTail lehner_tail(const ExactReal& x, long m) {
    require_lehner_domain(x);
    if (m < 0) raise(errc::out_of_domain, "tail index must be >= 0");
    int sign = 1;
    ExactReal value = x;
    for (long i = 0; i <= m; ++i) {
        if (value == kTwo)
            raise(errc::tail_past_termination, "expansion ends before index " + std::to_string(m));
        auto [digit, next] = lehner_step(value);
        sign *= -lehner_sign(digit);
        value = next;
    }
    return SignedTail{sign, value, m};
}

bool pure_periodicity_criterion(const ExactReal& x) {
    if (!x.is_surd()) raise(errc::not_quadratic, "criterion applies to quadratic surds");
    return x > kOne && x < kTwo && conjugate(x) < kOne;
}

std::vector<FareyDigit> dual_of_period(const std::vector<LehnerDigit>& period) {
    std::vector<FareyDigit> out;
    out.reserve(period.size());
    for (auto it = period.rbegin(); it != period.rend(); ++it)
        out.push_back(lehner_to_farey(*it));
    return out;
}

namespace {

// Signed tails u_k of x with PSL(2,Z) witnesses W_k (W_k x = u_k), enumerated
// through one full cycle. Each step is u -> 1/(s a - u), det +1.
std::map<ExactReal, UnimodularMap, ExactReal::CanonicalLess> signed_tail_cycle(const ExactReal& x, size_t guard) {
    std::map<ExactReal, UnimodularMap, ExactReal::CanonicalLess> tails;
    ExactReal value = x;
    int sign = 1;
    UnimodularMap witness;
    for (size_t k = 0; k < guard; ++k) {
        auto [digit, next] = lehner_step(value);
        mpz_class sa = lehner_quotient(digit) * sign;
        witness = UnimodularMap(0, 1, -1, sa) * witness;
        sign *= -lehner_sign(digit);
        value = next;
        ExactReal u = sign > 0 ? value : -value;
        if (tails.count(u)) return tails;
        tails.emplace(u, witness);
    }
    raise(errc::budget_exceeded, "tail cycle not closed within guard");
}

}  // namespace

std::optional<UnimodularMap> psl2z_equivalent(const ExactReal& x, const ExactReal& y) {
    if (!x.is_surd() || !y.is_surd())
        raise(errc::not_quadratic, "equivalence test applies to quadratic surds");
    if (x <= kOne || x >= kTwo || y <= kOne || y >= kTwo)
        raise(errc::out_of_domain, "equivalence test needs surds in (1,2)");
    if (x == y) return UnimodularMap::identity();
    if (discriminant(x) != discriminant(y)) return std::nullopt;
    auto tx = signed_tail_cycle(x, 100000);
    auto ty = signed_tail_cycle(y, 100000);
    for (const auto& [u, wx] : tx) {
        auto it = ty.find(u);
        if (it != ty.end()) return it->second.inverse() * wx;
    }
    return std::nullopt;
}

bool transfer_check_L(const ExactReal& x) {
    if (x.is_infinity() || x <= kOne || x >= kTwo)
        raise(errc::out_of_domain, "transfer identity needs x in (1,2)");
    auto f = [](const ExactReal& t) { return (t - kOne).reciprocal(); };
    ExactReal y1 = kTwo - x.reciprocal();
    ExactReal y2 = kOne + x.reciprocal();
    ExactReal lhs = (f(y1) + f(y2)) / (x * x);
    return lhs == f(x);
}

}  // namespace modflow
