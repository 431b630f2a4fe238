#include "modflow/farey.hpp"

#include <map>

namespace modflow {

namespace {

const ExactReal kZero = ExactReal::from_int(0);
const ExactReal kOne = ExactReal::from_int(1);
const ExactReal kTwo = ExactReal::from_int(2);
const ExactReal kMinusOne = ExactReal::from_int(-1);

void require_farey_domain(const ExactReal& x) {
    if (x.is_infinity() || x < kMinusOne)
        raise(errc::out_of_domain, "Farey map needs x in [-1,oo), got " + x.str());
}

}  // namespace

std::optional<std::pair<FareyDigit, ExactReal>> farey_step(const ExactReal& x) {
    require_farey_domain(x);
    if (x.is_zero()) return std::nullopt;
    if (x < kZero) return std::make_pair(FareyDigit::m12, -x.reciprocal() - kTwo);
    return std::make_pair(FareyDigit::p11, x.reciprocal() - kOne);
}

DigitSequence<FareyDigit> farey_expand(const ExactReal& x, size_t max_digits) {
    require_farey_domain(x);
    if (x == kMinusOne) return DigitSequence<FareyDigit>({}, {FareyDigit::m12});

    std::vector<FareyDigit> emitted;
    ExactReal state = x;
    std::map<ExactReal, size_t, ExactReal::CanonicalLess> seen;
    while (emitted.size() < max_digits) {
        if (state.is_surd()) {
            auto it = seen.find(state);
            if (it != seen.end()) {
                std::vector<FareyDigit> pre(emitted.begin(), emitted.begin() + it->second);
                std::vector<FareyDigit> per(emitted.begin() + it->second, emitted.end());
                return DigitSequence<FareyDigit>(std::move(pre), std::move(per));
            }
            seen.emplace(state, emitted.size());
        }
        auto step = farey_step(state);
        if (!step) return DigitSequence<FareyDigit>(std::move(emitted), {});
        emitted.push_back(step->first);
        state = step->second;
    }
    raise(errc::budget_exceeded, "no termination or cycle within digit budget");
}

ExactReal farey_value(const DigitSequence<FareyDigit>& seq) {
    if (seq.finite()) {
        if (seq.preperiod.empty()) return kZero;
        // f0/(b0 + f1/(b1 + ... + fk/bk)) as a signed word with leading 0
        GeneralCFWord w;
        w.terms.push_back(CFTerm{0, farey_numerator(seq.preperiod.front())});
        for (size_t i = 0; i < seq.preperiod.size(); ++i) {
            int next_sign =
                i + 1 < seq.preperiod.size() ? farey_numerator(seq.preperiod[i + 1]) : +1;
            w.terms.push_back(CFTerm{farey_quotient(seq.preperiod[i]), next_sign});
        }
        return evaluate_word(w, std::nullopt);
    }
    std::vector<UnimodularMap> pre, per;
    for (FareyDigit d : seq.preperiod) pre.push_back(farey_step_matrix(d));
    for (FareyDigit d : seq.period) per.push_back(farey_step_matrix(d));
    return value_of_periodic_maps(pre, per, RootInterval{kMinusOne, std::nullopt});
}

GeneralCFWord insertion_rewrite(const GeneralCFWord& word, size_t position) {
    if (position + 1 >= word.terms.size())
        raise(errc::position_out_of_range, "rewrite needs a successor term");
    const CFTerm& first = word.terms[position];
    const CFTerm& second = word.terms[position + 1];
    if (second.quotient < 2)
        raise(errc::out_of_domain, "semiregular insertion needs B >= 2");
    GeneralCFWord out;
    out.terms.assign(word.terms.begin(), word.terms.begin() + position);
    out.terms.push_back(CFTerm{first.quotient + first.sign, -first.sign});
    out.terms.push_back(CFTerm{1, +1});
    out.terms.push_back(CFTerm{second.quotient - 1, second.sign});
    out.terms.insert(out.terms.end(), word.terms.begin() + position + 2, word.terms.end());
    return out;
}

GeneralCFWord alt_insertion_rewrite(const GeneralCFWord& word, size_t position) {
    if (position + 1 >= word.terms.size())
        raise(errc::position_out_of_range, "rewrite needs a successor term");
    const CFTerm& first = word.terms[position];
    const CFTerm& second = word.terms[position + 1];
    GeneralCFWord out;
    out.terms.assign(word.terms.begin(), word.terms.begin() + position);
    out.terms.push_back(CFTerm{first.quotient - first.sign, first.sign});
    out.terms.push_back(CFTerm{1, -1});
    out.terms.push_back(CFTerm{second.quotient + 1, second.sign});
    out.terms.insert(out.terms.end(), word.terms.begin() + position + 2, word.terms.end());
    return out;
}

namespace {

// Cursor over an eventually periodic digit stream that can hand out leading
// digits and report the (preperiod, period) shape of what remains.
struct RcfCursor {
    std::vector<RcfDigit> pre;
    std::vector<RcfDigit> per;

    bool empty() const { return pre.empty() && per.empty(); }

    mpz_class pop() {
        if (!pre.empty()) {
            mpz_class n = pre.front().n;
            pre.erase(pre.begin());
            return n;
        }
        if (per.empty()) raise(errc::invalid_runs, "digit stream exhausted");
        mpz_class n = per.front().n;
        std::rotate(per.begin(), per.begin() + 1, per.end());
        return n;
    }
};

void emit_block(std::vector<FareyDigit>& out, const mpz_class& n, bool full) {
    out.push_back(FareyDigit::p11);
    mpz_class count = full ? n : n - 1;
    for (mpz_class i = 0; i < count; ++i) out.push_back(FareyDigit::m12);
}

void emit_m12(std::vector<FareyDigit>& out, const mpz_class& count) {
    for (mpz_class i = 0; i < count; ++i) out.push_back(FareyDigit::m12);
}

}  // namespace

DigitSequence<FareyDigit> farey_from_rcf(int sign, const mpz_class& head,
                                         const DigitSequence<RcfDigit>& rcf) {
    ExactReal magnitude = rcf_value(head, rcf);
    ExactReal y = sign < 0 ? -magnitude : magnitude;
    if (y <= kMinusOne || y.is_zero())
        raise(errc::out_of_domain, "value must lie in (-1,oo) \\ {0}");

    RcfCursor cursor{rcf.preperiod, rcf.period};
    std::vector<FareyDigit> stream_pre;

    if (sign >= 0) {
        // case (a): (1/1)(-1/2)^n0 then (1/1)(-1/2)^(n_i - 1) per digit
        stream_pre.push_back(FareyDigit::p11);
        emit_m12(stream_pre, head);
    } else {
        if (head != 0)
            raise(errc::out_of_domain, "negative values need a head-0 expansion");
        if (cursor.empty()) raise(errc::out_of_domain, "no digits");
        mpz_class n1 = cursor.pop();
        if (n1 == 1) {
            // case (b), n1 = 1: (-1/2)^(n2+1) then normal blocks
            if (cursor.empty())
                raise(errc::out_of_domain, "-1 is outside the conversion domain");
            mpz_class n2 = cursor.pop();
            emit_m12(stream_pre, n2 + 1);
        } else {
            // case (b), n1 > 1: (-1/2)(1/1)(-1/2)^(n1-2) then normal blocks
            stream_pre.push_back(FareyDigit::m12);
            stream_pre.push_back(FareyDigit::p11);
            emit_m12(stream_pre, n1 - 2);
        }
    }
    for (const RcfDigit& d : cursor.pre) emit_block(stream_pre, d.n, false);
    std::vector<FareyDigit> stream_per;
    for (const RcfDigit& d : cursor.per) emit_block(stream_per, d.n, false);
    DigitSequence<FareyDigit> candidate(std::move(stream_pre), std::move(stream_per));

    // the expansion itself is the ground truth; the closed form must agree
    DigitSequence<FareyDigit> expansion = farey_expand(y);
    if (expansion.finite()) {
        auto truncated = candidate.prefix(expansion.preperiod.size());
        if (!candidate.finite() || truncated != expansion.preperiod ||
            candidate.preperiod.size() < expansion.preperiod.size())
            raise(errc::invalid_number, "closed-form stream disagrees with farey_expand");
        return expansion;
    }
    if (candidate != expansion)
        raise(errc::invalid_number, "closed-form stream disagrees with farey_expand");
    return expansion;
}

SignedTail farey_tail(const ExactReal& x, long m) {
    require_farey_domain(x);
    if (m < 1) raise(errc::out_of_domain, "Farey tails start at m = 1");
    int sign = 1;
    ExactReal value = x;
    for (long i = 1; i <= m; ++i) {
        auto step = farey_step(value);
        if (!step)
            raise(errc::tail_past_termination, "expansion ends before index " + std::to_string(m));
        sign *= -farey_numerator(step->first);
        value = step->second;
    }
    return SignedTail{sign, value, m};
}

bool transfer_check_F(const ExactReal& x) {
    if (x.is_infinity() || x <= kMinusOne)
        raise(errc::out_of_domain, "transfer identity needs x in (-1,oo)");
    auto f = [](const ExactReal& t) { return ((t + kOne) * (t + kTwo)).reciprocal(); };
    ExactReal y1 = -(x + kTwo).reciprocal();
    ExactReal y2 = (x + kOne).reciprocal();
    ExactReal lhs = f(y1) / ((x + kTwo) * (x + kTwo)) + f(y2) / ((x + kOne) * (x + kOne));
    return lhs == f(x);
}

}  // namespace modflow
