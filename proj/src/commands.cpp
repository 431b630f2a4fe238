#include "modflow/commands.hpp"

#include <cctype>

namespace modflow {

json CommandResult::to_json() const {
    json diag = json::array();
    for (const auto& d : diagnostics) diag.push_back(d);
    return json{{"status", ok ? "ok" : "error"}, {"payload", payload}, {"diagnostics", diag}};
}

namespace {

CommandResult failure(const std::exception& e) {
    CommandResult r;
    r.ok = false;
    r.diagnostics.push_back(e.what());
    return r;
}

}  // namespace

RcfText parse_rcf_text(const std::string& text) {
    RcfText out;
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_int = [&]() -> mpz_class {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && text[pos] == '-') ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) raise(errc::parse_error, "expected integer in rcf text");
        return mpz_class(text.substr(start, pos - start));
    };
    skip_ws();
    if (pos < text.size() && text[pos] == '-') {
        out.sign = -1;
        ++pos;
    }
    out.head = read_int();
    skip_ws();
    std::vector<RcfDigit> pre, per;
    if (pos < text.size() && text[pos] == ';') {
        ++pos;
        bool done = false;
        while (!done) {
            skip_ws();
            if (pos >= text.size()) break;
            if (text.compare(pos, 3, "...") == 0) {
                pos += 3;
                if (pre.empty()) raise(errc::parse_error, "'...' needs a preceding digit");
                per.push_back(pre.back());
                pre.pop_back();
                done = true;
            } else if (text[pos] == '(') {
                ++pos;
                for (;;) {
                    per.push_back(RcfDigit{read_int()});
                    skip_ws();
                    if (pos < text.size() && text[pos] == ',') {
                        ++pos;
                        continue;
                    }
                    break;
                }
                skip_ws();
                if (pos >= text.size() || text[pos] != ')')
                    raise(errc::parse_error, "expected ) closing the period");
                ++pos;
                done = true;
            } else {
                pre.push_back(RcfDigit{read_int()});
                skip_ws();
                if (pos < text.size() && text[pos] == ',') {
                    ++pos;
                    continue;
                }
                done = true;
            }
        }
    }
    skip_ws();
    if (pos != text.size()) raise(errc::parse_error, "trailing characters in rcf text");
    out.digits = DigitSequence<RcfDigit>(std::move(pre), std::move(per));
    return out;
}

CommandResult cmd_expand(const std::string& system, const std::string& value_text,
                         size_t max_digits) {
    try {
        ExactReal x = parse_exact(value_text);
        CommandResult r;
        if (system == "rcf") {
            RcfExpansion e = rcf_expand(x, max_digits);
            r.payload["digits"] = rcf_to_json(e);
            r.payload["value_roundtrip"] = rcf_value(e.head, e.digits).str();
        } else if (system == "lehner") {
            auto e = lehner_expand(x, max_digits);
            r.payload["digits"] = lehner_to_json(e);
            r.payload["value_roundtrip"] = lehner_value(e).str();
        } else if (system == "farey") {
            auto e = farey_expand(x, max_digits);
            r.payload["digits"] = farey_to_json(e);
            r.payload["value_roundtrip"] = farey_value(e).str();
        } else if (system == "fstar") {
            auto e = fstar_expand(x, max_digits);
            r.payload["digits"] = lehner_to_json(e.digits, "fstar");
            r.payload["boundary_terminated"] = e.boundary_terminated;
            // F* digits are the Lehner digits of 1/x
            r.payload["value_roundtrip"] = lehner_value(e.digits).reciprocal().str();
        } else {
            raise(errc::unknown_suite, "unknown system " + system);
        }
        r.payload["input"] = x.str();
        return r;
    } catch (const std::exception& e) {
        return failure(e);
    }
}

CommandResult cmd_convert(const std::string& to, const std::optional<std::string>& value_text,
                          const std::optional<std::string>& rcf_text) {
    try {
        RcfText rcf;
        ExactReal value;
        if (value_text) {
            value = parse_exact(*value_text);
            ExactReal mag = value.sign() < 0 ? -value : value;
            RcfExpansion e = rcf_expand(mag);
            rcf.sign = value.sign() < 0 ? -1 : +1;
            rcf.head = e.head;
            rcf.digits = e.digits;
        } else if (rcf_text) {
            rcf = parse_rcf_text(*rcf_text);
            ExactReal mag = rcf_value(rcf.head, rcf.digits);
            value = rcf.sign < 0 ? -mag : mag;
        } else {
            raise(errc::parse_error, "convert needs --value or --rcf");
        }

        CommandResult r;
        r.payload["input_value"] = value.str();
        if (to == "lehner") {
            if (rcf.sign < 0) raise(errc::unsupported_head, "insertion rule needs head 1");
            auto word = lehner_from_rcf(rcf.head, rcf.digits);
            r.payload["digits"] = lehner_to_json(word);
            auto direct = lehner_expand(value);
            r.payload["cross_check"] = word == direct ? "match" : "mismatch";
            if (word != direct) {
                r.ok = false;
                r.diagnostics.push_back("conversion disagrees with direct expansion");
            }
        } else if (to == "farey") {
            auto word = farey_from_rcf(rcf.sign, rcf.head, rcf.digits);
            r.payload["digits"] = farey_to_json(word);
            auto direct = farey_expand(value);
            r.payload["cross_check"] = word == direct ? "match" : "mismatch";
            if (word != direct) {
                r.ok = false;
                r.diagnostics.push_back("conversion disagrees with direct expansion");
            }
        } else {
            raise(errc::unknown_suite, "unknown conversion target " + to);
        }
        return r;
    } catch (const std::exception& e) {
        return failure(e);
    }
}

CommandResult cmd_geodesic(const std::string& backward_text, const std::string& forward_text,
                           size_t letters, mpfr_prec_t prec) {
    try {
        Geodesic g{parse_exact(backward_text), parse_exact(forward_text)};
        CommandResult r;
        r.payload["input"] = geodesic_to_json(g);

        LiftResult lift = lift_to_A(g);
        r.payload["lift"] = geodesic_to_json(lift.lifted);
        r.payload["witness"] = lift.witness.str();

        const ExactReal& gf = lift.lifted.forward;
        const ExactReal& gb = lift.lifted.backward;
        int eps = gf.sign();
        ExactReal forward_mag = eps < 0 ? -gf : gf;
        ExactReal beta = eps < 0 ? gb : -gb;

        // runs: forward from the RCF [1; n0, n1, ...] of |forward|, backward
        // from the block structure of beta's Farey word
        RcfExpansion fr = rcf_expand(forward_mag);
        CuttingSequence cs;
        if (!fr.digits.preperiod.empty() || !fr.digits.period.empty()) {
            std::vector<RcfDigit> pre = fr.digits.preperiod;
            std::vector<RcfDigit> per = fr.digits.period;
            if (!pre.empty()) {
                cs.n0 = pre.front().n;
                pre.erase(pre.begin());
            } else {
                cs.n0 = per.front().n;
                std::rotate(per.begin(), per.begin() + 1, per.end());
            }
            cs.forward_runs = DigitSequence<RcfDigit>(std::move(pre), std::move(per));
        } else {
            cs.n0 = 1;
        }
        auto bwd_word = farey_expand(beta);
        {
            // runs of beta's word: each (1/1)(-1/2)^(m-1) block is one run m;
            // leading (-1/2)s (beta < 0) extend the entry run n0 instead
            std::vector<RcfDigit> pre, per;
            size_t lead = 0;
            while (lead < bwd_word.preperiod.size() &&
                   bwd_word.preperiod[lead] == FareyDigit::m12)
                ++lead;
            cs.n0 += lead;
            auto blocks = [](const std::vector<FareyDigit>& digits, size_t from,
                             std::vector<RcfDigit>& out) {
                size_t i = from;
                while (i < digits.size()) {
                    if (digits[i] != FareyDigit::p11) {
                        ++i;
                        continue;
                    }
                    mpz_class m = 1;
                    ++i;
                    while (i < digits.size() && digits[i] == FareyDigit::m12) {
                        ++m;
                        ++i;
                    }
                    out.push_back(RcfDigit{m});
                }
            };
            blocks(bwd_word.preperiod, lead, pre);
            blocks(bwd_word.period, 0, per);
            cs.backward_runs = DigitSequence<RcfDigit>(std::move(pre), std::move(per));
        }
        r.payload["cutting_sequence"] = cutting_sequence_to_json(cs);

        auto words = decode_runs(cs);
        r.payload["lehner_word"] = lehner_to_json(words.forward);
        r.payload["farey_word"] = farey_to_json(words.backward);

        auto walk = cutting_sequence_geometric(lift.lifted, letters);
        r.payload["letters"] = walk.letters;
        r.payload["letters_hit_cusp"] = walk.hit_cusp;

        auto cc = xi_eta(lift.lifted, prec);
        auto point_json = [](const CrossingPoint& p) {
            json j{{"x", p.x.str()}, {"y", p.y.str()}};
            if (p.exact) {
                j["x_exact"] = p.ex.str();
                j["y_exact"] = p.ey.str();
            }
            return j;
        };
        r.payload["xi"] = point_json(cc.xi);
        r.payload["eta"] = point_json(cc.eta);
        r.payload["return_time"] = return_time(lift.lifted, prec).str();
        try {
            auto rep = eval_eq7_formula(lift.lifted, prec);
            r.payload["eq7_report"] = json{{"formula", rep.formula_value.str()},
                                           {"arcosh", rep.arcosh_value.str()},
                                           {"abs_diff", rep.abs_diff.str()}};
        } catch (const mf_error& e) {
            if (e.code() != errc::formula_undefined) throw;
            r.payload["eq7_report"] = "undefined";
        }
        return r;
    } catch (const std::exception& e) {
        return failure(e);
    }
}

CommandResult cmd_verify(const std::string& suite, size_t samples, uint64_t seed) {
    try {
        SweepResult res = run_sweep(suite, samples, seed);
        CommandResult r;
        r.ok = res.ok();
        r.payload = json{{"suite", res.suite},
                         {"total", res.total},
                         {"passed", res.passed}};
        if (!res.first_counterexample.empty())
            r.payload["first_counterexample"] = res.first_counterexample;
        if (!r.ok) r.diagnostics.push_back("sweep found failures");
        return r;
    } catch (const std::exception& e) {
        return failure(e);
    }
}

}  // namespace modflow
