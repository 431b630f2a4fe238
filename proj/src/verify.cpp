#include "modflow/verify.hpp"

#include <algorithm>
#include <random>

namespace modflow {

namespace {

ExactReal R(long n, long d = 1) { return ExactReal::from_rational(n, d); }

// rational strictly inside (1,2) avoiding the branch corner 3/2
ExactReal rational_12(std::mt19937_64& rng) {
    for (;;) {
        long d = 2 + (long)(rng() % 199);
        long n = 1 + (long)(rng() % (unsigned long)(d - 1));
        ExactReal x = R(d + n, d);
        if (x != R(3, 2)) return x;
    }
}

// rational in (-1, 10]
ExactReal rational_m1_10(std::mt19937_64& rng) {
    long d = 1 + (long)(rng() % 60);
    long n = (long)(rng() % (unsigned long)(11 * d)) - d + 1;
    return R(n, d);
}

// rational strictly inside (1/2, 1)
ExactReal rational_half_1(std::mt19937_64& rng) {
    for (;;) {
        long d = 3 + (long)(rng() % 300);
        long n = d / 2 + 1 + (long)(rng() % (unsigned long)std::max(1l, d / 2));
        if (n <= d / 2 || n >= d) continue;
        ExactReal x = R(n, d);
        if (x > R(1, 2) && x < R(1)) return x;
    }
}

std::string pair_str(const ExactReal& a, const ExactReal& b) {
    return "(" + a.str() + ", " + b.str() + ")";
}

}  // namespace

SweepResult sweep_transfer(size_t samples, uint64_t seed) {
    SweepResult res;
    res.suite = "transfer";
    std::mt19937_64 rng(seed);
    for (size_t i = 0; i < samples; ++i) {
        ExactReal xl = rational_12(rng);
        ExactReal xf = rational_m1_10(rng);
        ExactReal xs = rational_half_1(rng);
        ++res.total;
        bool ok = transfer_check_L(xl) && transfer_check_F(xf) && transfer_check_Fstar(xs);
        if (ok)
            ++res.passed;
        else if (res.first_counterexample.empty())
            res.first_counterexample =
                "L@" + xl.str() + " F@" + xf.str() + " F*@" + xs.str();
    }
    return res;
}

SweepResult sweep_natext(size_t samples, uint64_t seed) {
    SweepResult res;
    res.suite = "natext";
    std::mt19937_64 rng(seed);
    size_t drawn = 0;
    while (res.total < samples && drawn < 50 * samples) {
        ++drawn;
        ExactReal x = rational_12(rng);
        ExactReal y = rational_m1_10(rng);
        if ((x + y).is_zero() || (x >= R(3, 2) && y == R(-1))) continue;
        ExactReal xs = rational_half_1(rng);
        ExactReal ys = rational_m1_10(rng);
        if ((R(1) + xs * ys).is_zero() || (xs <= R(2, 3) && ys == R(-1))) continue;
        ++res.total;
        bool ok = true;
        OmegaPoint p(x, y);
        ok = ok && jacobian_invariance_check_L(p);
        OmegaPoint q = natext_step(p);
        if (q.x != R(2)) ok = ok && natext_inverse(q) == p;
        ok = ok && invariance_check_1pxy(xs, ys);
        if (ok)
            ++res.passed;
        else if (res.first_counterexample.empty())
            res.first_counterexample = pair_str(x, y) + " / " + pair_str(xs, ys);
    }
    return res;
}

SweepResult sweep_commute(size_t samples, uint64_t seed) {
    SweepResult res;
    res.suite = "commute";
    std::mt19937_64 rng(seed);
    const ExactReal sqrt2 = ExactReal::sqrt_int(2);
    for (const SPoint& witness : {SPoint(sqrt2, -sqrt2), SPoint(-sqrt2, sqrt2)}) {
        ++res.total;
        if (commute_check(witness))
            ++res.passed;
        else if (res.first_counterexample.empty())
            res.first_counterexample = pair_str(witness.x, witness.y);
    }
    size_t drawn = 0;
    while (res.total < samples + 2 && drawn < 50 * samples) {
        ++drawn;
        ExactReal x = rational_12(rng);
        ExactReal y = rational_m1_10(rng) - R(2);  // shift into (-3, 8]
        if (y >= R(1)) continue;
        if (rng() % 2) {
            if (y <= R(-1)) continue;
            x = -x;
        }
        ++res.total;
        SPoint p(x, y);
        if (commute_check(p))
            ++res.passed;
        else if (res.first_counterexample.empty())
            res.first_counterexample = pair_str(x, y);
    }
    return res;
}

SweepResult sweep_theorem1(size_t samples, uint64_t seed) {
    SweepResult res;
    res.suite = "theorem1";
    (void)seed;  // the census is exhaustive, not sampled
    for (int len = 1; len <= 3 && res.total < samples; ++len) {
        std::vector<long> pat(len, 1);
        for (;;) {
            if (res.total >= samples) break;
            std::vector<RcfDigit> fwd, bwd;
            for (int i = 1; i <= len; ++i) fwd.push_back(RcfDigit{pat[i % len]});
            for (int i = 0; i < len; ++i)
                bwd.push_back(RcfDigit{pat[((len - 1 - i) % len + len) % len]});
            CuttingSequence cs{pat[0], DigitSequence<RcfDigit>({}, fwd),
                               DigitSequence<RcfDigit>({}, bwd)};
            ++res.total;
            bool ok = false;
            std::string note;
            try {
                auto words = decode_runs(cs);
                Geodesic g = decoded_geodesic(words);
                ok = in_S(g.forward, g.backward);
                if (ok) {
                    Edge anchor = g.forward > R(0)
                                      ? Edge{normalized_cusp(1, 1), normalized_cusp(2, 1)}
                                      : Edge{normalized_cusp(-2, 1), normalized_cusp(-1, 1)};
                    FareyWalker fw(g.backward, g.forward, anchor);
                    FareyWalker bw(g.forward, g.backward, anchor);
                    std::string fl, bl;
                    for (int i = 0; i < 60 && ok; ++i) {
                        auto sf = fw.advance();
                        auto sb = bw.advance();
                        ok = sf.has_value() && sb.has_value();
                        if (!ok) break;
                        fl.push_back(static_cast<char>(sf->letter));
                        bl.push_back(static_cast<char>(sb->letter));
                    }
                    if (ok) {
                        std::reverse(bl.begin(), bl.end());
                        for (char& c : bl) c = c == 'L' ? 'R' : 'L';
                        std::string line = bl + fl;
                        std::vector<long> runs;
                        for (size_t i = 0; i < line.size();) {
                            size_t j = i;
                            while (j < line.size() && line[j] == line[i]) ++j;
                            runs.push_back((long)(j - i));
                            i = j;
                        }
                        runs.erase(runs.begin());
                        runs.pop_back();
                        ok = false;
                        for (int phase = 0; phase < len && !ok; ++phase) {
                            bool match = true;
                            for (size_t k = 0; k < runs.size() && match; ++k)
                                match = runs[k] == pat[(phase + k) % len];
                            ok = match;
                        }
                    }
                }
            } catch (const mf_error& e) {
                note = e.what();
            }
            if (ok)
                ++res.passed;
            else if (res.first_counterexample.empty()) {
                std::string ps;
                for (long r : pat) ps += std::to_string(r) + " ";
                res.first_counterexample = "pattern " + ps + note;
            }
            int i = len - 1;
            while (i >= 0 && pat[i] == 4) pat[i--] = 1;
            if (i < 0) break;
            ++pat[i];
        }
    }
    return res;
}

SweepResult sweep_closed(size_t samples, uint64_t seed) {
    SweepResult res;
    res.suite = "closed";
    (void)seed;
    for (int len = 1; len <= 4 && res.total < samples; ++len) {
        for (int bits = 0; bits < (1 << len) && res.total < samples; ++bits) {
            std::vector<LehnerDigit> period;
            for (int i = 0; i < len; ++i)
                period.push_back((bits >> i) & 1 ? LehnerDigit::d11 : LehnerDigit::d21);
            DigitSequence<LehnerDigit> canon({}, period);
            if ((int)canon.period.size() != len) continue;
            bool all_d21 = true;
            for (auto d : period) all_d21 = all_d21 && d == LehnerDigit::d21;
            if (all_d21) continue;  // value degenerates to 1
            ++res.total;
            bool ok = false;
            std::string note;
            try {
                int s = 1;
                for (auto d : period) s *= -lehner_sign(d);
                auto r = closed_geodesic_test(period);
                ok = r.closed &&
                     r.rho_period == (s > 0 ? (unsigned long)len : 2ul * (unsigned long)len);
            } catch (const mf_error& e) {
                note = e.what();
            }
            if (ok)
                ++res.passed;
            else if (res.first_counterexample.empty()) {
                std::string ps;
                for (auto d : period) ps += lehner_digit_code(d);
                res.first_counterexample = "period " + ps + " " + note;
            }
        }
    }
    return res;
}

SweepResult run_sweep(const std::string& suite, size_t samples, uint64_t seed) {
    if (suite == "transfer") return sweep_transfer(samples, seed);
    if (suite == "natext") return sweep_natext(samples, seed);
    if (suite == "commute") return sweep_commute(samples, seed);
    if (suite == "theorem1") return sweep_theorem1(samples, seed);
    if (suite == "closed") return sweep_closed(samples, seed);
    raise(errc::unknown_suite, "no suite named " + suite);
}

}  // namespace modflow
