#include "modflow/mobius_system.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace modflow {

namespace {

const ExactReal kZero = ExactReal::from_int(0);
const ExactReal kOne = ExactReal::from_int(1);
const ExactReal kTwo = ExactReal::from_int(2);
const ExactReal kHalf = ExactReal::from_rational(1, 2);
const ExactReal kTwoThirds = ExactReal::from_rational(2, 3);
const ExactReal kMinusOne = ExactReal::from_int(-1);

// Moebius image of an extended real under raw entries (no det assumption).
ExactReal raw_apply(const MobiusCell& cell, const ExactReal& x) {
    if (x.is_infinity()) {
        if (cell.c == 0) return ExactReal::inf();
        return ExactReal::from_rational(cell.a, cell.c);
    }
    ExactReal num = x * ExactReal::from_mpz(cell.a) + ExactReal::from_mpz(cell.b);
    ExactReal den = x * ExactReal::from_mpz(cell.c) + ExactReal::from_mpz(cell.d);
    if (den.is_zero()) return ExactReal::inf();
    return num / den;
}

bool ext_equal(const ExactReal& a, const ExactReal& b) { return a.compare(b) == 0; }

std::string ival_str(const EndIval& iv) {
    std::ostringstream os;
    os << (iv.lo_closed ? "[" : "(") << iv.lo.str() << "," << iv.hi.str()
       << (iv.hi_closed ? "]" : ")");
    return os.str();
}

}  // namespace

size_t MobiusSystem::cell_of(const ExactReal& x) const {
    for (size_t i = 0; i < cells.size(); ++i)
        if (cells[i].iv.contains(x)) return i;
    raise(errc::out_of_domain, x.str() + " lies in no cell");
}

SystemReport verify_system(const MobiusSystem& s) {
    SystemReport report;
    auto defect = [&report](const std::string& msg) {
        report.ok = false;
        report.defects.push_back(msg);
    };

    if (s.cells.empty()) {
        defect("system has no cells");
        return report;
    }
    for (size_t i = 0; i < s.cells.size(); ++i) {
        const MobiusCell& cell = s.cells[i];
        if (cell.det() == 0)
            defect("cell " + std::to_string(i) + " has a singular matrix");
        if (!cell.iv.hi.is_infinity() && !(cell.iv.lo < cell.iv.hi))
            defect("cell " + std::to_string(i) + " interval " + ival_str(cell.iv) +
                   " is empty or reversed");
    }
    if (!report.ok) return report;

    // closures partition the carrier closure
    std::vector<size_t> order(s.cells.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&s](size_t i, size_t j) {
        return s.cells[i].iv.lo < s.cells[j].iv.lo;
    });
    if (!ext_equal(s.cells[order.front()].iv.lo, s.carrier.lo))
        defect("cells do not start at the carrier's lower end");
    for (size_t k = 0; k + 1 < order.size(); ++k) {
        const EndIval& cur = s.cells[order[k]].iv;
        const EndIval& nxt = s.cells[order[k + 1]].iv;
        int c = cur.hi.compare(nxt.lo);
        if (c < 0)
            defect("gap between " + ival_str(cur) + " and " + ival_str(nxt));
        else if (c > 0)
            defect("overlap between " + ival_str(cur) + " and " + ival_str(nxt));
    }
    if (!ext_equal(s.cells[order.back()].iv.hi, s.carrier.hi))
        defect("cells do not end at the carrier's upper end");

    // each branch: pole at most at an endpoint, closure onto carrier closure
    for (size_t i = 0; i < s.cells.size(); ++i) {
        const MobiusCell& cell = s.cells[i];
        if (cell.c != 0) {
            ExactReal pole = ExactReal::from_rational(-cell.d, cell.c);
            if (cell.iv.lo < pole && (cell.iv.hi.is_infinity() || pole < cell.iv.hi))
                defect("cell " + std::to_string(i) + " has a pole inside its interval");
        }
        ExactReal img_lo = raw_apply(cell, cell.iv.lo);
        ExactReal img_hi = raw_apply(cell, cell.iv.hi);
        bool onto = (ext_equal(img_lo, s.carrier.lo) && ext_equal(img_hi, s.carrier.hi)) ||
                    (ext_equal(img_lo, s.carrier.hi) && ext_equal(img_hi, s.carrier.lo));
        if (!onto)
            defect("cell " + std::to_string(i) + " maps onto {" + img_lo.str() + "," +
                   img_hi.str() + "}, not the carrier");
    }
    return report;
}

namespace {

bool cell_matches(const MobiusCell& candidate, const EndIval& carrier) {
    if (candidate.det() == 0) return false;
    if (candidate.c != 0) {
        ExactReal pole = ExactReal::from_rational(-candidate.d, candidate.c);
        if (candidate.iv.lo < pole &&
            (candidate.iv.hi.is_infinity() || pole < candidate.iv.hi))
            return false;
    }
    ExactReal img_lo = raw_apply(candidate, candidate.iv.lo);
    ExactReal img_hi = raw_apply(candidate, candidate.iv.hi);
    return (ext_equal(img_lo, carrier.lo) && ext_equal(img_hi, carrier.hi)) ||
           (ext_equal(img_lo, carrier.hi) && ext_equal(img_hi, carrier.lo));
}

bool assign(size_t i, const std::vector<std::vector<size_t>>& options,
            std::vector<size_t>& chosen, std::vector<bool>& used) {
    if (i == options.size()) return true;
    for (size_t cand : options[i]) {
        if (used[cand]) continue;
        used[cand] = true;
        chosen[i] = cand;
        if (assign(i + 1, options, chosen, used)) return true;
        used[cand] = false;
    }
    return false;
}

}  // namespace

MobiusSystem natural_dual(const MobiusSystem& s, const EndIval& dual_carrier,
                          const std::vector<EndIval>& dual_cells) {
    if (dual_cells.size() != s.cells.size())
        raise(errc::dual_verification_failed, "dual cell count does not match");
    std::vector<std::vector<size_t>> options(s.cells.size());
    for (size_t i = 0; i < s.cells.size(); ++i) {
        const MobiusCell& c = s.cells[i];
        for (size_t j = 0; j < dual_cells.size(); ++j) {
            MobiusCell cand{dual_cells[j], c.a, c.c, c.b, c.d};  // transpose
            if (cell_matches(cand, dual_carrier)) options[i].push_back(j);
        }
        if (options[i].empty())
            raise(errc::dual_verification_failed,
                  "transposed cell " + std::to_string(i) + " bijects onto no dual cell");
    }
    std::vector<size_t> chosen(s.cells.size());
    std::vector<bool> used(dual_cells.size(), false);
    if (!assign(0, options, chosen, used))
        raise(errc::dual_verification_failed, "no perfect matching of dual cells");
    MobiusSystem dual;
    dual.carrier = dual_carrier;
    for (size_t i = 0; i < s.cells.size(); ++i) {
        const MobiusCell& c = s.cells[i];
        dual.cells.push_back(MobiusCell{dual_cells[chosen[i]], c.a, c.c, c.b, c.d});
    }
    SystemReport rep = verify_system(dual);
    if (!rep.ok)
        raise(errc::dual_verification_failed,
              "dual system fails verification: " + rep.defects.front());
    return dual;
}

std::vector<EndIval> dual_partition_for(const MobiusSystem& s, const EndIval& dual_carrier) {
    if (s.cells.size() != 2)
        raise(errc::dual_verification_failed, "partition search handles two-cell systems");
    // candidate split points: preimages of the carrier endpoints under the
    // transposed branches
    std::vector<ExactReal> candidates;
    for (const MobiusCell& c : s.cells) {
        UnimodularMap n_inv = UnimodularMap(c.a, c.c, c.b, c.d).inverse();
        for (const ExactReal* end : {&dual_carrier.lo, &dual_carrier.hi}) {
            ExactReal t = n_inv(*end);
            if (t.is_infinity()) continue;
            if (t > dual_carrier.lo &&
                (dual_carrier.hi.is_infinity() || t < dual_carrier.hi))
                candidates.push_back(t);
        }
    }
    // split style follows the carrier's closed side
    bool right_closed = dual_carrier.hi_closed;
    for (const ExactReal& t : candidates) {
        EndIval left{dual_carrier.lo, t, right_closed ? dual_carrier.lo_closed : true,
                     right_closed};
        EndIval right{t, dual_carrier.hi, !right_closed,
                      right_closed ? dual_carrier.hi_closed : false};
        std::vector<EndIval> cells{left, right};
        try {
            natural_dual(s, dual_carrier, cells);
            return cells;
        } catch (const mf_error&) {
            continue;
        }
    }
    raise(errc::dual_verification_failed, "no partition point makes the transposes onto");
}

MobiusSystem farey_system() {
    MobiusSystem s;
    s.carrier = EndIval{kMinusOne, ExactReal::inf(), true, false};
    s.cells.push_back(MobiusCell{EndIval{kMinusOne, kZero, true, false}, -2, -1, 1, 0});
    s.cells.push_back(MobiusCell{EndIval{kZero, ExactReal::inf(), false, false}, -1, 1, 1, 0});
    return s;
}

MobiusSystem lehner_system() {
    MobiusSystem s;
    s.carrier = EndIval{kOne, kTwo, true, false};
    const ExactReal three_halves = ExactReal::from_rational(3, 2);
    s.cells.push_back(MobiusCell{EndIval{kOne, three_halves, true, false}, 0, 1, -1, 2});
    s.cells.push_back(MobiusCell{EndIval{three_halves, kTwo, true, false}, 0, 1, 1, -1});
    return s;
}

MobiusSystem fstar_system() {
    MobiusSystem s;
    s.carrier = EndIval{kHalf, kOne, false, true};
    s.cells.push_back(MobiusCell{EndIval{kHalf, kTwoThirds, false, true}, -1, 1, 1, 0});
    s.cells.push_back(MobiusCell{EndIval{kTwoThirds, kOne, false, true}, 2, -1, 1, 0});
    return s;
}

std::pair<ExactReal, ExactReal> dual_natext_step(const MobiusSystem& s,
                                                 const MobiusSystem& dual, const ExactReal& x,
                                                 const ExactReal& y) {
    if (dual.cells.size() != s.cells.size())
        raise(errc::dual_verification_failed, "system/dual cell counts differ");
    size_t i = s.cell_of(x);
    UnimodularMap m = s.cells[i].map();
    UnimodularMap n_inv = dual.cells[i].map().inverse();
    return {m(x), n_inv(y)};
}

std::pair<LehnerDigit, ExactReal> fstar_step(const ExactReal& x) {
    if (x.is_infinity() || x <= kHalf || x > kOne)
        raise(errc::out_of_domain, "F* needs x in (1/2,1], got " + x.str());
    if (x <= kTwoThirds) return {LehnerDigit::d11, x.reciprocal() - kOne};
    return {LehnerDigit::d21, kTwo - x.reciprocal()};
}

FstarExpansion fstar_expand(const ExactReal& x, size_t max_digits) {
    if (x.is_infinity() || x <= kHalf || x > kOne)
        raise(errc::out_of_domain, "F* needs x in (1/2,1], got " + x.str());
    FstarExpansion out;
    if (x == kOne) {
        out.digits = DigitSequence<LehnerDigit>({}, {LehnerDigit::d21});
        return out;
    }
    std::vector<LehnerDigit> emitted;
    ExactReal state = x;
    if (state.is_surd()) {
        std::map<ExactReal, size_t, ExactReal::CanonicalLess> seen;
        while (emitted.size() < max_digits) {
            auto it = seen.find(state);
            if (it != seen.end()) {
                std::vector<LehnerDigit> pre(emitted.begin(), emitted.begin() + it->second);
                std::vector<LehnerDigit> per(emitted.begin() + it->second, emitted.end());
                out.digits = DigitSequence<LehnerDigit>(std::move(pre), std::move(per));
                return out;
            }
            seen.emplace(state, emitted.size());
            auto [digit, next] = fstar_step(state);
            emitted.push_back(digit);
            state = next;
        }
        raise(errc::budget_exceeded, "no cycle within digit budget");
    }
    // mirror of the canonical Lehner termination under x -> 1/x:
    // 2/3 plays the role of 3/2 and the carrier edge 1/2 the role of 2
    while (emitted.size() < max_digits) {
        if (state == kHalf) {
            emitted.push_back(LehnerDigit::d11);
            out.digits = DigitSequence<LehnerDigit>(std::move(emitted), {});
            out.boundary_terminated = true;
            return out;
        }
        if (state == kTwoThirds) {
            emitted.push_back(LehnerDigit::d21);
            state = kHalf;
            continue;
        }
        auto [digit, next] = fstar_step(state);
        emitted.push_back(digit);
        state = next;
    }
    raise(errc::budget_exceeded, "no termination within digit budget");
}

bool transfer_check_Fstar(const ExactReal& x) {
    if (x.is_infinity() || x <= kHalf || x >= kOne)
        raise(errc::out_of_domain, "transfer identity needs x in (1/2,1)");
    auto f = [](const ExactReal& t) { return (t * (kOne - t)).reciprocal(); };
    ExactReal y1 = (x + kOne).reciprocal();
    ExactReal y2 = (kTwo - x).reciprocal();
    ExactReal lhs =
        f(y1) / ((x + kOne) * (x + kOne)) + f(y2) / ((kTwo - x) * (kTwo - x));
    return lhs == f(x);
}

std::pair<ExactReal, ExactReal> fbar_step(const ExactReal& x, const ExactReal& y) {
    if (x.is_infinity() || x <= kHalf || x > kOne)
        raise(errc::out_of_domain, "Fbar needs x in (1/2,1], got " + x.str());
    if (y.is_infinity() || y < kMinusOne)
        raise(errc::out_of_domain, "Fbar needs y in [-1,oo), got " + y.str());
    if (x <= kTwoThirds) {
        if (y == kMinusOne) raise(errc::division_by_zero, "y = -1 on the (1,+1) branch");
        return {x.reciprocal() - kOne, (kOne + y).reciprocal()};
    }
    return {kTwo - x.reciprocal(), -(kTwo + y).reciprocal()};
}

bool invariance_check_1pxy(const ExactReal& x, const ExactReal& y) {
    ExactReal one_plus_xy = kOne + x * y;
    if (one_plus_xy.is_zero())
        raise(errc::degenerate_denominator, "1 + xy = 0 is singular for the density");
    auto h = [](const ExactReal& u, const ExactReal& v) {
        ExactReal s = kOne + u * v;
        return (s * s).reciprocal();
    };
    auto [xn, yn] = fbar_step(x, y);
    mpz_class a0 = x <= kTwoThirds ? 1 : 2;
    ExactReal ay = ExactReal::from_mpz(a0) + y;
    ExactReal jac = ((x * x) * (ay * ay)).reciprocal();
    return h(xn, yn) * jac == h(x, y);
}

}  // namespace modflow
