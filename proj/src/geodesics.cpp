#include "modflow/geodesics.hpp"

#include <algorithm>

namespace modflow {

namespace {

const ExactReal kZero = ExactReal::from_int(0);
const ExactReal kOne = ExactReal::from_int(1);
const ExactReal kTwo = ExactReal::from_int(2);
const ExactReal kMinusOne = ExactReal::from_int(-1);
const ExactReal kMinusTwo = ExactReal::from_int(-2);
const ExactReal kThreeHalves = ExactReal::from_rational(3, 2);

}  // namespace

Cusp normalized_cusp(mpz_class p, mpz_class q) {
    if (q < 0) {
        p = -p;
        q = -q;
    }
    if (q == 0) {
        if (p == 0) raise(errc::invalid_number, "0/0 is not a cusp");
        return Cusp{1, 0};
    }
    mpz_class g = gcd(abs(p), q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    return Cusp{std::move(p), std::move(q)};
}

Cusp Cusp::from_exact(const ExactReal& x) {
    if (x.is_infinity()) return Cusp{1, 0};
    if (!x.is_rational()) raise(errc::invalid_number, "cusps are rational or infinity");
    return Cusp{x.as_rational().get_num(), x.as_rational().get_den()};
}

ExactReal Cusp::value() const {
    if (q == 0) return ExactReal::inf();
    return ExactReal::from_rational(p, q);
}

bool farey_neighbors(const Cusp& a, const Cusp& b) {
    mpz_class det = a.p * b.q - b.p * a.q;
    return det == 1 || det == -1;
}

Cusp mediant(const Cusp& a, const Cusp& b) { return normalized_cusp(a.p + b.p, a.q + b.q); }

Cusp comediant(const Cusp& a, const Cusp& b) { return normalized_cusp(a.p - b.p, a.q - b.q); }

Cusp Edge::other(const Cusp& v) const {
    if (a == v) return b;
    if (b == v) return a;
    raise(errc::invalid_number, "vertex not on edge");
}

bool in_S(const ExactReal& forward, const ExactReal& backward) {
    if (forward.is_infinity() || backward.is_infinity()) return false;
    if (forward > kOne && forward < kTwo) return backward < kOne;
    if (forward > kMinusTwo && forward < kMinusOne) return backward > kMinusOne;
    return false;
}

SPoint::SPoint(ExactReal x_, ExactReal y_) : x(std::move(x_)), y(std::move(y_)) {
    if (!in_S(x, y)) raise(errc::out_of_domain, "(" + x.str() + "," + y.str() + ") is not in S");
}

LehnerDigit letter_coding_rule(Letter prev, Letter cur) {
    return prev == cur ? LehnerDigit::d21 : LehnerDigit::d11;
}

// ---------------------------------------------------------------------------
// exact circular-order predicates on the boundary R u {inf}

namespace {

// x lies strictly inside the counterclockwise arc from s to t
// (counterclockwise = increasing reals, wrapping through infinity).
bool in_ccw_arc(const ExactReal& x, const ExactReal& s, const ExactReal& t) {
    if (x == s || x == t) return false;
    if (s.is_infinity()) return !x.is_infinity() && x < t;
    if (t.is_infinity()) return !x.is_infinity() && x > s;
    if (s < t) return !x.is_infinity() && x > s && x < t;
    return x.is_infinity() || x > s || x < t;
}

// x in the arc between p and q that does not contain r.
bool arc_between_excluding(const ExactReal& x, const ExactReal& p, const ExactReal& q,
                           const ExactReal& r) {
    return in_ccw_arc(r, p, q) ? in_ccw_arc(x, q, p) : in_ccw_arc(x, p, q);
}

// +1 when x is on the mediant side of the edge, -1 on the comediant side,
// 0 when x is one of the vertices.
int side_of(const ExactReal& x, const Edge& e) {
    if (e.a.is_inf() || e.b.is_inf()) {
        ExactReal av = e.a.is_inf() ? e.b.value() : e.a.value();
        if (x.is_infinity()) return 0;
        int c = x.compare(av);
        return c == 0 ? 0 : (c > 0 ? +1 : -1);
    }
    ExactReal va = e.a.value(), vb = e.b.value();
    if (x == va || x == vb) return 0;
    if (x.is_infinity()) return -1;
    ExactReal lo = va < vb ? va : vb;
    ExactReal hi = va < vb ? vb : va;
    return (x > lo && x < hi) ? +1 : -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// start edge and walker

Edge find_start_edge(const ExactReal& backward, const ExactReal& forward) {
    const ExactReal& u = backward;
    const ExactReal& w = forward;
    if (u == w) raise(errc::degenerate_endpoints, "endpoints coincide");

    bool u_cusp = u.is_rational() || u.is_infinity();
    bool w_cusp = w.is_rational() || w.is_infinity();
    if (u_cusp && w_cusp && farey_neighbors(Cusp::from_exact(u), Cusp::from_exact(w)))
        raise(errc::excluded_geodesic, "endpoints span a tessellation edge");

    if (u.is_infinity() || w.is_infinity()) {
        const ExactReal& fin = u.is_infinity() ? w : u;
        mpz_class n = fin.floor();
        return Edge{normalized_cusp(n, 1), normalized_cusp(n + 1, 1)};
    }

    ExactReal lo = u < w ? u : w;
    ExactReal hi = u < w ? w : u;
    mpz_class k = lo.floor() + 1;
    if (ExactReal::from_mpz(k) > lo && ExactReal::from_mpz(k) < hi)
        return Edge{normalized_cusp(k, 1), Cusp{1, 0}};

    // both endpoints inside one unit interval: Stern-Brocot descent
    Cusp a = normalized_cusp(lo.floor(), 1);
    Cusp b = normalized_cusp(lo.floor() + 1, 1);
    for (int guard = 0; guard < 100000; ++guard) {
        Cusp m = mediant(a, b);
        ExactReal mv = m.value();
        int cu = u.compare(mv), cw = w.compare(mv);
        if (cu == 0) {
            if (cw < 0) b = m; else a = m;
            continue;
        }
        if (cw == 0) {
            if (cu < 0) b = m; else a = m;
            continue;
        }
        if (cu < 0 && cw < 0) {
            b = m;
            continue;
        }
        if (cu > 0 && cw > 0) {
            a = m;
            continue;
        }
        // strictly separated by the mediant
        const ExactReal& pl = cu < 0 ? u : w;
        const ExactReal& ph = cu < 0 ? w : u;
        if (pl == a.value()) return Edge{m, b};
        if (ph == b.value()) return Edge{a, m};
        return Edge{a, m};
    }
    raise(errc::budget_exceeded, "start-edge descent did not separate the endpoints");
}

FareyWalker::FareyWalker(ExactReal backward, ExactReal forward, Edge start)
    : u_(std::move(backward)), w_(std::move(forward)), edge_(std::move(start)) {}

std::optional<FareyWalker::Step> FareyWalker::advance() {
    int side = side_of(w_, edge_);
    if (side == 0) return std::nullopt;  // forward endpoint sits on the edge
    Cusp v = side > 0 ? mediant(edge_.a, edge_.b) : comediant(edge_.a, edge_.b);
    ExactReal vv = v.value();
    if (w_ == vv) return std::nullopt;  // the geodesic runs into the cusp v

    ExactReal av = edge_.a.value(), bv = edge_.b.value();
    Cusp shared;
    Edge exit;
    if (arc_between_excluding(w_, av, vv, bv)) {
        shared = edge_.a;
        exit = Edge{edge_.a, v};
    } else if (arc_between_excluding(w_, vv, bv, av)) {
        shared = edge_.b;
        exit = Edge{v, edge_.b};
    } else {
        return std::nullopt;
    }
    bool left = in_ccw_arc(shared.value(), w_, u_);
    edge_ = exit;
    return Step{left ? Letter::L : Letter::R, shared, exit};
}

WalkResult cutting_sequence_geometric(const Geodesic& g, size_t max_letters) {
    if (g.backward == g.forward) raise(errc::degenerate_endpoints, "endpoints coincide");
    Edge start;
    if (in_S(g.forward, g.backward)) {
        if (g.forward > kZero)
            start = Edge{normalized_cusp(1, 1), normalized_cusp(2, 1)};
        else
            start = Edge{normalized_cusp(-2, 1), normalized_cusp(-1, 1)};
    } else {
        start = find_start_edge(g.backward, g.forward);
    }
    FareyWalker walker(g.backward, g.forward, start);
    WalkResult out;
    while (out.letters.size() < max_letters) {
        auto step = walker.advance();
        if (!step) {
            out.hit_cusp = true;
            return out;
        }
        out.letters.push_back(static_cast<char>(step->letter));
    }
    return out;
}

// ---------------------------------------------------------------------------
// runs and their endpoint words

CuttingSequence cutting_sequence_from_rcf(const Geodesic& g) {
    if (g.forward.is_infinity() || g.forward <= kOne)
        raise(errc::out_of_window, "forward endpoint must lie in (1,oo)");
    if (g.backward.is_infinity() || g.backward <= kMinusOne || g.backward >= kZero)
        raise(errc::out_of_window, "backward endpoint must lie in (-1,0)");
    CuttingSequence cs;
    RcfExpansion fwd = rcf_expand(g.forward);
    cs.n0 = fwd.head;
    cs.forward_runs = fwd.digits;
    RcfExpansion bwd = rcf_expand((-g.backward).reciprocal());
    std::vector<RcfDigit> pre;
    pre.push_back(RcfDigit{bwd.head});
    pre.insert(pre.end(), bwd.digits.preperiod.begin(), bwd.digits.preperiod.end());
    cs.backward_runs = DigitSequence<RcfDigit>(std::move(pre), bwd.digits.period);
    return cs;
}

namespace {

void check_runs(const DigitSequence<RcfDigit>& runs) {
    for (const auto& r : runs.preperiod)
        if (r.n < 1) raise(errc::invalid_runs, "runs must be >= 1");
    for (const auto& r : runs.period)
        if (r.n < 1) raise(errc::invalid_runs, "runs must be >= 1");
}

// (2,-1)^(n-1) (1,+1) per run
void lehner_block(std::vector<LehnerDigit>& out, const mpz_class& n) {
    for (mpz_class i = 1; i < n; ++i) out.push_back(LehnerDigit::d21);
    out.push_back(LehnerDigit::d11);
}

// (1,+1)(-1/2)^count
void farey_block(std::vector<FareyDigit>& out, const mpz_class& count) {
    out.push_back(FareyDigit::p11);
    for (mpz_class i = 0; i < count; ++i) out.push_back(FareyDigit::m12);
}

}  // namespace

EndpointWords decode_runs(const CuttingSequence& cs) {
    if (cs.n0 < 1) raise(errc::invalid_runs, "n0 must be >= 1");
    check_runs(cs.forward_runs);
    check_runs(cs.backward_runs);

    // Uniform block reading of the two-sided line: the forward endpoint's
    // Lehner word runs over n0, n1, n2, ... and the backward endpoint's Farey
    // word over n_-1, n_-2, ...; the run containing the cell entry point is
    // n0 and belongs to the forward word.
    EndpointWords words;
    {
        std::vector<LehnerDigit> pre, per;
        lehner_block(pre, cs.n0);
        for (const auto& r : cs.forward_runs.preperiod) lehner_block(pre, r.n);
        for (const auto& r : cs.forward_runs.period) lehner_block(per, r.n);
        words.forward = DigitSequence<LehnerDigit>(std::move(pre), std::move(per));
    }
    {
        std::vector<FareyDigit> pre, per;
        for (const auto& r : cs.backward_runs.preperiod) farey_block(pre, r.n - 1);
        for (const auto& r : cs.backward_runs.period) farey_block(per, r.n - 1);
        words.backward = DigitSequence<FareyDigit>(std::move(pre), std::move(per));
    }
    return words;
}

Geodesic decoded_geodesic(const EndpointWords& words) {
    return Geodesic{-farey_value(words.backward), lehner_value(words.forward)};
}

// ---------------------------------------------------------------------------
// lift into S

namespace {

// M in GL(2,Z) with M(0) = c1, M(inf) = c2, M(1) = c3 for a cusp triple
// forming a tessellation triangle (pairwise neighbors); det is +-1.
UnimodularMap tri_map(const Cusp& c1, const Cusp& c2, const Cusp& c3) {
    mpz_class mu = c1.q * c3.p - c1.p * c3.q;
    mpz_class la = c2.p * c3.q - c2.q * c3.p;
    if (abs(mu) != 1 || abs(la) != 1)
        raise(errc::invalid_number, "cusp triple is not a tessellation triangle");
    return UnimodularMap(mu * c2.p, la * c1.p, mu * c2.q, la * c1.q);
}

struct CrossingTriple {
    Cusp shared, entry_other, exit_other;
};

// First triangle crossing of the geodesic (u,w), walking forward from the
// start edge, or backward when the forward direction terminates immediately.
std::optional<CrossingTriple> first_crossing(const ExactReal& u, const ExactReal& w,
                                             const Edge& start) {
    FareyWalker fwd(u, w, start);
    if (auto st = fwd.advance()) {
        return CrossingTriple{st->shared, start.other(st->shared), st->exit.other(st->shared)};
    }
    FareyWalker bwd(w, u, start);
    if (auto st = bwd.advance()) {
        // in forward order the geodesic crosses st->exit, then start
        return CrossingTriple{st->shared, st->exit.other(st->shared), start.other(st->shared)};
    }
    return std::nullopt;
}

}  // namespace

LiftResult lift_to_A(const Geodesic& g) {
    if (g.backward == g.forward) raise(errc::degenerate_endpoints, "endpoints coincide");
    if (in_S(g.forward, g.backward)) return LiftResult{g, UnimodularMap::identity()};

    Edge start = find_start_edge(g.backward, g.forward);
    auto crossing = first_crossing(g.backward, g.forward, start);
    if (!crossing)
        raise(errc::excluded_geodesic,
              "geodesic crosses fewer than two tessellation edges; no lift into S");

    UnimodularMap source = tri_map(crossing->shared, crossing->entry_other, crossing->exit_other);
    // model crossing: enter {1,inf}, exit {1,2}, shared vertex 1 (or the
    // mirrored crossing at (-2,-1) when orientations disagree)
    static const UnimodularMap pos_target =
        tri_map(Cusp{1, 1}, Cusp{1, 0}, Cusp{2, 1});
    static const UnimodularMap neg_target =
        tri_map(Cusp{-1, 1}, Cusp{1, 0}, Cusp{-2, 1});
    UnimodularMap h = pos_target * source.inverse();
    if (h.det() != 1) h = neg_target * source.inverse();
    if (h.det() != 1) raise(errc::excluded_geodesic, "no orientation-preserving lift found");

    Geodesic lifted{h(g.backward), h(g.forward)};
    if (!in_S(lifted.forward, lifted.backward))
        raise(errc::excluded_geodesic, "reduction left the window; no lift into S");
    return LiftResult{std::move(lifted), std::move(h)};
}

// ---------------------------------------------------------------------------
// rho, J, and the commuting diagram

namespace {

// e = sign(forward), a0 = first Lehner digit quotient of |forward|
std::pair<int, mpz_class> rho_branch(const ExactReal& forward) {
    if (forward.is_infinity())
        raise(errc::out_of_domain, "forward endpoint must be finite");
    int eps = forward.sign();
    ExactReal mag = eps < 0 ? -forward : forward;
    if (mag <= kOne || mag >= kTwo)
        raise(errc::out_of_domain, "|forward| must lie in (1,2)");
    // canonical first digit: the boundary 3/2 carries (2,-1)
    mpz_class a0 = mag <= kThreeHalves ? 2 : 1;
    return {eps, a0};
}

}  // namespace

ExactReal rho_point(const ExactReal& z, const ExactReal& forward) {
    auto [eps, a0] = rho_branch(forward);
    ExactReal pivot = ExactReal::from_mpz(eps < 0 ? -a0 : a0);
    if (z.is_infinity()) return kZero;
    ExactReal den = pivot - z;
    if (den.is_zero()) raise(errc::division_by_zero, "z equals the rho pivot");
    return den.reciprocal();
}

HPoint rho_point(const HPoint& z, const ExactReal& forward) {
    auto [eps, a0] = rho_branch(forward);
    ExactReal pivot = ExactReal::from_mpz(eps < 0 ? -a0 : a0);
    ExactReal dx = pivot - z.re;
    ExactReal norm = dx * dx + z.im * z.im;
    if (norm.is_zero()) raise(errc::division_by_zero, "z equals the rho pivot");
    return HPoint{dx / norm, z.im / norm};
}

SPoint rho_bar(const SPoint& p) {
    return SPoint(rho_point(p.x, p.x), rho_point(p.y, p.x));
}

OmegaPoint J_map(const SPoint& p) {
    if (p.x > kZero) return OmegaPoint(p.x, -p.y, +1);
    return OmegaPoint(-p.x, p.y, -1);
}

SPoint J_inverse(const OmegaPoint& p) {
    if (p.eps > 0) return SPoint(p.x, -p.y);
    return SPoint(-p.x, p.y);
}

bool commute_check(const SPoint& p) {
    OmegaPoint lhs = J_map(rho_bar(p));
    OmegaPoint rhs = natext_step(J_map(p));
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// cell crossings and the return time

namespace {

struct Circle {
    ExactReal center;
    ExactReal radius_sq;
};

// upper intersection of two circles centered on the real axis; nullopt when
// they do not meet in the open upper half plane
std::optional<std::pair<ExactReal, ExactReal>> circle_meet_exact(const Circle& c1,
                                                                 const Circle& c2) {
    ExactReal dc = c2.center - c1.center;
    if (dc.is_zero()) return std::nullopt;
    ExactReal x = (c1.radius_sq - c2.radius_sq + c2.center * c2.center -
                   c1.center * c1.center) /
                  (dc * kTwo);
    ExactReal ysq = c1.radius_sq - (x - c1.center) * (x - c1.center);
    // tangency (ysq = 0) happens when the geodesic ends at the arc's cusp
    // corner; the crossing degenerates to the boundary point
    if (ysq < kZero) return std::nullopt;
    return std::make_pair(x, ysq);
}

CrossingPoint crossing_from(const ExactReal& x, const ExactReal& ysq, mpfr_prec_t prec) {
    CrossingPoint pt;
    pt.x = to_float(x, prec);
    pt.y = to_float(ysq, prec).sqrt();
    if (auto root = exact_sqrt(ysq)) {
        pt.exact = true;
        pt.ex = x;
        pt.ey = *root;
    }
    return pt;
}

Circle geodesic_circle(const Geodesic& g) {
    ExactReal c = (g.backward + g.forward) / kTwo;
    ExactReal half = (g.forward - g.backward) / kTwo;
    return Circle{c, half * half};
}

}  // namespace

CellCrossing xi_eta(const Geodesic& g, mpfr_prec_t prec) {
    if (g.backward.is_infinity() || g.forward.is_infinity())
        raise(errc::no_intersection, "vertical geodesics miss the cell arcs");
    if (!in_S(g.forward, g.backward))
        raise(errc::no_intersection, "geodesic is not in the window");
    auto [eps, a0] = rho_branch(g.forward);
    long s = eps;

    auto run = [&](const ExactReal& u, const ExactReal& w) -> CellCrossing {
        Circle geo = geodesic_circle(Geodesic{u, w});
        Circle xi_arc{ExactReal::from_rational(3 * s, 2), ExactReal::from_rational(1, 4)};
        // eta arc: sign * [a0 + e0, 3/2]; a0+e0 is 1 for (2,-1) and 2 for (1,+1)
        long a0e0 = a0 == 2 ? 1 : 2;
        ExactReal eta_center = ExactReal::from_rational(s * (2 * a0e0 + 3), 4);
        Circle eta_arc{eta_center, ExactReal::from_rational(1, 16)};

        auto xi = circle_meet_exact(geo, xi_arc);
        auto eta = circle_meet_exact(geo, eta_arc);
        if (!xi || !eta) raise(errc::no_intersection, "geodesic misses a cell arc");
        return CellCrossing{crossing_from(xi->first, xi->second, prec),
                            crossing_from(eta->first, eta->second, prec)};
    };

    try {
        return run(g.backward, g.forward);
    } catch (const mf_error& e) {
        if (e.code() != errc::not_same_field) throw;
    }
    // endpoints in different quadratic fields: 128-bit floating fallback
    BigFloat u = to_float(g.backward, prec), w = to_float(g.forward, prec);
    BigFloat c = (u + w) / BigFloat::from_double(2.0, prec);
    BigFloat rsq = (w - u) / BigFloat::from_double(2.0, prec);
    rsq = rsq * rsq;
    auto meet_f = [&](double center, double radius_sq) {
        BigFloat cc = BigFloat::from_double(center, prec);
        BigFloat rr = BigFloat::from_double(radius_sq, prec);
        BigFloat dc = cc - c;
        BigFloat x = (rsq - rr + cc * cc - c * c) / (dc + dc);
        BigFloat ysq = rsq - (x - c) * (x - c);
        CrossingPoint pt;
        pt.x = x;
        pt.y = ysq.sqrt();
        return pt;
    };
    long a0e0 = a0 == 2 ? 1 : 2;
    CellCrossing out{meet_f(1.5 * s, 0.25),
                     meet_f(s * (2 * a0e0 + 3) / 4.0, 1.0 / 16.0)};
    return out;
}

BigFloat return_time(const Geodesic& g, mpfr_prec_t prec) {
    CellCrossing cc = xi_eta(g, prec);
    BigFloat dx = cc.xi.x - cc.eta.x;
    BigFloat dy = cc.xi.y - cc.eta.y;
    BigFloat one = BigFloat::from_double(1.0, prec);
    BigFloat two = BigFloat::from_double(2.0, prec);
    BigFloat arg = one + (dx * dx + dy * dy) / (two * cc.xi.y * cc.eta.y);
    return arg.acosh();
}

Eq7Report eval_eq7_formula(const Geodesic& g, mpfr_prec_t prec) {
    auto [eps, a0_fwd] = rho_branch(g.forward);
    ExactReal back_mag = g.backward.sign() < 0 ? -g.backward : g.backward;
    if (back_mag <= kOne || back_mag >= kTwo)
        raise(errc::formula_undefined, "|backward| outside [1,2): e0(backward) undefined");
    int e0_fwd = a0_fwd == 2 ? -1 : +1;
    mpz_class a0_bwd = back_mag < kThreeHalves ? 2 : 1;
    int e0_bwd = a0_bwd == 2 ? -1 : +1;

    BigFloat rw = to_float(rho_point(g.forward, g.forward), prec);
    BigFloat ru = to_float(rho_point(g.backward, g.forward), prec);
    auto bf = [&](double v) { return BigFloat::from_double(v, prec); };
    BigFloat ef = bf(eps * e0_fwd), eb = bf(eps * e0_bwd);
    BigFloat num = (rw + ef) * (rw + ef + ef) * (bf(1.0) - ru);
    BigFloat den = (ru + eb) * (ru + eb + eb) * (bf(1.0) - rw);
    Eq7Report rep{((num / den).abs().log()) / bf(2.0), return_time(g, prec), bf(0.0)};
    rep.abs_diff = (rep.formula_value - rep.arcosh_value).abs();
    return rep;
}

ReRhoEtaResult re_rho_eta(const Geodesic& g, mpfr_prec_t prec) {
    auto [eps, a0] = rho_branch(g.forward);
    int e0 = a0 == 2 ? -1 : +1;
    int sign_x = -eps * e0;

    ReRhoEtaResult out;
    bool formula_exact = true;
    ExactReal formula;
    try {
        ExactReal rw = rho_point(g.forward, g.forward);
        ExactReal ru = rho_point(g.backward, g.forward);
        formula = (kTwo - rw * ru) /
                  (ExactReal::from_int(3 * sign_x) - rw - ru);
    } catch (const mf_error& e) {
        if (e.code() != errc::not_same_field) throw;
        formula_exact = false;
    }
    if (formula_exact) {
        out.exact = true;
        out.exact_value = formula;
        out.value = to_float(formula, prec);
    } else {
        BigFloat rw = to_float(g.forward, prec), ru = to_float(g.backward, prec);
        BigFloat pivot = BigFloat::from_double(double(eps) * a0.get_d(), prec);
        BigFloat one = BigFloat::from_double(1.0, prec);
        rw = one / (pivot - rw);
        ru = one / (pivot - ru);
        BigFloat two = BigFloat::from_double(2.0, prec);
        out.value = (two - rw * ru) /
                    (BigFloat::from_double(3.0 * sign_x, prec) - rw - ru);
    }

    // independent computation: Re of rho applied to the eta crossing point
    CellCrossing cc = xi_eta(g, prec);
    ExactReal pivot_exact = ExactReal::from_mpz(eps < 0 ? -a0 : a0);
    BigFloat px = to_float(pivot_exact, prec);
    BigFloat dx = px - cc.eta.x;
    BigFloat nsq = dx * dx + cc.eta.y * cc.eta.y;
    BigFloat re_indep = dx / nsq;
    BigFloat tol = BigFloat::pow2(-80, prec);
    if (!((out.value - re_indep).abs() < tol))
        raise(errc::no_intersection, "closed form disagrees with the intersection computation");

    if (out.exact && cc.eta.exact) {
        ExactReal edx = pivot_exact - cc.eta.ex;
        ExactReal ensq = edx * edx + cc.eta.ey * cc.eta.ey;
        if (edx / ensq != out.exact_value)
            raise(errc::no_intersection, "exact closed form disagrees with intersection");
    }
    return out;
}

// ---------------------------------------------------------------------------
// closed geodesics and the orbit of 0

ClosedGeodesicResult closed_geodesic_test(const std::vector<LehnerDigit>& forward_period) {
    if (forward_period.empty()) raise(errc::invalid_period, "period must be nonempty");
    DigitSequence<LehnerDigit> canon({}, forward_period);
    if (canon.period.size() != forward_period.size())
        raise(errc::invalid_period, "period is a power of a shorter word");

    ExactReal alpha = lehner_value(canon);
    if (!alpha.is_surd())
        raise(errc::invalid_period, "period value is rational; the pair degenerates");
    ExactReal beta = conjugate(alpha);

    int sign_product = 1;
    for (LehnerDigit d : forward_period) sign_product *= -lehner_sign(d);

    unsigned long r = forward_period.size();
    SPoint p(alpha, beta);
    SPoint q = p;
    for (unsigned long i = 0; i < r; ++i) q = rho_bar(q);
    SPoint expect = sign_product > 0 ? p : SPoint(-alpha, -beta);
    if (!(q == expect))
        raise(errc::invalid_period, "rho-bar iteration does not realize the period");
    unsigned long rho_period = r;
    if (sign_product < 0) {
        for (unsigned long i = 0; i < r; ++i) q = rho_bar(q);
        if (!(q == p))
            raise(errc::invalid_period, "rho-bar^2r is not the identity on the pair");
        rho_period = 2 * r;
    }
    return ClosedGeodesicResult{true, rho_period};
}

UnimodularMap orbit_of_zero(const ExactReal& target) {
    if (target.is_infinity()) return UnimodularMap(0, 1, -1, 0);
    if (!target.is_rational()) raise(errc::invalid_number, "target must be rational or infinity");
    mpz_class p = target.as_rational().get_num();
    mpz_class q = target.as_rational().get_den();
    // a q - c p = 1 via Bezout
    mpz_class gcd_v, s, t;
    mpz_gcdext(gcd_v.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    // s q + t p = 1
    return UnimodularMap(s, p, -t, q);
}

}  // namespace modflow
