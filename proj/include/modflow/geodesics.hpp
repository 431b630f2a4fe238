#pragma once

#include <optional>
#include <string>

#include "modflow/natext.hpp"

namespace modflow {

/**
 * The modular-surface side: Farey-tessellation cutting sequences (exact
 * geometric walker and the RCF correspondence), constructive lifts into the
 * window
 *
 *     S = ((1,2) x (-oo,1))  u  ((-2,-1) x (-1,oo))
 *
 * of forward/backward endpoint pairs, the cross-section map rho-bar and its
 * conjugacy J with the natural extension, decoding of two-sided runs into
 * Lehner/Farey endpoint words, closed-geodesic detection, and the return-time
 * geometry of the cell crossing points xi/eta.
 */

// Tessellation vertex p/q in lowest terms, q >= 0; (1,0) is infinity.
struct Cusp {
    mpz_class p, q;

    static Cusp from_exact(const ExactReal& x);
    ExactReal value() const;
    bool is_inf() const { return q == 0; }
    bool operator==(const Cusp& o) const { return p == o.p && q == o.q; }
    bool operator!=(const Cusp& o) const { return !(*this == o); }
};

Cusp normalized_cusp(mpz_class p, mpz_class q);
bool farey_neighbors(const Cusp& a, const Cusp& b);
Cusp mediant(const Cusp& a, const Cusp& b);
Cusp comediant(const Cusp& a, const Cusp& b);

// Unordered tessellation edge between two Farey-neighbor cusps.
struct Edge {
    Cusp a, b;
    bool has_vertex(const Cusp& v) const { return a == v || b == v; }
    Cusp other(const Cusp& v) const;
};

struct Geodesic {
    ExactReal backward, forward;
};

bool in_S(const ExactReal& forward, const ExactReal& backward);

// Point of the cross-section window; construction validates membership.
struct SPoint {
    ExactReal x, y;  // x = forward endpoint, y = backward endpoint
    SPoint(ExactReal x_, ExactReal y_);
    bool operator==(const SPoint& o) const { return x == o.x && y == o.y; }
};

enum class Letter : char { L = 'L', R = 'R' };

// Same letter as the previous one -> (2,-1); a change -> (1,+1).
LehnerDigit letter_coding_rule(Letter prev, Letter cur);

// Some tessellation edge strictly separating the two endpoints.
Edge find_start_edge(const ExactReal& backward, const ExactReal& forward);

/**
 * Walks the triangles the oriented geodesic crosses, one edge at a time,
 * emitting L when the entry/exit edges' shared vertex lies left of the
 * geodesic and R when right. All orientation tests are exact.
 */
class FareyWalker {
public:
    struct Step {
        Letter letter;
        Cusp shared;
        Edge exit;
    };

    FareyWalker(ExactReal backward, ExactReal forward, Edge start);

    // nullopt once the forward endpoint's cusp is reached
    std::optional<Step> advance();

    const Edge& edge() const { return edge_; }

private:
    ExactReal u_, w_;
    Edge edge_;
};

struct WalkResult {
    std::string letters;  // over {L,R}
    bool hit_cusp = false;
};

// Letters of the forward walk; starts at the edge (1,2) / (-2,-1) for window
// members and at find_start_edge otherwise.
WalkResult cutting_sequence_geometric(const Geodesic& g, size_t max_letters);

/**
 * Two-sided run-length sequence ... n_-1 [n0] n1 ... of a geodesic in the
 * Series window (forward in (1,oo), backward in (-1,0)): n0 and the forward
 * runs come from the RCF of the forward endpoint, the backward runs from the
 * RCF of -1/backward.
 */
struct CuttingSequence {
    mpz_class n0;
    DigitSequence<RcfDigit> forward_runs;
    DigitSequence<RcfDigit> backward_runs;
};

CuttingSequence cutting_sequence_from_rcf(const Geodesic& g);

struct EndpointWords {
    DigitSequence<LehnerDigit> forward;
    DigitSequence<FareyDigit> backward;
};

// The run-to-word reading of the cutting sequence: the Lehner word of the
// forward endpoint runs over n0, n1, ... and the Farey word of the backward
// endpoint over n_-1, n_-2, ..., one block per run.
EndpointWords decode_runs(const CuttingSequence& cs);

// Endpoint pair of the decoded words: (lehner value, -farey value).
Geodesic decoded_geodesic(const EndpointWords& words);

struct LiftResult {
    Geodesic lifted;
    UnimodularMap witness;  // witness(g) = lifted
};

// Constructive lift into S via one walked triangle crossing mapped onto the
// model crossing at the edge (1,2) or (-2,-1); identity when g is already
// inside. Farey-edge endpoint pairs (and cusp pairs crossing fewer than two
// edges) are excluded.
LiftResult lift_to_A(const Geodesic& g);

// rho(z) = 1/(e a0 - z) where e = sign(forward) and a0 is the first Lehner
// digit quotient of |forward| (the canonical digit, so a0(3/2) = 2).
ExactReal rho_point(const ExactReal& z, const ExactReal& forward);

// Upper half-plane point with exact coordinates in one quadratic field.
struct HPoint {
    ExactReal re, im;
    bool operator==(const HPoint& o) const { return re == o.re && im == o.im; }
};

// rho on points of the plane: 1/(e a0 - z) by complex reciprocal.
HPoint rho_point(const HPoint& z, const ExactReal& forward);

// Induced map on endpoint pairs; output is again in S.
SPoint rho_bar(const SPoint& p);

// J(x,y) = sign(x) (x, -y, 1); conjugates rho_bar with the sign-tracking
// natural extension.
OmegaPoint J_map(const SPoint& p);
SPoint J_inverse(const OmegaPoint& p);

// J(rho_bar(p)) == natext_step(J(p)), exactly.
bool commute_check(const SPoint& p);

// Upper half-plane point, exact when the coordinates stay in one quadratic
// field and 128-bit floating otherwise.
struct CrossingPoint {
    bool exact = false;
    ExactReal ex, ey;
    BigFloat x, y;
};

struct CellCrossing {
    CrossingPoint xi, eta;
};

// Entry and exit points of the geodesic through the fundamental cell: xi on
// the arc sign*[1,2], eta on the arc sign*[a0+e0, 3/2]; circle-circle
// intersections, upper solutions.
CellCrossing xi_eta(const Geodesic& g, mpfr_prec_t prec = 128);

// Hyperbolic distance between xi and eta.
BigFloat return_time(const Geodesic& g, mpfr_prec_t prec = 128);

// Report-only evaluation of the closed-form distance expression; raises
// FormulaUndefined when |backward| is outside [1,2).
struct Eq7Report {
    BigFloat formula_value;
    BigFloat arcosh_value;
    BigFloat abs_diff;
};
Eq7Report eval_eq7_formula(const Geodesic& g, mpfr_prec_t prec = 128);

// Re rho(eta) two ways: the closed form (2 - rho(w) rho(u))/(3 sgn - rho(w)
// - rho(u)) against the independent intersection computation.
struct ReRhoEtaResult {
    bool exact = false;
    ExactReal exact_value;
    BigFloat value;
};
ReRhoEtaResult re_rho_eta(const Geodesic& g, mpfr_prec_t prec = 128);

struct ClosedGeodesicResult {
    bool closed;
    unsigned long rho_period;
};

// The geodesic with purely periodic endpoint pair built from the Lehner
// period and its reversed dual is closed; rho_period is r or 2r depending on
// the sign product over the period. Verified by iterating rho_bar.
ClosedGeodesicResult closed_geodesic_test(const std::vector<LehnerDigit>& forward_period);

// M in PSL(2,Z) with M(0) = p/q (or infinity), via Bezout coefficients.
UnimodularMap orbit_of_zero(const ExactReal& target);

}  // namespace modflow
