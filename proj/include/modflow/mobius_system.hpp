#pragma once

#include <string>
#include <vector>

#include "modflow/digits.hpp"

namespace modflow {

// Interval with endpoint-inclusion flags; hi may be the projective infinity
// (then hi_closed is meaningless and kept false).
struct EndIval {
    ExactReal lo, hi;
    bool lo_closed = true, hi_closed = false;

    bool contains(const ExactReal& x) const {
        if (x.is_infinity()) return false;
        int cl = lo.compare(x);
        if (cl > 0 || (cl == 0 && !lo_closed)) return false;
        int ch = x.compare(hi);
        if (ch > 0 || (ch == 0 && !hi_closed)) return false;
        return true;
    }
};

// One branch: an interval cell carrying a 2x2 integer matrix. Entries are
// stored raw so defective (even singular) systems can be represented and
// reported on instead of rejected at construction.
struct MobiusCell {
    EndIval iv;
    mpz_class a, b, c, d;

    mpz_class det() const { return a * d - b * c; }
    UnimodularMap map() const { return UnimodularMap(a, b, c, d); }
};

/**
 * A piecewise-Moebius interval map: the cell closures partition the carrier
 * and each cell's matrix maps its cell bijectively onto the carrier.
 */
struct MobiusSystem {
    EndIval carrier;
    std::vector<MobiusCell> cells;

    // index of the cell whose interval contains x (inclusion flags honored)
    size_t cell_of(const ExactReal& x) const;
};

struct SystemReport {
    bool ok = true;
    std::vector<std::string> defects;
};

// Checks the three defining conditions on cell closures: nonzero
// determinants, closures partitioning the carrier closure, and each branch
// mapping its cell closure onto the carrier closure (pole at most at an
// endpoint), with the orientation recorded from the determinant sign.
SystemReport verify_system(const MobiusSystem& s);

/**
 * Builds the transpose system on the supplied dual partition. Each
 * transposed matrix is matched to the dual cell it bijects onto the dual
 * carrier; dual.cells[i] stays paired with s.cells[i]. Raises when no
 * perfect matching exists or the result fails verify_system.
 */
MobiusSystem natural_dual(const MobiusSystem& s, const EndIval& dual_carrier,
                          const std::vector<EndIval>& dual_cells);

// Two-cell helper: searches for the unique partition point of the dual
// carrier at which the transposed matrices become branches onto it, trying
// the preimages of the carrier endpoints under each transpose.
std::vector<EndIval> dual_partition_for(const MobiusSystem& s, const EndIval& dual_carrier);

// The built-in systems.
MobiusSystem farey_system();   // carrier [-1,oo)
MobiusSystem lehner_system();  // carrier [1,2)
MobiusSystem fstar_system();   // carrier (1/2,1]

// (M_cell x, N_cell^-1 y) with matched cells of a system/dual pair.
std::pair<ExactReal, ExactReal> dual_natext_step(const MobiusSystem& s,
                                                 const MobiusSystem& dual, const ExactReal& x,
                                                 const ExactReal& y);

/**
 * The dual expansion map F* on (1/2,1]:
 *     F*(x) = 1/x - 1  on (1/2,2/3]   digit (1,+1),
 *     F*(x) = 2 - 1/x  on (2/3,1]     digit (2,-1);
 * conjugate to the Lehner map by x -> 1/x.
 */
std::pair<LehnerDigit, ExactReal> fstar_step(const ExactReal& x);

struct FstarExpansion {
    DigitSequence<LehnerDigit> digits;
    // true when a rational orbit exited through the carrier edge 1/2
    bool boundary_terminated = false;
};

// Digit stream equals the Lehner expansion of 1/x (including the canonical
// finite words for rationals).
FstarExpansion fstar_expand(const ExactReal& x, size_t max_digits = 4096);

// Exact two-branch transfer-operator identity for 1/(x(1-x)) on (1/2,1).
bool transfer_check_Fstar(const ExactReal& x);

// Hand-written natural extension of F* on (1/2,1] x [-1,oo).
std::pair<ExactReal, ExactReal> fbar_step(const ExactReal& x, const ExactReal& y);

// h(Fbar(x,y)) |Jac| = h(x,y) for h = 1/(1+xy)^2, exactly.
bool invariance_check_1pxy(const ExactReal& x, const ExactReal& y);

}  // namespace modflow
