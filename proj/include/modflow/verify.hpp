#pragma once

#include <cstdint>
#include <string>

#include "modflow/geodesics.hpp"
#include "modflow/mobius_system.hpp"

namespace modflow {

/**
 * Seeded deterministic verification sweeps over the library's exact identities.
 * Each sweep draws its own sample stream from the seed, so a (suite, samples,
 * seed) triple always reproduces the same result.
 */
struct SweepResult {
    std::string suite;
    size_t total = 0;
    size_t passed = 0;
    std::string first_counterexample;

    bool ok() const { return total > 0 && passed == total; }
};

// Transfer-operator identities for L, F and F*, exact rational arithmetic.
SweepResult sweep_transfer(size_t samples, uint64_t seed);

// Jacobian invariance for the natural extensions (1/(x+y)^2 and 1/(1+xy)^2)
// plus step/inverse round trips.
SweepResult sweep_natext(size_t samples, uint64_t seed);

// J o rho_bar = Ltilde o J at rational window points and the sqrt2 witnesses.
SweepResult sweep_commute(size_t samples, uint64_t seed);

// Decode/walker round trip over the periodic run census (runs <= 4,
// period <= 3), capped at `samples` patterns.
SweepResult sweep_theorem1(size_t samples, uint64_t seed);

// Closed-geodesic and rho-bar-period laws over all primitive Lehner periods
// of length <= 4.
SweepResult sweep_closed(size_t samples, uint64_t seed);

// Dispatch by suite name; raises UnknownSuite.
SweepResult run_sweep(const std::string& suite, size_t samples, uint64_t seed);

}  // namespace modflow
