#pragma once

#include "coarse/decomp.hpp"

namespace coarse {

/// Partition of unity subordinate to a uniformly bounded cover, with small
/// variation over pairs at distance <= R. Function values are exact
/// rationals and the unit-sum invariant is exact.
struct ExactnessWitness {
    SpacePtr space;
    std::vector<Subset> cover;
    /// phi[u][k] = value of the u-th function at the k-th point of the space.
    std::vector<std::vector<Rat>> phi;
    Rat R;
    Rat eps;
    Rat B;  // diameter bound for the cover
};

struct WitnessReport {
    bool valid = true;
    bool subordinate = true;
    bool unit_sum = true;
    bool cover_bounded = true;
    Rat worst_variation;
    std::pair<int, int> worst_pair{-1, -1};
    std::string detail;
};

/// Checks subordination, exact unit sums, the cover bound, and
/// sum_U |phi_U(x) - phi_U(y)| <= eps for every pair with d(x,y) <= R.
WitnessReport verify_witness(const ExactnessWitness& w);

/// Builds a witness from a game round with challenge r >= 4R/eps: over each
/// piece P of that round, the tent phi_P(x) = max(0, 1 - 2 d(x,P)/r)
/// normalized to exact unit sum, subordinate to the cover N_{r/2}(P).
/// Throws NO_SUITABLE_STEP when no round's challenge reaches the threshold.
ExactnessWitness pou_from_certificate(const DecompositionCertificate& cert, const Rat& R,
                                      const Rat& eps);

} // namespace coarse
