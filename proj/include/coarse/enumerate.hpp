#pragma once

#include "coarse/norms.hpp"

#include <vector>

namespace coarse {

/// Catalog rings whose B_A(k,s) sets the enumerator can produce.
struct RingSpec {
    enum class Kind {
        FqPoly,     // F_p[X_1..X_nvars]
        FqLaurent,  // F_p[X, X^-1]
        ZPoly,      // Z[X], finite only together with evaluation bounds
        ZInvN,      // Z[1/n]
    };
    Kind kind = Kind::FqPoly;
    long long p = 2;  // field characteristic for Fq*, modulus n for ZInvN
    int nvars = 1;

    static RingSpec fq_poly(long long p, int nvars = 1) { return {Kind::FqPoly, p, nvars}; }
    static RingSpec fq_laurent(long long p) { return {Kind::FqLaurent, p, 1}; }
    static RingSpec z_poly() { return {Kind::ZPoly, 0, 1}; }
    static RingSpec z_inv_n(long long n) { return {Kind::ZInvN, n, 0}; }

    int field() const { return kind == Kind::FqPoly || kind == Kind::FqLaurent ? (int)p : 0; }
};

/// Archimedean constraint gamma(a) <= s for one evaluation norm.
struct ArchBound {
    Norm norm;  // Norm::eval_at
    Rat s;
};

/// The exact finite set { a in A : gamma(a) <= e^k for all discrete norms,
/// |a| <= s at each evaluation point }. The discrete constraints carve a
/// coefficient box which is then filtered by the archimedean ones; when the
/// box is infinite or exceeds `budget` candidates the enumeration aborts with
/// ENUMERATION_BUDGET_EXCEEDED.
std::vector<RingElement> enumerate_ball_BA(const RingSpec& ring,
                                           const std::vector<Norm>& discrete, long long k,
                                           const std::vector<ArchBound>& arch = {},
                                           long long budget = 2000000);

} // namespace coarse
