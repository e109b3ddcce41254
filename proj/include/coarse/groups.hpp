#pragma once

#include "coarse/matrix.hpp"
#include "coarse/metric.hpp"

#include <map>
#include <variant>

namespace coarse {

// --- Group descriptions ------------------------------------------------------

/// Z^n with symmetric generators +-e_i of weight w_i (weights >= 1).
struct FreeAbelianSpec {
    int n = 1;
    std::vector<Rat> weights;  // empty = all ones
};

/// Weighted countable direct sum of Z truncated at `cutoff` coordinates;
/// the generator with a single 1 in position i has length i (1-based).
struct WeightedDirectSumSpec {
    int cutoff = 8;
};

/// Lamp group wrapped over base Z with generators t, t^-1 and the lamp
/// increment a (and a^-1 when the lamp group is Z). lamp_modulus = 0 means
/// lamps take values in Z, otherwise Z/p.
struct LamplighterSpec {
    long long lamp_modulus = 2;
};

/// Finitely many generator matrices closed under inverse, with the metric
/// coming from a norm-induced length function rather than a word metric.
struct MatrixGroupSpec {
    int dim = 2;
    int field = 0;
    std::vector<MatrixOverRing> generators;  // inverses appended automatically
    LengthFunction length;
};

using GroupSpec =
    std::variant<FreeAbelianSpec, WeightedDirectSumSpec, LamplighterSpec, MatrixGroupSpec>;

// --- Elements ----------------------------------------------------------------

/// Finitely supported integer vector (abelian variants).
using IntVec = std::vector<long long>;

/// Lamplighter element: sorted (position, lamp value) support plus cursor.
struct LampElement {
    std::vector<std::pair<long long, long long>> lamps;
    long long cursor = 0;

    bool operator==(const LampElement&) const = default;
    std::string str() const;
};

LampElement lamp_mul(const LampElement& a, const LampElement& b, long long modulus);
LampElement lamp_inverse(const LampElement& a, long long modulus);

/// Exact word length of a lamplighter element over {t, t^-1, a^(+-1)}:
/// lamp toggles plus the optimal sweep visiting every lit position.
Rat lamplighter_length(const LampElement& g, long long modulus);

/// Closed form Sum_i i * |a_i| for the weighted direct sum (1-based weights).
Rat weighted_abelian_length(const IntVec& a);

// --- Balls -------------------------------------------------------------------

/// A generated ball: the metric space of all elements of length <= radius
/// with d(g, h) = l(g^-1 h), plus handles back to the group elements.
struct GroupBall {
    SpacePtr space;
    GroupSpec spec;
    Rat radius;

    // Variant payloads aligned with space point indices.
    std::vector<IntVec> vec_elems;
    std::vector<LampElement> lamp_elems;
    std::vector<MatrixOverRing> mat_elems;
};

/// BFS/Dijkstra ball generation (enumeration with length pruning for the
/// matrix variant). Throws BALL_TOO_LARGE past `cap` elements.
GroupBall ball(const GroupSpec& spec, const Rat& radius, int cap = 200000);

// --- Coset partitions ----------------------------------------------------------

struct SubgroupSelector {
    enum class Kind {
        FirstCoordinates,  // Z^n inside Z^m / weighted sum: first n coordinates
        PositionKernel,    // lamplighter: kernel of the position homomorphism
    };
    Kind kind = Kind::FirstCoordinates;
    int n = 1;
};

/// Partition of a ball into intersections with left cosets of the selected
/// subgroup. Member order follows first appearance in the ball.
MetricFamily coset_partition(const GroupBall& ball, const SubgroupSelector& sel);

} // namespace coarse
