#pragma once

#include "coarse/metric.hpp"

#include <map>
#include <optional>

namespace coarse {

/// Clique complex over a unit-separated vertex metric, in one of three
/// flavors: the Rips complex P_d, the relative Rips complex P_ab(Gamma,Sigma),
/// and the scaled Rips complex P_abm(Gamma,W) whose non-relative simplices
/// carry cone metrics with stretch factor m.
class MetricSimplicialComplex {
public:
    enum class Mode { Plain, Relative, Scaled };

    struct SimplexTag {
        bool scaled = false;
        int level = 0;  // cone dimension when scaled
        int m = 1;
    };

    Mode mode() const { return mode_; }
    const SpacePtr& vertex_space() const { return space_; }
    const std::vector<Subset>& maximal_simplices() const { return maximal_; }
    int dimension() const;
    const Rat& scale_a() const { return a_; }
    const Rat& scale_b() const { return b_; }
    int stretch() const { return m_; }
    const Subset& special_set() const { return special_; }

    /// Downward-closed membership test against the defining conditions.
    bool is_simplex(const Subset& s) const;
    /// Tag of a simplex: standard (satisfies the relative conditions) or
    /// scaled with its cone level.
    SimplexTag tag(const Subset& s) const;

    /// Vertex adjacency in the 1-skeleton.
    std::vector<std::vector<int>> skeleton_adjacency() const;

private:
    MetricSimplicialComplex() = default;
    Mode mode_ = Mode::Plain;
    SpacePtr space_;
    Rat a_, b_;
    int m_ = 1;
    Subset special_;  // Sigma or W
    std::vector<Subset> maximal_;

    friend class ComplexBuilder;
};

/// Clique complex of the d-proximity graph. Maximal cliques via
/// Bron-Kerbosch; cliques past 12 vertices abort with DIMENSION_CAP_EXCEEDED.
MetricSimplicialComplex build_rips(const SpacePtr& space, const Rat& d);

/// Simplices: pairwise <= a, or pairwise <= b with all vertices in Sigma.
MetricSimplicialComplex build_relative_rips(const SpacePtr& space, const Subset& sigma,
                                            const Rat& a, const Rat& b);

/// The simplices of P_b; those satisfying the relative conditions for
/// (a, b, W) keep the standard metric, the rest are cones with factor m.
MetricSimplicialComplex build_scaled_rips(const SpacePtr& space, const Subset& w, const Rat& a,
                                          const Rat& b, int m);

/// Direct construction from an explicit maximal-simplex list (test fixtures
/// and the constants oracle). Every listed set must satisfy the mode's
/// simplex conditions.
MetricSimplicialComplex make_complex_direct(const SpacePtr& space, std::vector<Subset> maximal,
                                            const Rat& a);

// --- Dimension constants ----------------------------------------------------------

/// Per-dimension estimator constants, derived by brute force and never
/// hand-entered: boundary-detour ratios are sampled on the subdivision
/// lattices of single regular simplices and reflected glued pairs, and the
/// observed maximum is inflated by 11/10. alpha_n multiplies the per-level
/// ratios up to n (comparison constant), c_n = alpha_n backs the skeleton
/// lower bound, beta_n = 2 alpha_n absorbs the unit simplex diameter for
/// neighborhood statements (valid for eps >= 1).
struct DimensionConstants {
    int n = 1;
    Rat alpha, c, beta;
    long long samples = 0;
    double max_ratio = 1.0;
};

/// Cached; deterministic. n <= 4.
const DimensionConstants& derive_dimension_constants(int n);

// --- Geodesic estimators -----------------------------------------------------------

/// Upper bound on the simplicial/cone geodesic distance between two vertices:
/// shortest path in the level-L edgewise subdivision graph, segment lengths
/// outward-rounded. Nonincreasing as L is refined along divisibility chains.
/// Returns the infinite sentinel for vertices in different components.
Ext geodesic_upper(const MetricSimplicialComplex& cx, int p, int q, int L = 3);
/// Multi-source variant: distance from vertex p to the subcomplex spanned by
/// the target vertex set.
Ext geodesic_upper_to_set(const MetricSimplicialComplex& cx, int p, const Subset& target,
                          int L = 3);

/// Lower bound via the 1-skeleton: max(0, hops - 2) / c_n with c_n from the
/// constants oracle. Sound for standard complexes; scaled complexes are
/// rejected (UNSUPPORTED_DIMENSION).
Rat geodesic_lower(const MetricSimplicialComplex& cx, int p, int q);
Rat geodesic_lower_sets(const MetricSimplicialComplex& cx, const Subset& a, const Subset& b);

/// Exposed for estimator tests: number of subdivision nodes at level L.
size_t subdivision_node_count(const MetricSimplicialComplex& cx, int L);

// --- Quantitative lemma sweeps ------------------------------------------------------

enum class RipsLemma { Comparison, ScaledComparison, Neighborhood, Separation, ConeRetraction };

struct LemmaParams {
    Rat a{1};
    Rat b{1};
    Rat eps{1};
    std::vector<Subset> families;  // C (and further sets) per lemma
    int L = 3;
    int m = 4;
};

struct LemmaReport {
    enum class Status { PASS, INCONCLUSIVE };
    Status status = Status::PASS;
    std::string lemma;
    std::string constants;
    std::string worst;  // offending pair on INCONCLUSIVE, tightest pair on PASS
    long long checked = 0;
};

/// One-sided verification sweeps: a PASS certifies every checked instance of
/// the lemma's inequality through the certified upper/lower bounds; a
/// violation at these (inflated, empirical) constants is reported
/// INCONCLUSIVE, never as a refutation.
LemmaReport verify_lemma(const MetricSimplicialComplex& cx, RipsLemma lemma,
                         const LemmaParams& params);

} // namespace coarse
