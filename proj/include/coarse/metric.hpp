#pragma once

#include "coarse/rational.hpp"
#include "coarse/stepfn.hpp"
#include "coarse/error.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace coarse {

/// Point indices into a space; subsets are sorted index vectors.
using Subset = std::vector<int>;

Subset subset_union(const Subset& a, const Subset& b);
Subset subset_intersect(const Subset& a, const Subset& b);
bool subset_contains(const Subset& a, int x);
bool subsets_disjoint(const Subset& a, const Subset& b);

/// A finite metric space with exact nonnegative rational distances and an
/// infinite sentinel for distinct components. Backed either by an explicit
/// symmetric matrix (validated on construction) or by a distance callable
/// (word metrics, validated by sampling).
///
/// Spaces are immutable after construction; all queries are const and safe
/// to call concurrently.
class FiniteMetricSpace {
public:
    using DistFn = std::function<Ext(int, int)>;

    /// Explicit matrix space. Checks d(x,x)=0, symmetry, nonnegativity, and
    /// the triangle inequality (all triples up to `full_check_limit` points,
    /// sampled triples above).
    static std::shared_ptr<const FiniteMetricSpace> from_matrix(
        std::vector<std::string> names, std::vector<std::vector<Ext>> dist,
        int full_check_limit = 300, int sample_triples = 10000,
        unsigned long long seed = 0);

    /// Function-backed space (generated word metrics). The triangle
    /// inequality holds by construction for these; a sampled spot-check
    /// still runs.
    static std::shared_ptr<const FiniteMetricSpace> from_function(
        std::vector<std::string> names, DistFn fn, bool unit_separated,
        int sample_triples = 10000, unsigned long long seed = 0);

    int size() const { return (int)names_.size(); }
    const std::string& name(int i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    int index_of(const std::string& name) const;

    Ext dist(int i, int j) const { return fn_(i, j); }

    /// Min distance between two nonempty subsets; Ext::inf() if either is empty.
    Ext set_dist(const Subset& a, const Subset& b) const;
    Ext point_set_dist(int x, const Subset& a) const;

    /// True when every pair of distinct points is at distance >= 1
    /// (required of group balls and of Rips vertex sets).
    bool unit_separated() const { return unit_separated_; }

    Subset all_points() const;

private:
    FiniteMetricSpace() = default;
    std::vector<std::string> names_;
    DistFn fn_;
    bool unit_separated_ = false;

    friend class SpaceBuilder;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

/// One member of a metric family: a point subset of an ambient space.
struct FamilyMember {
    SpacePtr space;
    Subset points;
};

/// Ordered collection of subspaces. Members may live in different ambient
/// spaces; operations that need a common ambient check for it.
struct MetricFamily {
    std::vector<FamilyMember> members;

    static MetricFamily whole(const SpacePtr& s) {
        MetricFamily f;
        f.members.push_back({s, [&] {
            Subset a(s->size());
            for (int i = 0; i < s->size(); ++i) a[i] = i;
            return a;
        }()});
        return f;
    }

    void require_common_ambient() const;
};

// --- Operations ------------------------------------------------------------

/// True iff every pair of distinct members is at min-pairwise-distance >= r.
bool is_r_disjoint(const MetricFamily& family, const Rat& r);

/// Exact max pairwise distance of a subset (0 for empty/singleton).
/// Throws INFINITE_DIAMETER if a pair sits at the infinite sentinel.
Rat diameter(const FiniteMetricSpace& space, const Subset& pts);
Rat diameter(const FiniteMetricSpace& space);

bool is_bounded(const MetricFamily& family, const Rat& bound);

/// N_t(X): all ambient points at distance <= t from X.
Subset neighborhood(const FiniteMetricSpace& space, const Subset& x, const Rat& t);

/// N_t(C) cap N_t(D) cap Z, plus the per-(i,j) pieces when C and D are
/// given as families of subsets of one ambient space. Empty pieces are dropped.
struct EnlargedIntersection {
    Subset whole;
    struct Piece { int ci, dj; Subset pts; };
    std::vector<Piece> pieces;
};
EnlargedIntersection enlarged_intersection(
    const FiniteMetricSpace& space, const std::vector<Subset>& c_family,
    const std::vector<Subset>& d_family, const Subset& z, const Rat& t);

/// Max ball cardinality at radius r over all centers.
int bounded_geometry_profile(const FiniteMetricSpace& space, const Rat& r);

// --- Coarse map witnesses ---------------------------------------------------

/// A map of families with shared expansion / properness moduli. Each entry
/// sends the points of one source member into a target member.
struct CoarseMapWitness {
    struct Entry {
        int src_member;
        int dst_member;
        std::vector<int> image;  // image[k] = target point of src points[k]
    };
    MetricFamily src;
    MetricFamily dst;
    std::vector<Entry> entries;
    StepFunction rho;    // upper modulus: d(f x, f y) <= rho(d(x,y))
    StepFunction delta;  // lower modulus: delta(d(x,y)) <= d(f x, f y)
};

struct CoarseMapReport {
    bool expansive = true;
    bool proper = true;
    struct Violation {
        int entry;
        int x, y;            // indices into the source member's point list
        bool expansive_side; // false: properness side
    };
    std::vector<Violation> violations;
};

CoarseMapReport check_coarse_map(const CoarseMapWitness& w);

} // namespace coarse
