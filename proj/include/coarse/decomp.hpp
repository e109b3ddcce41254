#pragma once

#include "coarse/groups.hpp"
#include "coarse/metric.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace coarse {

// --- Certificates --------------------------------------------------------------

/// One member's move at challenge r: the member is covered by two parts
/// ("X0", "X1"), each part an r-disjoint collection of pieces. A part may be
/// empty; produced pieces are nonempty.
struct DecompositionStep {
    std::array<std::vector<Subset>, 2> parts;
};

/// One game round: every member of the previous family gets a step at the
/// round's challenge. The next family is the flattening of all pieces in
/// member order, part 0 before part 1.
struct GameRound {
    Rat r;
    std::vector<DecompositionStep> member_steps;
};

/// Verifiable transcript of a completed game on subsets of one ambient space.
struct DecompositionCertificate {
    SpacePtr ambient;
    std::vector<Subset> initial;  // empty = the whole space as a single member
    std::vector<GameRound> rounds;
    Rat bound;

    std::vector<Subset> initial_family() const {
        if (!initial.empty()) return initial;
        return {ambient->all_points()};
    }
    int depth() const { return (int)rounds.size(); }
};

struct CertViolation {
    enum class Kind {
        COVER,               // parts do not cover the member
        PIECE_NOT_SUBSET,    // piece leaves the member
        OVERLAP,             // pieces of one part intersect as sets
        R_DISJOINT,          // pieces of one part closer than r
        TERMINAL_UNBOUNDED,  // final member diameter exceeds the bound
    };
    Kind kind;
    int round, member, part, piece_a, piece_b;
    std::string detail;
};

struct VerifyReport {
    bool valid = true;
    int depth = 0;
    std::vector<CertViolation> violations;
};

/// Replays the certificate: coverage, set-disjointness and r-disjointness of
/// every part, and the terminal bound. Dangling indices throw
/// MALFORMED_CERTIFICATE.
VerifyReport verify_certificate(const DecompositionCertificate& cert);

/// Flattened family after the given number of rounds (for downstream
/// consumers such as partition-of-unity construction).
std::vector<Subset> family_after_round(const DecompositionCertificate& cert, int rounds);

// --- Strategies ----------------------------------------------------------------

class Strategy;
using StrategyPtr = std::shared_ptr<const Strategy>;

/// A strategy decomposes one family member at a challenge and assigns each
/// produced piece the strategy that will handle it in later rounds.
/// Strategies are deterministic and stateless; lineage state travels through
/// the per-piece successor pointers.
class Strategy {
public:
    struct Outcome {
        DecompositionStep step;
        std::vector<StrategyPtr> successors;  // aligned with flattened pieces
    };

    virtual ~Strategy() = default;
    /// nullopt means the strategy has no move for this member (engine stops
    /// with STRATEGY_STUCK unless the member is already bounded).
    virtual std::optional<Outcome> decompose(const FiniteMetricSpace& space,
                                             const Subset& member, const Rat& r) const = 0;
    /// Terminal strategies plan no further moves; the game ends successfully
    /// once every live member is terminal.
    virtual bool terminal() const { return false; }
    virtual std::string name() const = 0;
};

/// No further moves planned; pieces handled by it are expected bounded.
StrategyPtr strategy_terminal();

/// Pieces are the r-components of the member (connected components of the
/// "distance < r" graph); always a single part, pairwise >= r by
/// construction. Never terminal.
StrategyPtr strategy_greedy_components();

/// Slab decomposition along an integer-valued 1-Lipschitz height: part 0
/// holds even slabs of width ceil(r), part 1 odd slabs; a point whose height
/// is a slab boundary belongs to the slab whose lower endpoint it is.
/// `successor` handles the produced slabs (terminal by default).
using HeightFn = std::function<long long(const FiniteMetricSpace&, int)>;
StrategyPtr strategy_interval_slabs(HeightFn height, std::string label,
                                    StrategyPtr successor = nullptr);

/// Product strategy: applies components in order, one per round.
StrategyPtr strategy_product(std::vector<StrategyPtr> components);

/// Slabs along coordinate axes of an abelian ball, last coordinate first.
StrategyPtr strategy_coordinate_slabs(const GroupBall& ball);

/// Coset strategy over the catalog subgroups. At challenge r the weighted
/// direct sum uses the first floor(r)+1 coordinates, whose cosets are
/// r-disjoint because deeper generators weigh more than r; each coset then
/// continues with coordinate slabs.
StrategyPtr strategy_coset(const GroupBall& ball);

/// Unipotent matrix balls: one part whose pieces are intersections with
/// cosets of U_k for the minimal k with k * exp(theta) > r. Terminal after
/// one round (coset pieces are norm-bounded).
StrategyPtr strategy_unipotent_cosets(const GroupBall& ball, const RingElement& theta,
                                      const Norm& norm);

/// Fibering through a 1-Lipschitz base map: decompose along base slabs first,
/// pieces continue with the strategy produced by `fiber_factory`.
StrategyPtr strategy_fibering(HeightFn base_height, std::string label,
                              std::function<StrategyPtr()> fiber_factory);

/// Position-map fibering for lamplighter balls with greedy-component fibers.
StrategyPtr strategy_lamplighter_fibering(const GroupBall& ball);

// --- The game ------------------------------------------------------------------

struct GameOptions {
    /// Stop once every member's diameter is at most this bound. Unset: play
    /// until the next challenge exceeds every diameter, the strategy is
    /// terminal everywhere, or the challenges run out (then succeed with the
    /// observed bound).
    std::optional<Rat> bound_target;
};

/// Plays the game and returns a verified-by-construction certificate.
/// Throws STRATEGY_STUCK / CHALLENGES_EXHAUSTED.
DecompositionCertificate play_game(const SpacePtr& space, const std::vector<Subset>& initial,
                                   const StrategyPtr& strategy,
                                   const std::vector<Rat>& challenges,
                                   const GameOptions& opts = {});
DecompositionCertificate play_game(const SpacePtr& space, const StrategyPtr& strategy,
                                   const std::vector<Rat>& challenges,
                                   const GameOptions& opts = {});

// --- Strategy trees --------------------------------------------------------------

/// Finite rooted tree transcript. Nodes are labeled by metric families;
/// every edge carries the challenge it answers plus the per-member steps
/// exhibiting the decomposition of the parent family over the child family.
struct StrategyTree {
    struct Edge {
        Rat r;
        std::vector<DecompositionStep> member_steps;
        int child;
    };
    struct Node {
        std::vector<Subset> family;
        std::vector<Edge> children;
        std::optional<Rat> leaf_bound;
    };
    SpacePtr ambient;
    std::vector<Node> nodes;
    int root = 0;

    int add_node(std::vector<Subset> family = {}) {
        nodes.push_back({std::move(family), {}, std::nullopt});
        return (int)nodes.size() - 1;
    }
    void add_edge(int parent, const Rat& r, int child,
                  std::vector<DecompositionStep> steps = {}) {
        nodes[parent].children.push_back({r, std::move(steps), child});
    }
};

/// Checks the labeling requirements: leaves bounded by their declared bound
/// and every edge's steps a valid r-decomposition of the parent family with
/// pieces flattening to the child family. Trees without an ambient space
/// (bare rank fixtures) are accepted structurally.
VerifyReport verify_strategy_tree(const StrategyTree& tree);

/// Recursive rank: 0 at leaves, sup of child ranks + 1 otherwise. For finite
/// trees this equals the depth.
int tree_rank(const StrategyTree& tree);

/// The linear transcript tree of a certificate, with labels and steps.
StrategyTree tree_from_certificate(const DecompositionCertificate& cert);

// --- (d, r) decomposition search -------------------------------------------------

struct AsdimResult {
    enum class Status { Success, Infeasible, BudgetExceeded };
    Status status;
    /// On success: d+1 collections of pieces, each collection r-disjoint,
    /// every piece of diameter <= B.
    std::vector<std::vector<Subset>> parts;
    std::string note;
};

/// Searches for a (d+1)-part decomposition with r-disjoint collections of
/// diameter <= B pieces. Exact for d = 0 (via r-component analysis, which
/// also proves infeasibility); for d >= 1, greedy piece carving followed by
/// exhaustive part assignment up to `exact_piece_limit` pieces, greedy
/// coloring beyond.
AsdimResult asdim_decomposition(const FiniteMetricSpace& space, const Subset& pts, int d,
                                const Rat& r, const Rat& B, int exact_piece_limit = 24);

} // namespace coarse
