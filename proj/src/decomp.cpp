#include "coarse/decomp.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace coarse {

// --- Verification ---------------------------------------------------------------

namespace {

Subset flatten_cover(const DecompositionStep& step) {
    Subset u;
    for (const auto& part : step.parts)
        for (const auto& piece : part) u = subset_union(u, piece);
    return u;
}

/// Shared round checker: coverage, per-part set-disjointness and
/// r-disjointness of one family's member steps; appends the produced family.
void check_round(const FiniteMetricSpace& space, const std::vector<Subset>& family,
                 const Rat& r, const std::vector<DecompositionStep>& member_steps,
                 int round_idx, std::vector<CertViolation>& violations,
                 std::vector<Subset>* next_family) {
    if (member_steps.size() != family.size())
        throw Error(Err::MALFORMED_CERTIFICATE,
                    "round " + std::to_string(round_idx) + " has " +
                        std::to_string(member_steps.size()) + " steps for " +
                        std::to_string(family.size()) + " members");
    for (int mi = 0; mi < (int)family.size(); ++mi) {
        const auto& member = family[mi];
        const auto& step = member_steps[mi];
        for (int part = 0; part < 2; ++part) {
            const auto& pieces = step.parts[part];
            for (const auto& piece : pieces)
                for (int p : piece) {
                    if (p < 0 || p >= space.size())
                        throw Error(Err::MALFORMED_CERTIFICATE,
                                    "piece references unknown point index " +
                                        std::to_string(p));
                    if (!subset_contains(member, p))
                        violations.push_back({CertViolation::Kind::PIECE_NOT_SUBSET,
                                              round_idx, mi, part, 0, 0, space.name(p)});
                }
            for (size_t a = 0; a < pieces.size(); ++a)
                for (size_t b = a + 1; b < pieces.size(); ++b) {
                    if (!subsets_disjoint(pieces[a], pieces[b]))
                        violations.push_back({CertViolation::Kind::OVERLAP, round_idx, mi,
                                              part, (int)a, (int)b, ""});
                    if (pieces[a].empty() || pieces[b].empty()) continue;
                    Ext d = space.set_dist(pieces[a], pieces[b]);
                    if (d < r)
                        violations.push_back(
                            {CertViolation::Kind::R_DISJOINT, round_idx, mi, part, (int)a,
                             (int)b, "distance " + d.str() + " < " + r.str()});
                }
        }
        if (!(flatten_cover(step) == member))
            violations.push_back({CertViolation::Kind::COVER, round_idx, mi, 0, 0, 0, ""});
        if (next_family)
            for (const auto& part : step.parts)
                for (const auto& piece : part)
                    if (!piece.empty()) next_family->push_back(piece);
    }
}

} // namespace

VerifyReport verify_certificate(const DecompositionCertificate& cert) {
    if (!cert.ambient) throw Error(Err::MALFORMED_CERTIFICATE, "missing ambient space");
    VerifyReport rep;
    rep.depth = cert.depth();
    const auto& space = *cert.ambient;
    for (const auto& member : cert.initial_family())
        for (int p : member)
            if (p < 0 || p >= space.size())
                throw Error(Err::MALFORMED_CERTIFICATE, "initial member references unknown point");

    std::vector<Subset> family = cert.initial_family();
    for (int ri = 0; ri < (int)cert.rounds.size(); ++ri) {
        const auto& round = cert.rounds[ri];
        std::vector<Subset> next;
        check_round(space, family, round.r, round.member_steps, ri, rep.violations, &next);
        family = std::move(next);
    }
    for (int mi = 0; mi < (int)family.size(); ++mi) {
        Rat d = diameter(*cert.ambient, family[mi]);
        if (d > cert.bound)
            rep.violations.push_back({CertViolation::Kind::TERMINAL_UNBOUNDED,
                                      (int)cert.rounds.size(), mi, 0, 0, 0,
                                      "diameter " + d.str() + " > bound " + cert.bound.str()});
    }
    rep.valid = rep.violations.empty();
    return rep;
}

std::vector<Subset> family_after_round(const DecompositionCertificate& cert, int rounds) {
    std::vector<Subset> family = cert.initial_family();
    for (int ri = 0; ri < rounds && ri < (int)cert.rounds.size(); ++ri) {
        std::vector<Subset> next;
        for (int mi = 0; mi < (int)family.size(); ++mi)
            for (const auto& part : cert.rounds[ri].member_steps[mi].parts)
                for (const auto& piece : part)
                    if (!piece.empty()) next.push_back(piece);
        family = std::move(next);
    }
    return family;
}

// --- Strategy implementations -----------------------------------------------------

namespace {

class TerminalStrategy : public Strategy {
public:
    std::optional<Outcome> decompose(const FiniteMetricSpace&, const Subset&,
                                     const Rat&) const override {
        return std::nullopt;
    }
    bool terminal() const override { return true; }
    std::string name() const override { return "terminal"; }
};

class GreedyComponents : public Strategy,
                         public std::enable_shared_from_this<GreedyComponents> {
public:
    std::optional<Outcome> decompose(const FiniteMetricSpace& space, const Subset& member,
                                     const Rat& r) const override {
        int n = (int)member.size();
        std::vector<int> parent(n);
        for (int i = 0; i < n; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (space.dist(member[i], member[j]) < r) parent[find(i)] = find(j);
        std::map<int, Subset> comps;
        for (int i = 0; i < n; ++i) comps[find(i)].push_back(member[i]);
        Outcome out;
        for (auto& [root, pts] : comps) {
            std::sort(pts.begin(), pts.end());
            out.step.parts[0].push_back(std::move(pts));
            out.successors.push_back(shared_from_this());
        }
        return out;
    }
    std::string name() const override { return "greedy-components"; }
};

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

class IntervalSlabs : public Strategy {
public:
    IntervalSlabs(HeightFn h, std::string label, StrategyPtr succ)
        : height_(std::move(h)), label_(std::move(label)), succ_(std::move(succ)) {}

    std::optional<Outcome> decompose(const FiniteMetricSpace& space, const Subset& member,
                                     const Rat& r) const override {
        std::vector<long long> h(member.size());
        for (size_t i = 0; i < member.size(); ++i) h[i] = height_(space, member[i]);
        for (size_t i = 0; i < member.size(); ++i)
            for (size_t j = i + 1; j < member.size(); ++j) {
                Ext d = space.dist(member[i], member[j]);
                if (d < Rat(std::llabs(h[i] - h[j])))
                    throw Error(Err::NOT_LIPSCHITZ,
                                "height '" + label_ + "' is not 1-Lipschitz on the member");
            }
        long long width = r.ceil();
        if (width < 1) width = 1;
        std::map<long long, Subset> slabs;
        for (size_t i = 0; i < member.size(); ++i)
            slabs[floor_div(h[i], width)].push_back(member[i]);
        Outcome out;
        for (auto& [idx, pts] : slabs) {
            std::sort(pts.begin(), pts.end());
            int part = (int)(((idx % 2) + 2) % 2);
            out.step.parts[part].push_back(std::move(pts));
        }
        for (const auto& part : out.step.parts)
            for (size_t i = 0; i < part.size(); ++i)
                out.successors.push_back(succ_ ? succ_ : strategy_terminal());
        return out;
    }
    std::string name() const override { return "slabs[" + label_ + "]"; }

private:
    HeightFn height_;
    std::string label_;
    StrategyPtr succ_;
};

class ProductStrategy : public Strategy {
public:
    explicit ProductStrategy(std::vector<StrategyPtr> parts) : parts_(std::move(parts)) {}

    std::optional<Outcome> decompose(const FiniteMetricSpace& space, const Subset& member,
                                     const Rat& r) const override {
        if (parts_.empty()) return std::nullopt;
        auto head = parts_[0]->decompose(space, member, r);
        if (!head) return std::nullopt;
        StrategyPtr rest;
        if (parts_.size() > 1)
            rest = std::make_shared<ProductStrategy>(
                std::vector<StrategyPtr>(parts_.begin() + 1, parts_.end()));
        else
            rest = strategy_terminal();
        for (auto& s : head->successors) {
            // The head's own successor plan is overridden by the remaining
            // product components unless the head already chains somewhere.
            if (s == nullptr || s->terminal()) s = rest;
        }
        return head;
    }
    bool terminal() const override { return parts_.empty(); }
    std::string name() const override {
        std::string s = "product(";
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += parts_[i]->name();
        }
        return s + ")";
    }

private:
    std::vector<StrategyPtr> parts_;
};

class FiberingStrategy : public Strategy {
public:
    FiberingStrategy(HeightFn base, std::string label, std::function<StrategyPtr()> factory)
        : base_(std::move(base)), label_(std::move(label)), factory_(std::move(factory)) {}

    std::optional<Outcome> decompose(const FiniteMetricSpace& space, const Subset& member,
                                     const Rat& r) const override {
        IntervalSlabs slabs(base_, label_, nullptr);
        auto out = slabs.decompose(space, member, r);
        if (!out) return std::nullopt;
        for (auto& s : out->successors) s = factory_();
        return out;
    }
    std::string name() const override { return "fibering[" + label_ + "]"; }

private:
    HeightFn base_;
    std::string label_;
    std::function<StrategyPtr()> factory_;
};

class UnipotentCosets : public Strategy {
public:
    UnipotentCosets(std::shared_ptr<const std::vector<MatrixOverRing>> elems,
                    RingElement theta, Norm norm)
        : elems_(std::move(elems)), theta_(std::move(theta)), norm_(std::move(norm)) {}

    std::optional<Outcome> decompose(const FiniteMetricSpace&, const Subset& member,
                                     const Rat& r) const override {
        NormValue tv = norm_(theta_);
        if (!tv.is_exponent() || tv.exp() <= 0)
            throw Error(Err::THETA_NOT_EXPANDING, "gamma(theta) must exceed 1");
        long long e_theta = tv.exp();
        // Minimal k with k * e_theta > r.
        long long k = (r / Rat(e_theta)).floor() + 1;

        // Group member points into cosets of U_k.
        std::vector<Subset> pieces;
        std::vector<int> reps;
        for (int p : member) {
            const MatrixOverRing& g = elems_->at(p);
            if (!g.is_unipotent_upper())
                throw Error(Err::NOT_UNIPOTENT, "ball element is not unipotent");
            bool placed = false;
            for (size_t c = 0; c < reps.size(); ++c) {
                MatrixOverRing diff = elems_->at(reps[c]).inverse() * g;
                if (unipotent_level(diff, theta_, norm_) <= k) {
                    pieces[c].push_back(p);
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                reps.push_back(p);
                pieces.push_back({p});
            }
        }
        Outcome out;
        for (auto& piece : pieces) {
            std::sort(piece.begin(), piece.end());
            out.step.parts[0].push_back(std::move(piece));
            out.successors.push_back(strategy_terminal());
        }
        return out;
    }
    std::string name() const override { return "unipotent-cosets"; }

private:
    std::shared_ptr<const std::vector<MatrixOverRing>> elems_;
    RingElement theta_;
    Norm norm_;
};

class CosetStrategy : public Strategy {
public:
    CosetStrategy(std::shared_ptr<const std::vector<IntVec>> elems, int cutoff)
        : elems_(std::move(elems)), cutoff_(cutoff) {}

    std::optional<Outcome> decompose(const FiniteMetricSpace&, const Subset& member,
                                     const Rat& r) const override {
        int n = std::min<long long>((long long)cutoff_, r.floor() + 1);
        std::map<std::string, Subset> cosets;
        for (int p : member) {
            const IntVec& v = elems_->at(p);
            std::ostringstream key;
            for (size_t i = n; i < v.size(); ++i) key << v[i] << ",";
            cosets[key.str()].push_back(p);
        }
        Outcome out;
        for (auto& [key, pts] : cosets) {
            std::sort(pts.begin(), pts.end());
            out.step.parts[0].push_back(std::move(pts));
            std::vector<StrategyPtr> slabs;
            for (int c = n - 1; c >= 0; --c) {
                auto elems = elems_;
                slabs.push_back(strategy_interval_slabs(
                    [elems, c](const FiniteMetricSpace&, int idx) {
                        return elems->at(idx)[c];
                    },
                    "coord" + std::to_string(c)));
            }
            out.successors.push_back(strategy_product(std::move(slabs)));
        }
        return out;
    }
    std::string name() const override { return "cosets"; }

private:
    std::shared_ptr<const std::vector<IntVec>> elems_;
    int cutoff_;
};

} // namespace

StrategyPtr strategy_terminal() {
    static StrategyPtr t = std::make_shared<TerminalStrategy>();
    return t;
}

StrategyPtr strategy_greedy_components() { return std::make_shared<GreedyComponents>(); }

StrategyPtr strategy_interval_slabs(HeightFn height, std::string label, StrategyPtr successor) {
    return std::make_shared<IntervalSlabs>(std::move(height), std::move(label),
                                           std::move(successor));
}

StrategyPtr strategy_product(std::vector<StrategyPtr> components) {
    return std::make_shared<ProductStrategy>(std::move(components));
}

StrategyPtr strategy_coordinate_slabs(const GroupBall& ball) {
    if (ball.vec_elems.empty())
        throw Error(Err::INVALID_SPEC, "coordinate slabs need an abelian ball");
    auto elems = std::make_shared<std::vector<IntVec>>(ball.vec_elems);
    int n = (int)(*elems)[0].size();
    std::vector<StrategyPtr> slabs;
    for (int c = n - 1; c >= 0; --c)
        slabs.push_back(strategy_interval_slabs(
            [elems, c](const FiniteMetricSpace&, int idx) { return elems->at(idx)[c]; },
            "coord" + std::to_string(c)));
    return strategy_product(std::move(slabs));
}

StrategyPtr strategy_coset(const GroupBall& ball) {
    if (ball.vec_elems.empty())
        throw Error(Err::INVALID_SPEC, "the coset strategy needs an abelian ball");
    auto elems = std::make_shared<std::vector<IntVec>>(ball.vec_elems);
    return std::make_shared<CosetStrategy>(elems, (int)(*elems)[0].size());
}

StrategyPtr strategy_unipotent_cosets(const GroupBall& ball, const RingElement& theta,
                                      const Norm& norm) {
    if (ball.mat_elems.empty())
        throw Error(Err::INVALID_SPEC, "unipotent cosets need a matrix ball");
    auto elems = std::make_shared<std::vector<MatrixOverRing>>(ball.mat_elems);
    return std::make_shared<UnipotentCosets>(elems, theta, norm);
}

StrategyPtr strategy_fibering(HeightFn base_height, std::string label,
                              std::function<StrategyPtr()> fiber_factory) {
    return std::make_shared<FiberingStrategy>(std::move(base_height), std::move(label),
                                              std::move(fiber_factory));
}

StrategyPtr strategy_lamplighter_fibering(const GroupBall& ball) {
    if (ball.lamp_elems.empty())
        throw Error(Err::INVALID_SPEC, "lamplighter fibering needs a lamplighter ball");
    auto elems = std::make_shared<std::vector<LampElement>>(ball.lamp_elems);
    return strategy_fibering(
        [elems](const FiniteMetricSpace&, int idx) { return elems->at(idx).cursor; },
        "position", [] { return strategy_greedy_components(); });
}

// --- Game loop -------------------------------------------------------------------

DecompositionCertificate play_game(const SpacePtr& space, const std::vector<Subset>& initial,
                                   const StrategyPtr& strategy,
                                   const std::vector<Rat>& challenges,
                                   const GameOptions& opts) {
    if (!space) throw Error(Err::INVALID_SPEC, "missing space");
    DecompositionCertificate cert;
    cert.ambient = space;
    cert.initial = initial;

    std::vector<Subset> family = cert.initial_family();
    std::vector<StrategyPtr> cursors(family.size(), strategy);

    size_t ci = 0;
    for (;;) {
        Rat sup(0);
        for (const auto& m : family) sup = std::max(sup, diameter(*space, m));
        if (opts.bound_target && sup <= *opts.bound_target) break;
        bool all_terminal = true;
        for (const auto& c : cursors)
            if (!c->terminal()) {
                all_terminal = false;
                break;
            }
        if (ci >= challenges.size()) {
            if (opts.bound_target)
                throw Error(Err::CHALLENGES_EXHAUSTED,
                            "bound target " + opts.bound_target->str() +
                                " not reached; family diameter " + sup.str());
            break;
        }
        const Rat& r = challenges[ci];
        if (r.sign() <= 0) throw Error(Err::INVALID_SPEC, "challenges must be positive");
        if (sup <= r && !opts.bound_target) break;
        if (all_terminal) {
            if (opts.bound_target)
                throw Error(Err::STRATEGY_STUCK,
                            "strategy is terminal but bound target not reached");
            break;
        }

        GameRound round;
        round.r = r;
        std::vector<Subset> next_family;
        std::vector<StrategyPtr> next_cursors;
        for (size_t mi = 0; mi < family.size(); ++mi) {
            std::optional<Strategy::Outcome> out;
            if (cursors[mi]->terminal()) {
                // Carried forward as a single trivial piece.
                Strategy::Outcome triv;
                triv.step.parts[0].push_back(family[mi]);
                triv.successors.push_back(strategy_terminal());
                out = std::move(triv);
            } else {
                out = cursors[mi]->decompose(*space, family[mi], r);
                if (!out)
                    throw Error(Err::STRATEGY_STUCK,
                                cursors[mi]->name() + " has no move for member " +
                                    std::to_string(mi) + " at challenge " + r.str());
            }
            // Drop empty pieces while keeping successor alignment.
            size_t flat = 0;
            DecompositionStep cleaned;
            std::vector<StrategyPtr> succ;
            for (int part = 0; part < 2; ++part)
                for (auto& piece : out->step.parts[part]) {
                    if (!piece.empty()) {
                        cleaned.parts[part].push_back(piece);
                        succ.push_back(out->successors.at(flat));
                        next_family.push_back(piece);
                    }
                    ++flat;
                }
            for (auto& s : succ) next_cursors.push_back(s ? s : strategy_terminal());
            round.member_steps.push_back(std::move(cleaned));
        }
        cert.rounds.push_back(std::move(round));
        family = std::move(next_family);
        cursors = std::move(next_cursors);
        ++ci;
    }

    Rat sup(0);
    for (const auto& m : family) sup = std::max(sup, diameter(*space, m));
    cert.bound = sup;
    return cert;
}

DecompositionCertificate play_game(const SpacePtr& space, const StrategyPtr& strategy,
                                   const std::vector<Rat>& challenges,
                                   const GameOptions& opts) {
    return play_game(space, {}, strategy, challenges, opts);
}

// --- Strategy trees ----------------------------------------------------------------

int tree_rank(const StrategyTree& tree) {
    if (tree.nodes.empty()) return 0;
    std::function<int(int)> rank = [&](int v) {
        int best = -1;
        for (const auto& e : tree.nodes[v].children) best = std::max(best, rank(e.child));
        return best + 1;  // leaves rank 0
    };
    return rank(tree.root);
}

VerifyReport verify_strategy_tree(const StrategyTree& tree) {
    VerifyReport rep;
    rep.depth = tree_rank(tree);
    if (!tree.ambient) return rep;  // bare structural tree
    std::function<void(int)> walk = [&](int v) {
        const auto& node = tree.nodes[v];
        if (node.children.empty()) {
            Rat bound = node.leaf_bound.value_or(Rat(0));
            for (int mi = 0; mi < (int)node.family.size(); ++mi)
                if (diameter(*tree.ambient, node.family[mi]) > bound)
                    rep.violations.push_back({CertViolation::Kind::TERMINAL_UNBOUNDED, v, mi,
                                              0, 0, 0, "leaf exceeds its bound"});
            return;
        }
        for (const auto& e : node.children) {
            std::vector<Subset> produced;
            check_round(*tree.ambient, node.family, e.r, e.member_steps, v, rep.violations,
                        &produced);
            if (!(produced == tree.nodes[e.child].family))
                rep.violations.push_back({CertViolation::Kind::COVER, v, 0, 0, 0, 0,
                                          "edge pieces do not flatten to the child family"});
            walk(e.child);
        }
    };
    walk(tree.root);
    rep.valid = rep.violations.empty();
    return rep;
}

StrategyTree tree_from_certificate(const DecompositionCertificate& cert) {
    StrategyTree t;
    t.ambient = cert.ambient;
    int prev = t.add_node(cert.initial_family());
    t.root = prev;
    for (int ri = 0; ri < (int)cert.rounds.size(); ++ri) {
        int next = t.add_node(family_after_round(cert, ri + 1));
        t.add_edge(prev, cert.rounds[ri].r, next, cert.rounds[ri].member_steps);
        prev = next;
    }
    t.nodes[prev].leaf_bound = cert.bound;
    return t;
}

// --- (d, r) decomposition search ----------------------------------------------------

namespace {

std::vector<Subset> r_components(const FiniteMetricSpace& space, const Subset& pts,
                                 const Rat& r) {
    int n = (int)pts.size();
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (space.dist(pts[i], pts[j]) < r) parent[find(i)] = find(j);
    std::map<int, Subset> comps;
    for (int i = 0; i < n; ++i) comps[find(i)].push_back(pts[i]);
    std::vector<Subset> out;
    for (auto& [root, c] : comps) {
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
    }
    return out;
}

bool color_exact(const std::vector<std::vector<int>>& conflicts, int colors,
                 std::vector<int>& assignment, int at) {
    if (at == (int)conflicts.size()) return true;
    for (int c = 0; c < colors; ++c) {
        bool ok = true;
        for (int other : conflicts[at])
            if (other < at && assignment[other] == c) {
                ok = false;
                break;
            }
        if (!ok) continue;
        assignment[at] = c;
        if (color_exact(conflicts, colors, assignment, at + 1)) return true;
    }
    assignment[at] = -1;
    return false;
}

} // namespace

AsdimResult asdim_decomposition(const FiniteMetricSpace& space, const Subset& pts, int d,
                                const Rat& r, const Rat& B, int exact_piece_limit) {
    if (d < 0) throw Error(Err::INVALID_SPEC, "d must be nonnegative");
    AsdimResult res;

    if (d == 0) {
        // Exact: points joined by a chain of steps < r must share a piece, so
        // the pieces of any valid single collection are unions of
        // r-components; feasible iff every component fits in diameter B.
        auto comps = r_components(space, pts, r);
        for (const auto& c : comps)
            if (diameter(space, c) > B) {
                res.status = AsdimResult::Status::Infeasible;
                res.note = "an r-chain component has diameter " + diameter(space, c).str() +
                           " > " + B.str() + "; any r-disjoint cover must keep it whole";
                return res;
            }
        res.status = AsdimResult::Status::Success;
        res.parts.push_back(comps);
        return res;
    }

    // Greedy carving into diameter <= B pieces (balls of radius B/2 around
    // successive uncovered seeds), then piece-to-part assignment as graph
    // coloring on the "closer than r" conflict graph.
    Rat half = B / Rat(2);
    std::vector<Subset> pieces;
    std::vector<bool> covered(pts.size(), false);
    for (size_t s = 0; s < pts.size(); ++s) {
        if (covered[s]) continue;
        Subset piece;
        for (size_t x = s; x < pts.size(); ++x) {
            if (covered[x]) continue;
            if (space.dist(pts[s], pts[x]) <= half) {
                piece.push_back(pts[x]);
                covered[x] = true;
            }
        }
        pieces.push_back(std::move(piece));
    }

    std::vector<std::vector<int>> conflicts(pieces.size());
    for (size_t i = 0; i < pieces.size(); ++i)
        for (size_t j = i + 1; j < pieces.size(); ++j)
            if (space.set_dist(pieces[i], pieces[j]) < r) {
                conflicts[i].push_back((int)j);
                conflicts[j].push_back((int)i);
            }

    std::vector<int> assignment(pieces.size(), -1);
    bool ok;
    if ((int)pieces.size() <= exact_piece_limit) {
        ok = color_exact(conflicts, d + 1, assignment, 0);
    } else {
        ok = true;
        for (size_t i = 0; i < pieces.size() && ok; ++i) {
            std::vector<bool> used(d + 1, false);
            for (int other : conflicts[i])
                if (assignment[other] >= 0) used[assignment[other]] = true;
            int c = 0;
            while (c <= d && used[c]) ++c;
            if (c > d) ok = false;
            else assignment[i] = c;
        }
    }
    if (!ok) {
        res.status = AsdimResult::Status::BudgetExceeded;
        res.note = "no (d+1)-part assignment found for the carved pieces; inconclusive";
        return res;
    }
    res.status = AsdimResult::Status::Success;
    res.parts.assign(d + 1, {});
    for (size_t i = 0; i < pieces.size(); ++i) res.parts[assignment[i]].push_back(pieces[i]);
    return res;
}

} // namespace coarse
