#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coarse/decomp.hpp"
#include "coarse/property_a.hpp"

#include <random>

using namespace coarse;

namespace {

SpacePtr z_interval(long long lo, long long hi) {
    std::vector<std::string> names;
    std::vector<long long> vals;
    for (long long v = lo; v <= hi; ++v) {
        names.push_back(std::to_string(v));
        vals.push_back(v);
    }
    auto vv = std::make_shared<std::vector<long long>>(vals);
    return FiniteMetricSpace::from_function(
        names, [vv](int i, int j) { return Ext(Rat(std::llabs((*vv)[i] - (*vv)[j]))); }, true);
}

Subset range_subset(const FiniteMetricSpace& sp, long long lo, long long hi) {
    Subset out;
    for (int i = 0; i < sp.size(); ++i) {
        long long v = std::stoll(sp.name(i));
        if (v >= lo && v <= hi) out.push_back(i);
    }
    return out;
}

HeightFn value_height() {
    return [](const FiniteMetricSpace& sp, int i) { return std::stoll(sp.name(i)); };
}

} // namespace

TEST_CASE("verify: hand-built interval certificate") {
    auto sp = z_interval(0, 9);
    DecompositionCertificate cert;
    cert.ambient = sp;
    GameRound round;
    round.r = Rat(3);
    DecompositionStep step;
    step.parts[0] = {range_subset(*sp, 0, 2), range_subset(*sp, 6, 8)};
    step.parts[1] = {range_subset(*sp, 3, 5), range_subset(*sp, 9, 9)};
    round.member_steps.push_back(step);
    cert.rounds.push_back(round);
    cert.bound = Rat(2);

    auto rep = verify_certificate(cert);
    CHECK(rep.valid);
    CHECK(rep.depth == 1);

    SUBCASE("moving a piece breaks r-disjointness") {
        cert.rounds[0].member_steps[0].parts[0] = {range_subset(*sp, 0, 2),
                                                   range_subset(*sp, 4, 6)};
        cert.rounds[0].member_steps[0].parts[1] = {range_subset(*sp, 3, 3),
                                                   range_subset(*sp, 7, 9)};
        auto bad = verify_certificate(cert);
        CHECK_FALSE(bad.valid);
        bool found = false;
        for (const auto& v : bad.violations)
            if (v.kind == CertViolation::Kind::R_DISJOINT && v.part == 0) found = true;
        CHECK(found);
    }

    SUBCASE("dropping a piece breaks coverage") {
        cert.rounds[0].member_steps[0].parts[1] = {range_subset(*sp, 3, 5)};
        auto bad = verify_certificate(cert);
        CHECK_FALSE(bad.valid);
        bool found = false;
        for (const auto& v : bad.violations)
            if (v.kind == CertViolation::Kind::COVER) found = true;
        CHECK(found);
    }

    SUBCASE("terminal bound is enforced") {
        cert.bound = Rat(1);
        auto bad = verify_certificate(cert);
        CHECK_FALSE(bad.valid);
    }

    SUBCASE("dangling point index is malformed") {
        cert.rounds[0].member_steps[0].parts[0][0].push_back(99);
        CHECK_THROWS_WITH_AS(verify_certificate(cert),
                             doctest::Contains("MALFORMED_CERTIFICATE"), Error);
    }
}

TEST_CASE("slab strategy on an interval matches the worked layout") {
    auto sp = z_interval(0, 11);
    auto slabs = strategy_interval_slabs(value_height(), "value");
    auto out = slabs->decompose(*sp, sp->all_points(), Rat(3));
    REQUIRE(out.has_value());
    CHECK(out->step.parts[0] ==
          std::vector<Subset>{range_subset(*sp, 0, 2), range_subset(*sp, 6, 8)});
    CHECK(out->step.parts[1] ==
          std::vector<Subset>{range_subset(*sp, 3, 5), range_subset(*sp, 9, 11)});
}

TEST_CASE("slab strategy rejects non-Lipschitz heights") {
    auto sp = z_interval(0, 5);
    auto bad = strategy_interval_slabs(
        [](const FiniteMetricSpace& s, int i) { return 3 * std::stoll(s.name(i)); }, "3x");
    CHECK_THROWS_WITH_AS(bad->decompose(*sp, sp->all_points(), Rat(2)),
                         doctest::Contains("NOT_LIPSCHITZ"), Error);
}

TEST_CASE("constant height puts everything in one even slab") {
    auto sp = z_interval(0, 4);
    auto slabs = strategy_interval_slabs([](const FiniteMetricSpace&, int) { return 0LL; },
                                         "const");
    auto out = slabs->decompose(*sp, sp->all_points(), Rat(2));
    REQUIRE(out.has_value());
    CHECK(out->step.parts[0].size() == 1);
    CHECK(out->step.parts[1].empty());
}

TEST_CASE("game: already-bounded family gives a depth-0 certificate") {
    auto b = ball(FreeAbelianSpec{1, {}}, Rat(8));
    auto cert = play_game(b.space, strategy_greedy_components(), {Rat(100)});
    CHECK(cert.depth() == 0);
    CHECK(cert.bound == Rat(16));
    CHECK(verify_certificate(cert).valid);
}

TEST_CASE("game: Z^2 ball with product slabs at (3,3)") {
    auto b = ball(FreeAbelianSpec{2, {}}, Rat(8));
    auto cert = play_game(b.space, strategy_coordinate_slabs(b), {Rat(3), Rat(3)});
    CHECK(cert.depth() == 2);
    CHECK(verify_certificate(cert).valid);
}

TEST_CASE("game: product slab depth matches rank for challenges (4,...)") {
    for (int n = 1; n <= 3; ++n) {
        auto b = ball(FreeAbelianSpec{n, {}}, Rat(8));
        std::vector<Rat> challenges(n, Rat(4));
        auto cert = play_game(b.space, strategy_coordinate_slabs(b), challenges);
        CHECK(cert.depth() <= n);
        CHECK(verify_certificate(cert).valid);
    }
}

TEST_CASE("game: lamplighter fibering over the position map") {
    auto b = ball(LamplighterSpec{2}, Rat(6));
    auto cert = play_game(b.space, strategy_lamplighter_fibering(b), {Rat(2), Rat(2)});
    CHECK(cert.depth() >= 1);
    CHECK(verify_certificate(cert).valid);
    // Round-1 pieces are preimages of position slabs.
    auto fam1 = family_after_round(cert, 1);
    for (const auto& piece : fam1) {
        long long lo = 1000, hi = -1000;
        for (int p : piece) {
            lo = std::min(lo, b.lamp_elems[p].cursor);
            hi = std::max(hi, b.lamp_elems[p].cursor);
        }
        CHECK(hi - lo < 2);
    }
}

TEST_CASE("game: weighted direct sum via cosets") {
    auto b = ball(WeightedDirectSumSpec{10}, Rat(10));
    auto cert = play_game(b.space, strategy_coset(b), {Rat(3), Rat(3), Rat(3), Rat(3), Rat(3)});
    CHECK(verify_certificate(cert).valid);
    CHECK(cert.depth() >= 1);
}

TEST_CASE("game: unipotent ball over F_2(X)") {
    MatrixGroupSpec ms;
    ms.dim = 2;
    ms.field = 2;
    for (int j = 0; j <= 4; ++j)
        ms.generators.push_back(MatrixOverRing(
            2, {parse_ring_element("1", 2), parse_ring_element("X", 2).pow(j),
                parse_ring_element("0", 2), parse_ring_element("1", 2)}));
    ms.length = LengthFunction::single(Norm::degree());
    auto b = ball(ms, Rat(4));
    auto strat = strategy_unipotent_cosets(b, parse_ring_element("X", 2), Norm::degree());

    auto out = strat->decompose(*b.space, b.space->all_points(), Rat(2));
    REQUIRE(out.has_value());
    // k = 3 at challenge 2: cosets of U_3 inside degree <= 4 polynomials are
    // indexed by the X^4 coefficient.
    CHECK(out->step.parts[0].size() == 2);
    CHECK(out->step.parts[1].empty());

    auto cert = play_game(b.space, strat, {Rat(2)});
    CHECK(verify_certificate(cert).valid);
    CHECK(cert.depth() == 1);

    SUBCASE("challenges below one exponent unit use k = 1") {
        auto small = strat->decompose(*b.space, b.space->all_points(), Rat(1, 2));
        REQUIRE(small.has_value());
        // Cosets of U_1 in degree <= 4 polynomials: classes of the degree
        // 2..4 coefficients, 8 of them.
        CHECK(small->step.parts[0].size() == 8);
    }
}

TEST_CASE("game: challenges exhausted against a bound target") {
    auto sp = z_interval(0, 99);
    GameOptions opts;
    opts.bound_target = Rat(2);
    CHECK_THROWS_WITH_AS(
        play_game(sp, strategy_interval_slabs(value_height(), "value"), {Rat(5)}, opts),
        doctest::Contains("CHALLENGES_EXHAUSTED"), Error);
}

TEST_CASE("game: certificates stay valid under pointwise-smaller challenges") {
    auto b = ball(FreeAbelianSpec{2, {}}, Rat(6));
    auto cert = play_game(b.space, strategy_coordinate_slabs(b), {Rat(4), Rat(3)});
    REQUIRE(verify_certificate(cert).valid);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        DecompositionCertificate smaller = cert;
        for (auto& round : smaller.rounds) {
            long long num = 1 + (long long)(rng() % (unsigned long long)(round.r.num()));
            round.r = Rat(num, round.r.den());
        }
        CHECK(verify_certificate(smaller).valid);
    }
}

TEST_CASE("game: slab steps pull back through coordinate projections") {
    // Pullback of a valid s-step through a 1-Lipschitz map with rho(t) = t:
    // decomposing the Z^2 ball along its y-projection IS the pulled-back
    // interval decomposition; the verifier accepts it at r = s.
    auto b = ball(FreeAbelianSpec{2, {}}, Rat(6));
    auto proj = z_interval(-6, 6);
    auto base_cert = play_game(proj, strategy_interval_slabs(value_height(), "value"),
                               {Rat(3)});
    REQUIRE(verify_certificate(base_cert).valid);

    // Pull the base round back through the projection.
    DecompositionCertificate pulled;
    pulled.ambient = b.space;
    GameRound round;
    round.r = base_cert.rounds[0].r;
    DecompositionStep step;
    for (int part = 0; part < 2; ++part)
        for (const auto& piece : base_cert.rounds[0].member_steps[0].parts[part]) {
            Subset pre;
            for (int p = 0; p < b.space->size(); ++p) {
                long long y = b.vec_elems[p][1];
                for (int q : piece)
                    if (std::stoll(proj->name(q)) == y) {
                        pre.push_back(p);
                        break;
                    }
            }
            if (!pre.empty()) step.parts[part].push_back(pre);
        }
    round.member_steps.push_back(step);
    pulled.rounds.push_back(round);
    pulled.bound = Rat(100);
    CHECK(verify_certificate(pulled).valid);
}

TEST_CASE("soundness: every played certificate verifies (random schedules)") {
    std::mt19937_64 rng(1234);
    auto zball = ball(FreeAbelianSpec{2, {}}, Rat(5));
    auto lball = ball(LamplighterSpec{2}, Rat(4));
    for (int t = 0; t < 50; ++t) {
        int len = 1 + (int)(rng() % 3);
        std::vector<Rat> challenges;
        for (int i = 0; i < len; ++i)
            challenges.push_back(Rat(1 + (long long)(rng() % 12), 1 + (long long)(rng() % 2)));
        auto c1 = play_game(zball.space, strategy_coordinate_slabs(zball), challenges);
        CHECK(verify_certificate(c1).valid);
        auto c2 = play_game(lball.space, strategy_lamplighter_fibering(lball), challenges);
        CHECK(verify_certificate(c2).valid);
    }
}

TEST_CASE("tree rank") {
    StrategyTree t;
    int root = t.add_node();
    t.root = root;
    CHECK(tree_rank(t) == 0);

    int a = t.add_node(), b = t.add_node();
    t.add_edge(root, Rat(1), a);
    t.add_edge(root, Rat(2), b);
    CHECK(tree_rank(t) == 1);

    int c = t.add_node();
    t.add_edge(a, Rat(1), c);
    CHECK(tree_rank(t) == 2);

    // Rank equals the longest root-leaf path (DFS oracle).
    std::function<int(int)> longest = [&](int v) {
        int best = 0;
        for (auto& e : t.nodes[v].children) best = std::max(best, 1 + longest(e.child));
        return best;
    };
    CHECK(tree_rank(t) == longest(t.root));
}

TEST_CASE("tree from certificate is a verified path of the game depth") {
    auto b = ball(FreeAbelianSpec{2, {}}, Rat(6));
    auto cert = play_game(b.space, strategy_coordinate_slabs(b), {Rat(3), Rat(3)});
    auto tree = tree_from_certificate(cert);
    CHECK(tree_rank(tree) == cert.depth());
    CHECK(verify_strategy_tree(tree).valid);

    SUBCASE("a branching tree with two challenge answers verifies") {
        auto alt = play_game(b.space, strategy_coordinate_slabs(b), {Rat(5), Rat(5)});
        auto t2 = tree_from_certificate(alt);
        // Graft the alternative game as a sibling branch at the root.
        StrategyTree merged = tree;
        int offset = (int)merged.nodes.size();
        for (size_t i = 1; i < t2.nodes.size(); ++i) {
            auto node = t2.nodes[i];
            for (auto& e : node.children) e.child += offset - 1;
            merged.nodes.push_back(node);
        }
        for (auto& e : t2.nodes[t2.root].children) {
            auto edge = e;
            edge.child += offset - 1;
            merged.nodes[merged.root].children.push_back(edge);
        }
        CHECK(verify_strategy_tree(merged).valid);
        CHECK(tree_rank(merged) == 2);
    }

    SUBCASE("a tampered leaf bound is flagged") {
        StrategyTree bad = tree;
        for (auto& node : bad.nodes)
            if (node.children.empty()) node.leaf_bound = Rat(0);
        CHECK_FALSE(verify_strategy_tree(bad).valid);
    }
}

TEST_CASE("asdim search") {
    auto sp = z_interval(0, 100);
    SUBCASE("d=1 succeeds with alternating intervals") {
        auto res = asdim_decomposition(*sp, sp->all_points(), 1, Rat(5), Rat(10));
        REQUIRE(res.status == AsdimResult::Status::Success);
        REQUIRE(res.parts.size() == 2);
        for (const auto& collection : res.parts) {
            MetricFamily fam;
            for (const auto& piece : collection) {
                CHECK(diameter(*sp, piece) <= Rat(10));
                fam.members.push_back({sp, piece});
            }
            CHECK(is_r_disjoint(fam, Rat(5)));
        }
        // Coverage.
        Subset all;
        for (const auto& collection : res.parts)
            for (const auto& piece : collection) all = subset_union(all, piece);
        CHECK(all == sp->all_points());
    }
    SUBCASE("d=0 on a long interval is provably infeasible") {
        auto res = asdim_decomposition(*sp, sp->all_points(), 0, Rat(5), Rat(10));
        CHECK(res.status == AsdimResult::Status::Infeasible);
    }
    SUBCASE("d=0 on a bounded piece succeeds trivially") {
        auto res = asdim_decomposition(*sp, range_subset(*sp, 3, 9), 0, Rat(7), Rat(6));
        REQUIRE(res.status == AsdimResult::Status::Success);
        CHECK(res.parts[0].size() == 1);
    }
}
