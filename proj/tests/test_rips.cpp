#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coarse/metric.hpp"
#include "coarse/rips.hpp"

#include <random>

using namespace coarse;

namespace {

SpacePtr z_pts(const std::vector<long long>& vals) {
    std::vector<std::string> names;
    for (auto v : vals) names.push_back(std::to_string(v));
    auto vv = std::make_shared<std::vector<long long>>(vals);
    return FiniteMetricSpace::from_function(
        names, [vv](int i, int j) { return Ext(Rat(std::llabs((*vv)[i] - (*vv)[j]))); }, true);
}

SpacePtr z_interval(long long lo, long long hi) {
    std::vector<long long> v;
    for (long long x = lo; x <= hi; ++x) v.push_back(x);
    return z_pts(v);
}

SpacePtr grid(int w, int h) {
    std::vector<std::string> names;
    std::vector<std::pair<long long, long long>> pts;
    for (long long x = 0; x < w; ++x)
        for (long long y = 0; y < h; ++y) {
            names.push_back(std::to_string(x) + "," + std::to_string(y));
            pts.push_back({x, y});
        }
    auto pp = std::make_shared<std::vector<std::pair<long long, long long>>>(pts);
    return FiniteMetricSpace::from_function(
        names,
        [pp](int i, int j) {
            return Ext(Rat(std::llabs((*pp)[i].first - (*pp)[j].first) +
                           std::llabs((*pp)[i].second - (*pp)[j].second)));
        },
        true);
}

/// Unit triangles ABC, BCD along the shared edge BC; d(A,D) = 2.
SpacePtr glued_triangles() {
    std::vector<std::vector<Ext>> m(4, std::vector<Ext>(4, Ext(Rat(1))));
    for (int i = 0; i < 4; ++i) m[i][i] = Ext(Rat(0));
    m[0][3] = m[3][0] = Ext(Rat(2));
    return FiniteMetricSpace::from_matrix({"A", "B", "C", "D"}, m);
}

} // namespace

TEST_CASE("rips construction on three collinear points") {
    auto sp = z_pts({0, 1, 2});
    auto p1 = build_rips(sp, Rat(1));
    CHECK(p1.maximal_simplices() == std::vector<Subset>{{0, 1}, {1, 2}});
    CHECK(p1.dimension() == 1);
    auto p2 = build_rips(sp, Rat(2));
    CHECK(p2.maximal_simplices() == std::vector<Subset>{{0, 1, 2}});
    CHECK(p2.dimension() == 2);
}

TEST_CASE("5x5 grid at scale 1 is pure 1-dimensional") {
    auto cx = build_rips(grid(5, 5), Rat(1));
    CHECK(cx.dimension() == 1);
    for (const auto& s : cx.maximal_simplices()) CHECK(s.size() == 2);
    CHECK(cx.maximal_simplices().size() == 40);
}

TEST_CASE("clique cap rejects huge simplices") {
    std::vector<std::vector<Ext>> m(13, std::vector<Ext>(13, Ext(Rat(1))));
    std::vector<std::string> names;
    for (int i = 0; i < 13; ++i) {
        m[i][i] = Ext(Rat(0));
        names.push_back("p" + std::to_string(i));
    }
    auto sp = FiniteMetricSpace::from_matrix(names, m);
    CHECK_THROWS_WITH_AS(build_rips(sp, Rat(1)), doctest::Contains("DIMENSION_CAP_EXCEEDED"),
                         Error);
}

TEST_CASE("relative rips") {
    auto sp = z_interval(0, 10);
    SUBCASE("a far pair inside Sigma spans an extra edge") {
        auto cx = build_relative_rips(sp, {0, 10}, Rat(1), Rat(10));
        bool found = false;
        for (const auto& s : cx.maximal_simplices())
            if (s == Subset{0, 10}) found = true;
        CHECK(found);
        CHECK(cx.is_simplex({0, 10}));
        CHECK_FALSE(cx.is_simplex({0, 5}));
    }
    SUBCASE("empty Sigma reduces to the plain complex") {
        auto rel = build_relative_rips(sp, {}, Rat(2), Rat(7));
        auto plain = build_rips(sp, Rat(2));
        CHECK(rel.maximal_simplices() == plain.maximal_simplices());
    }
    SUBCASE("a == b reduces to the plain complex for any Sigma") {
        auto rel = build_relative_rips(sp, {2, 3, 8}, Rat(2), Rat(2));
        auto plain = build_rips(sp, Rat(2));
        CHECK(rel.maximal_simplices() == plain.maximal_simplices());
    }
    SUBCASE("bad params") {
        CHECK_THROWS_WITH_AS(build_relative_rips(sp, {}, Rat(3), Rat(2)),
                             doctest::Contains("BAD_PARAMS"), Error);
    }
}

TEST_CASE("scaled rips tags") {
    auto sp = z_pts({0, 3, 6});
    auto cx = build_scaled_rips(sp, {0, 2}, Rat(3), Rat(6), 4);
    // One maximal simplex: the full triangle, carrying a cone tag.
    REQUIRE(cx.maximal_simplices().size() == 1);
    auto t = cx.tag({0, 1, 2});
    CHECK(t.scaled);
    CHECK(t.level == 2);
    CHECK(t.m == 4);
    // Its edges are standard: {0,3} within a, {0,6} inside W, {3,6} within a.
    CHECK_FALSE(cx.tag({0, 1}).scaled);
    CHECK_FALSE(cx.tag({0, 2}).scaled);
    CHECK_FALSE(cx.tag({1, 2}).scaled);

    SUBCASE("m=1 with W = Gamma and a = b recovers the standard metric") {
        auto one = build_scaled_rips(sp, sp->all_points(), Rat(6), Rat(6), 1);
        for (const auto& s : one.maximal_simplices()) CHECK_FALSE(one.tag(s).scaled);
    }
}

TEST_CASE("scaled edge outside P_ab has estimated length m") {
    auto sp = z_pts({0, 4});
    auto cx = build_scaled_rips(sp, {}, Rat(1), Rat(4), 4);
    CHECK(cx.tag({0, 1}).scaled);
    CHECK(geodesic_upper(cx, 0, 1, 3) == Ext(Rat(4)));
}

TEST_CASE("scaled 2-simplex distances with m=4") {
    // Gamma = {0,4,8}, W = {0,8}: the b-edge {0,8} is standard (length 1),
    // edges {0,4}, {4,8} and the triangle are cones with factor 4.
    auto sp = z_pts({0, 4, 8});
    auto cx = build_scaled_rips(sp, {0, 2}, Rat(1), Rat(8), 4);
    CHECK(cx.tag({0, 1, 2}).scaled);
    CHECK_FALSE(cx.tag({0, 2}).scaled);
    Ext d04 = geodesic_upper(cx, 0, 1, 4);
    // The cheapest route to the middle vertex is a cone edge of length 4.
    CHECK(d04.finite() >= Rat(4));
    CHECK(d04.finite() <= Rat(4) + Rat(1, 1000));
    CHECK(geodesic_upper(cx, 0, 2, 4) == Ext(Rat(1)));
}

TEST_CASE("single simplex: vertex pairs sit at exact distance 1 at every L") {
    auto cx = build_rips(z_pts({0, 1, 2}), Rat(2));
    REQUIRE(cx.maximal_simplices() == std::vector<Subset>{{0, 1, 2}});
    for (int L : {1, 2, 3, 4})
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q)
                CHECK(geodesic_upper(cx, p, q, L) == Ext(Rat(1)));
}

TEST_CASE("path complex: exact endpoints distance and skeleton lower bound") {
    auto cx = build_rips(z_interval(0, 7), Rat(1));
    for (int L : {1, 2, 3}) CHECK(geodesic_upper(cx, 0, 7, L) == Ext(Rat(7)));
    CHECK(geodesic_lower(cx, 0, 7) == Rat(5));  // (7 hops - 2) / c_1
    // Single-simplex vertices clamp to 0.
    CHECK(geodesic_lower(cx, 0, 1) == Rat(0));
}

TEST_CASE("glued triangles: bracketing the sqrt(3) geodesic") {
    auto cx = build_rips(glued_triangles(), Rat(1));
    CHECK(cx.dimension() == 2);
    Ext u3 = geodesic_upper(cx, 0, 3, 3);
    REQUIRE_FALSE(u3.is_inf());
    CHECK(u3.finite() >= Rat(17320, 10000));
    CHECK(u3.finite() <= Rat(180, 100));
    // An even subdivision hits the midpoint of the shared edge: near-exact.
    Ext u2 = geodesic_upper(cx, 0, 3, 2);
    CHECK(u2.finite() >= Rat(17320, 10000));
    CHECK(u2.finite() <= Rat(17325, 10000));
}

TEST_CASE("geodesic_upper is nonincreasing along divisibility chains") {
    auto cx = build_rips(glued_triangles(), Rat(1));
    auto grid_cx = build_rips(grid(3, 3), Rat(2));
    for (const auto* c : {&cx, &grid_cx}) {
        for (int p = 0; p < c->vertex_space()->size(); ++p)
            for (int q = p + 1; q < c->vertex_space()->size(); ++q) {
                Ext u1 = geodesic_upper(*c, p, q, 1);
                Ext u2 = geodesic_upper(*c, p, q, 2);
                Ext u4 = geodesic_upper(*c, p, q, 4);
                if (u1.is_inf()) continue;
                CHECK(u2 <= u1);
                CHECK(u4 <= u2);
            }
    }
}

TEST_CASE("estimator is symmetric and satisfies the triangle inequality") {
    auto cx = build_rips(grid(4, 2), Rat(2));
    int n = cx.vertex_space()->size();
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            CHECK(geodesic_upper(cx, p, q, 2) == geodesic_upper(cx, q, p, 2));
    std::mt19937_64 rng(9);
    for (int t = 0; t < 40; ++t) {
        int a = (int)(rng() % n), b = (int)(rng() % n), c = (int)(rng() % n);
        Ext ab = geodesic_upper(cx, a, b, 2), bc = geodesic_upper(cx, b, c, 2),
            ac = geodesic_upper(cx, a, c, 2);
        CHECK(ac <= ab + bc);
    }
}

TEST_CASE("bracketing: lower <= upper across the corpus") {
    std::vector<MetricSimplicialComplex> corpus;
    corpus.push_back(build_rips(z_interval(0, 7), Rat(1)));
    corpus.push_back(build_rips(grid(5, 5), Rat(1)));
    corpus.push_back(build_rips(grid(5, 2), Rat(2)));
    corpus.push_back(build_rips(glued_triangles(), Rat(1)));
    corpus.push_back(build_rips(z_interval(0, 12), Rat(2)));
    std::mt19937_64 rng(77);
    int checked = 0;
    for (const auto& cx : corpus) {
        int n = cx.vertex_space()->size();
        for (int t = 0; t < 120; ++t) {
            int p = (int)(rng() % n), q = (int)(rng() % n);
            if (p == q) continue;
            Ext up = geodesic_upper(cx, p, q, 3);
            Rat lo = geodesic_lower(cx, p, q);
            if (!up.is_inf()) CHECK(Ext(lo) <= up);
            ++checked;
        }
    }
    CHECK(checked >= 500);
}

TEST_CASE("monotone inclusion P_a into P_b") {
    auto sp = grid(4, 3);
    auto pa = build_rips(sp, Rat(1));
    auto pb = build_rips(sp, Rat(2));
    // Simplexwise: every maximal simplex of P_a sits inside one of P_b.
    for (const auto& s : pa.maximal_simplices()) {
        bool inside = false;
        for (const auto& t : pb.maximal_simplices())
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) inside = true;
        CHECK(inside);
    }
    // The identity vertex map is 1-Lipschitz for the upper estimator.
    std::mt19937_64 rng(13);
    for (int t = 0; t < 30; ++t) {
        int p = (int)(rng() % sp->size()), q = (int)(rng() % sp->size());
        CHECK(geodesic_upper(pb, p, q, 2) <= geodesic_upper(pa, p, q, 2));
    }
}

TEST_CASE("disconnected pairs give the infinite sentinel") {
    auto cx = build_rips(z_pts({0, 100}), Rat(1));
    CHECK(geodesic_upper(cx, 0, 1, 3).is_inf());
}

TEST_CASE("dimension constants derivation") {
    const auto& d1 = derive_dimension_constants(1);
    CHECK(d1.alpha == Rat(1));
    CHECK(d1.c == Rat(1));
    CHECK(d1.beta == Rat(2));
    for (int n = 1; n < 4; ++n) {
        const auto& lo = derive_dimension_constants(n);
        const auto& hi = derive_dimension_constants(n + 1);
        CHECK(lo.alpha <= hi.alpha);
        CHECK(hi.beta == Rat(2) * hi.alpha);
        if (n >= 1) CHECK(hi.samples > 0);
    }
    // The planar boundary-detour ratio reaches 4/sqrt(3) on the glued pair;
    // the derived alpha_2 is that ratio inflated by 11/10.
    const auto& d2 = derive_dimension_constants(2);
    CHECK(d2.max_ratio >= 2.0);
    CHECK(d2.alpha.to_double() == doctest::Approx(d2.max_ratio * 1.1).epsilon(1e-4));
    CHECK_THROWS_WITH_AS(derive_dimension_constants(5),
                         doctest::Contains("DIMENSION_CAP_EXCEEDED"), Error);
}

TEST_CASE("lemma sweep: comparison passes on the corpus (dimensions 1..3)") {
    struct Fixture {
        MetricSimplicialComplex cx;
        Rat a;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({build_rips(z_interval(0, 7), Rat(1)), Rat(1)});
    fixtures.push_back({build_rips(grid(5, 5), Rat(1)), Rat(1)});
    fixtures.push_back({build_rips(z_interval(0, 12), Rat(2)), Rat(2)});
    fixtures.push_back({build_rips(grid(5, 2), Rat(2)), Rat(2)});
    fixtures.push_back({build_rips(glued_triangles(), Rat(1)), Rat(1)});
    for (auto& f : fixtures) {
        CHECK(f.cx.dimension() <= 3);
        LemmaParams lp;
        lp.a = f.a;
        auto rep = verify_lemma(f.cx, RipsLemma::Comparison, lp);
        INFO(rep.lemma, " ", rep.worst);
        CHECK(rep.status == LemmaReport::Status::PASS);
        CHECK(rep.checked > 0);
    }
}

TEST_CASE("lemma sweep: exact equality case of the comparison lemma") {
    // On the path complex the inequality is tight: d = upper, alpha = 1.
    auto cx = build_rips(z_interval(0, 7), Rat(1));
    LemmaParams lp;
    lp.a = Rat(1);
    auto rep = verify_lemma(cx, RipsLemma::Comparison, lp);
    CHECK(rep.status == LemmaReport::Status::PASS);
    CHECK(rep.worst.find("margin 0") != std::string::npos);
}

TEST_CASE("lemma sweep: separation") {
    SUBCASE("interval paths, the worked example") {
        auto sp = z_interval(0, 13);
        auto cx = build_rips(sp, Rat(1));
        LemmaParams lp;
        lp.a = Rat(1);
        lp.eps = Rat(7);
        lp.families = {{0, 1, 2, 3}, {10, 11, 12, 13}};
        auto rep = verify_lemma(cx, RipsLemma::Separation, lp);
        CHECK(rep.status == LemmaReport::Status::PASS);
    }
    SUBCASE("premise violations are rejected") {
        auto sp = z_interval(0, 13);
        auto cx = build_rips(sp, Rat(1));
        LemmaParams lp;
        lp.a = Rat(1);
        lp.eps = Rat(20);
        lp.families = {{0, 1}, {12, 13}};
        CHECK_THROWS_WITH_AS(verify_lemma(cx, RipsLemma::Separation, lp),
                             doctest::Contains("BAD_PARAMS"), Error);
    }
    SUBCASE("triangle strip at scale 2") {
        auto sp = z_interval(0, 12);
        auto cx = build_rips(sp, Rat(2));
        LemmaParams lp;
        lp.a = Rat(2);
        lp.eps = Rat(10);
        lp.families = {{0, 1}, {11, 12}};
        auto rep = verify_lemma(cx, RipsLemma::Separation, lp);
        CHECK(rep.status == LemmaReport::Status::PASS);
    }
    SUBCASE("2 x 13 grid at scale 2 (dimension 3)") {
        auto sp = grid(13, 2);
        auto cx = build_rips(sp, Rat(2));
        CHECK(cx.dimension() == 3);
        Subset left, right;
        for (int i = 0; i < sp->size(); ++i) {
            auto name = sp->name(i);
            if (name.rfind("0,", 0) == 0) left.push_back(i);
            if (name.rfind("12,", 0) == 0) right.push_back(i);
        }
        LemmaParams lp;
        lp.a = Rat(2);
        lp.eps = Rat(12);
        lp.families = {left, right};
        auto rep = verify_lemma(cx, RipsLemma::Separation, lp);
        CHECK(rep.status == LemmaReport::Status::PASS);
    }
}

TEST_CASE("lemma sweep: neighborhood") {
    auto sp = z_interval(0, 12);
    auto cx = build_rips(sp, Rat(2));
    LemmaParams lp;
    lp.a = Rat(2);
    lp.eps = Rat(2);
    lp.families = {{0, 1, 2}};
    auto rep = verify_lemma(cx, RipsLemma::Neighborhood, lp);
    CHECK(rep.status == LemmaReport::Status::PASS);
    CHECK(rep.checked > 0);
}

TEST_CASE("lemma sweep: scaled comparison and cone retraction, m in {4, 8}") {
    auto sp = z_pts({0, 3, 6});
    for (int m : {4, 8}) {
        auto cx = build_scaled_rips(sp, {0, 2}, Rat(3), Rat(6), m);
        LemmaParams lp;
        lp.a = Rat(3);
        lp.b = Rat(6);
        lp.m = m;
        lp.families = {{0, 2}};
        auto rep = verify_lemma(cx, RipsLemma::ScaledComparison, lp);
        CHECK(rep.status == LemmaReport::Status::PASS);
        LemmaParams cp = lp;
        cp.eps = Rat(1);
        auto rep2 = verify_lemma(cx, RipsLemma::ConeRetraction, cp);
        CHECK(rep2.status == LemmaReport::Status::PASS);
        CHECK(rep2.checked > 0);
    }
    SUBCASE("cone checks reject dimension 3") {
        std::vector<std::vector<Ext>> m4(4, std::vector<Ext>(4, Ext(Rat(4))));
        std::vector<std::string> names{"a", "b", "c", "d"};
        for (int i = 0; i < 4; ++i) m4[i][i] = Ext(Rat(0));
        auto sp4 = FiniteMetricSpace::from_matrix(names, m4);
        auto cx4 = build_scaled_rips(sp4, {}, Rat(1), Rat(4), 4);
        LemmaParams lp;
        lp.a = Rat(1);
        lp.families = {{0}};
        CHECK_THROWS_WITH_AS(verify_lemma(cx4, RipsLemma::ScaledComparison, lp),
                             doctest::Contains("UNSUPPORTED_DIMENSION"), Error);
    }
}

TEST_CASE("scaled complexes reject the skeleton lower bound") {
    auto sp = z_pts({0, 4});
    auto cx = build_scaled_rips(sp, {}, Rat(1), Rat(4), 4);
    CHECK_THROWS_WITH_AS(geodesic_lower(cx, 0, 1), doctest::Contains("UNSUPPORTED_DIMENSION"),
                         Error);
}

TEST_CASE("complex dimension respects the bounded-geometry profile") {
    // A clique at scale d lies inside any of its vertices' d-balls, so
    // dim + 1 <= N(d).
    struct Case {
        SpacePtr sp;
        Rat d;
    };
    std::vector<Case> cases = {{grid(5, 5), Rat(1)}, {grid(5, 2), Rat(2)},
                               {z_interval(0, 12), Rat(2)}};
    for (const auto& c : cases) {
        auto cx = build_rips(c.sp, c.d);
        CHECK(cx.dimension() + 1 <= bounded_geometry_profile(*c.sp, c.d));
    }
}

TEST_CASE("subdivision node counts grow with L") {
    auto cx = build_rips(glued_triangles(), Rat(1));
    CHECK(subdivision_node_count(cx, 1) == 4);
    CHECK(subdivision_node_count(cx, 2) == 9);
    CHECK(subdivision_node_count(cx, 3) == 16);
}
