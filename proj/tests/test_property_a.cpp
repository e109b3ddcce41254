#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coarse/property_a.hpp"

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

HeightFn value_height() {
    return [](const FiniteMetricSpace& sp, int i) { return std::stoll(sp.name(i)); };
}

} // namespace

TEST_CASE("constant-1 witness over a single bounded piece is always valid") {
    auto sp = z_interval(0, 9);
    ExactnessWitness w;
    w.space = sp;
    w.cover = {sp->all_points()};
    w.phi = {std::vector<Rat>(sp->size(), Rat(1))};
    w.R = Rat(5);
    w.eps = Rat(1, 10);
    w.B = Rat(9);
    auto rep = verify_witness(w);
    CHECK(rep.valid);
    CHECK(rep.worst_variation == Rat(0));
}

TEST_CASE("characteristic functions of a split cover fail at the boundary") {
    auto sp = z_interval(0, 9);
    Subset left, right;
    for (int i = 0; i < sp->size(); ++i)
        (std::stoll(sp->name(i)) <= 4 ? left : right).push_back(i);
    ExactnessWitness w;
    w.space = sp;
    w.cover = {left, right};
    w.phi.assign(2, std::vector<Rat>(sp->size(), Rat(0)));
    for (int i : left) w.phi[0][i] = Rat(1);
    for (int i : right) w.phi[1][i] = Rat(1);
    w.R = Rat(1);
    w.eps = Rat(1, 2);
    w.B = Rat(9);
    auto rep = verify_witness(w);
    CHECK_FALSE(rep.valid);
    CHECK(rep.unit_sum);
    CHECK(rep.worst_variation == Rat(2));
}

TEST_CASE("tent witness from an interval certificate") {
    auto sp = z_interval(-8, 8);
    auto cert = play_game(sp, strategy_interval_slabs(value_height(), "value"), {Rat(8)});
    REQUIRE(verify_certificate(cert).valid);
    auto w = pou_from_certificate(cert, Rat(1), Rat(1));
    auto rep = verify_witness(w);
    CHECK(rep.valid);
    CHECK(rep.worst_variation <= Rat(1));

    SUBCASE("unit sums are exact at every point") {
        for (int x = 0; x < sp->size(); ++x) {
            Rat sum(0);
            for (const auto& f : w.phi) sum += f[x];
            CHECK(sum == Rat(1));
        }
    }
    SUBCASE("halving R never increases the worst variation") {
        ExactnessWitness half = w;
        half.R = w.R / Rat(2);
        CHECK(verify_witness(half).worst_variation <= rep.worst_variation);
    }
}

TEST_CASE("degenerate certificate yields the constant witness") {
    auto sp = z_interval(0, 5);
    DecompositionCertificate cert;
    cert.ambient = sp;
    cert.bound = Rat(5);
    auto w = pou_from_certificate(cert, Rat(1), Rat(1));
    CHECK(w.cover.size() == 1);
    CHECK(verify_witness(w).valid);
}

TEST_CASE("no suitable step is an error") {
    auto sp = z_interval(0, 20);
    auto cert = play_game(sp, strategy_interval_slabs(value_height(), "value"), {Rat(2)});
    REQUIRE(cert.depth() == 1);
    CHECK_THROWS_WITH_AS(pou_from_certificate(cert, Rat(10), Rat(1)),
                         doctest::Contains("NO_SUITABLE_STEP"), Error);
}

TEST_CASE("witnesses from played certificates verify across the corpus") {
    // Z and Z^2 balls, (R, eps) = (1,1) and (2,1).
    auto zb = ball(FreeAbelianSpec{1, {}}, Rat(8));
    auto z2 = ball(FreeAbelianSpec{2, {}}, Rat(8));
    auto c1 = play_game(zb.space, strategy_coordinate_slabs(zb), {Rat(8)});
    auto c2 = play_game(z2.space, strategy_coordinate_slabs(z2), {Rat(8), Rat(8)});
    for (const auto* cert : {&c1, &c2}) {
        REQUIRE(verify_certificate(*cert).valid);
        for (auto [R, eps] : std::vector<std::pair<Rat, Rat>>{{Rat(1), Rat(1)}, {Rat(2), Rat(1)}}) {
            auto w = pou_from_certificate(*cert, R, eps);
            auto rep = verify_witness(w);
            CHECK(rep.valid);
        }
    }
}
