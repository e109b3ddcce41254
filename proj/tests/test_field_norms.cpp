#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coarse/enumerate.hpp"
#include "coarse/groups.hpp"
#include "coarse/matrix.hpp"

#include <random>
#include <set>

using namespace coarse;

namespace {

RingElement F2(const std::string& s) { return parse_ring_element(s, 2); }
RingElement Q(const std::string& s) { return parse_ring_element(s, 0); }

/// Random dense polynomial over the field, degree window [lo, hi].
RingElement random_poly(std::mt19937_64& rng, int field, int lo, int hi) {
    Poly p(field);
    for (int e = lo; e <= hi; ++e) {
        long long c = field == 0 ? (long long)(rng() % 7) - 3 : (long long)(rng() % field);
        if (c != 0) p = p + Poly::monomial(field, mono_var(0, e), Rat(c));
    }
    if (p.is_zero()) p = Poly::constant(field, Rat(1));
    return RingElement(p);
}

MatrixOverRing wreath_matrix(long long n, const RingElement& p_of_x2) {
    // (X^n, p(X^2); 0, X^-n) over Z[X, X^-1].
    RingElement xn = RingElement::var(0, 0, (int)n);
    RingElement xmn = RingElement::var(0, 0, (int)-n);
    return MatrixOverRing(
        2, {xn, p_of_x2, RingElement::from_rat(0, Rat(0)), xmn});
}

} // namespace

TEST_CASE("ring element basics and parsing") {
    CHECK(F2("X^2+X") == F2("X*(X+1)"));
    CHECK(F2("X+X").is_zero());
    CHECK(Q("(X+1)*(X-1)") == Q("X^2-1"));
    CHECK(Q("1/2*X + 1/2*X") == Q("X"));
    // Fractions normalize: common factors cancel.
    CHECK(Q("(X^2-1)") / Q("X-1") == Q("X+1"));
    // Laurent monomial denominators are absorbed exactly.
    CHECK((Q("X+1") / Q("X^2")) == Q("X^-1 + X^-2"));
}

TEST_CASE("degree norm") {
    Norm deg = Norm::degree();
    CHECK(deg(F2("X^2+X")).exp() == 2);
    CHECK(deg(Q("1") / Q("X+1")).exp() == -1);
    CHECK(deg(F2("0")).is_zero());
    CHECK(deg(F2("X^-3")).exp() == -3);
}

TEST_CASE("p-adic norm") {
    Norm g2 = Norm::p_adic(2);
    CHECK(g2(Q("12")).exp() == -2);
    CHECK(g2(Q("1/8")).exp() == 3);
    CHECK(g2(Q("3")).exp() == 0);
    CHECK(g2(Q("0")).is_zero());
    CHECK_THROWS(Norm::p_adic(6));
}

TEST_CASE("order norm at a prime polynomial") {
    Norm at_x = Norm::order_at(Poly::variable(2, 0), 0);
    CHECK(at_x(F2("X^3+X^2")).exp() == -2);
    CHECK(at_x(F2("X^-1")).exp() == 1);
    Norm at_x1 = Norm::order_at(Poly::variable(2, 0) + Poly::constant(2, Rat(1)), 0);
    CHECK(at_x1(F2("X^2+1")).exp() == -2);  // (X+1)^2 over F_2
    CHECK(at_x1(F2("X")).exp() == 0);
}

TEST_CASE("Gauss extension takes the max over coefficients") {
    auto base = std::make_shared<Norm>(Norm::p_adic(2));
    Norm gauss = Norm::gauss(base, 0);
    CHECK(gauss(Q("4*X^2 + 2*X + 8")).exp() == -1);
    CHECK(gauss(Q("1/2*X")).exp() == 1);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        RingElement p = random_poly(rng, 0, 0, 5);
        long long best = -1000000;
        bool any = false;
        for (const auto& term : p.num().terms()) {
            NormValue v = (*base)(RingElement::from_rat(0, term.coef));
            if (v.is_exponent()) {
                best = std::max(best, v.exp());
                any = true;
            }
        }
        REQUIRE(any);
        CHECK(gauss(p).exp() == best);
    }
}

TEST_CASE("evaluation seminorm is exact at rational points") {
    Norm ev = Norm::eval_at(Rat(3, 7));
    CHECK(ev(Q("X")).real_value() == Rat(3, 7));
    CHECK(ev(Q("7*X - 3")).is_zero() == false);
    CHECK(ev(Q("7*X - 3")).real_value() == Rat(0));  // vanishes on a nonzero element
    CHECK(ev(Q("X^2+1")).real_value() == Rat(58, 49));
}

TEST_CASE("non-archimedean axioms hold exactly on random samples") {
    std::mt19937_64 rng(17);
    auto base = std::make_shared<Norm>(Norm::p_adic(3));
    std::vector<std::pair<Norm, int>> norms = {
        {Norm::degree(), 2},
        {Norm::order_at(Poly::variable(2, 0), 0), 2},
        {Norm::p_adic(2), 0},
        {Norm::gauss(base, 0), 0},
    };
    for (auto& [norm, field] : norms) {
        for (int t = 0; t < 500; ++t) {
            RingElement x = field == 0 && norm.kind() == Norm::Kind::PAdic
                                ? RingElement::from_rat(0, Rat((long long)(rng() % 2000) - 1000,
                                                               1 + (long long)(rng() % 40)))
                                : random_poly(rng, field, -2, 4);
            RingElement y = field == 0 && norm.kind() == Norm::Kind::PAdic
                                ? RingElement::from_rat(0, Rat((long long)(rng() % 2000) - 1000,
                                                               1 + (long long)(rng() % 40)))
                                : random_poly(rng, field, -2, 4);
            if (x.is_zero() || y.is_zero()) continue;
            // Multiplicativity: exponents add.
            CHECK(norm(x * y).exp() == norm(x).exp() + norm(y).exp());
            // Ultrametric inequality, exact on exponents.
            RingElement s = x + y;
            if (!s.is_zero())
                CHECK(norm(s).exp() <= std::max(norm(x).exp(), norm(y).exp()));
        }
    }
}

TEST_CASE("matrix inverse is exact") {
    MatrixOverRing m(2, {F2("X"), F2("X^2"), F2("0"), F2("X^-1")});
    CHECK((m * m.inverse()).is_identity());
    MatrixOverRing q(3, {Q("1"), Q("X"), Q("X^2"), Q("0"), Q("1"), Q("X"), Q("0"), Q("0"),
                         Q("1")});
    CHECK((q * q.inverse()).is_identity());
    CHECK_THROWS_WITH_AS(MatrixOverRing(2, {Q("X"), Q("X"), Q("X"), Q("X")}),
                         doctest::Contains("SINGULAR_MATRIX"), Error);
}

TEST_CASE("length_gl on catalog matrices") {
    Norm deg = Norm::degree();
    CHECK(length_gl(deg, MatrixOverRing::identity(2, 2)) == 0);
    // diag(X, X^-1) over F_2(X).
    MatrixOverRing d(2, {F2("X"), F2("0"), F2("0"), F2("X^-1")});
    CHECK(length_gl(deg, d) == 1);
    // The wreath-product matrix (X, X^2; 0, X^-1).
    MatrixOverRing w = wreath_matrix(1, Q("X^2"));
    CHECK(length_gl(deg, w) == 2);
}

TEST_CASE("length_gl subadditivity and symmetry on enumerated matrices") {
    Norm deg = Norm::degree();
    std::vector<MatrixOverRing> pool;
    for (long long n = -1; n <= 1; ++n)
        for (int p = 0; p < 4; ++p) {
            RingElement poly = Q(std::vector<std::string>{"0", "X^2", "X^-2",
                                                          "X^2+1"}[p]);
            pool.push_back(wreath_matrix(n, poly));
        }
    for (const auto& g : pool) {
        CHECK(length_gl(deg, g) == length_gl(deg, g.inverse()));
        for (const auto& h : pool)
            CHECK(length_gl(deg, g * h) <= length_gl(deg, g) + length_gl(deg, h));
    }
}

TEST_CASE("archimedean length via operator norm") {
    MatrixOverRing m(2, {Q("2"), Q("0"), Q("0"), Q("1/2")});
    ArchLength l = arch_length_gl(m);
    CHECK(l.value == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    CHECK(arch_length_gl(MatrixOverRing::identity(2, 0)).value ==
          doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("dilation") {
    MatrixOverRing id = MatrixOverRing::identity(3, 2);
    CHECK(dilation(F2("X"), id) == id);
    MatrixOverRing u(2, {F2("1"), F2("X"), F2("0"), F2("1")});
    MatrixOverRing du = dilation(F2("X"), u);
    CHECK(du.at(0, 1) == F2("X^2"));
    CHECK_THROWS_WITH_AS(dilation(F2("X"), MatrixOverRing(2, {F2("X"), F2("0"), F2("0"),
                                                              F2("X^-1")})),
                         doctest::Contains("NOT_UNIPOTENT"), Error);
}

TEST_CASE("dilation is an automorphism on random 3x3 pairs") {
    std::mt19937_64 rng(23);
    RingElement theta = F2("X");
    for (int t = 0; t < 30; ++t) {
        auto up = [&](                ) {
            return MatrixOverRing(3, {F2("1"), random_poly(rng, 2, 0, 3), random_poly(rng, 2, 0, 3),
                                      F2("0"), F2("1"), random_poly(rng, 2, 0, 3),
                                      F2("0"), F2("0"), F2("1")});
        };
        MatrixOverRing u = up(), v = up();
        CHECK(dilation(theta, u * v) == dilation(theta, u) * dilation(theta, v));
    }
}

TEST_CASE("unipotent level") {
    Norm deg = Norm::degree();
    RingElement theta = F2("X");
    MatrixOverRing low(2, {F2("1"), F2("X^-2"), F2("0"), F2("1")});
    CHECK(unipotent_level(low, theta, deg) == 0);
    MatrixOverRing hi(2, {F2("1"), F2("X^2"), F2("0"), F2("1")});
    CHECK(unipotent_level(hi, theta, deg) == 2);
    CHECK_THROWS_WITH_AS(unipotent_level(hi, F2("X^-1"), deg),
                         doctest::Contains("THETA_NOT_EXPANDING"), Error);
}

TEST_CASE("diagonal length matches length_gl on diagonal matrices") {
    Norm deg = Norm::degree();
    RingElement pi = F2("X");
    CHECK(diagonal_length(deg, pi, {0, 0}) == 0);
    CHECK(diagonal_length(deg, pi, {2, -3}) == 3);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        long long k1 = (long long)(rng() % 9) - 4, k2 = (long long)(rng() % 9) - 4;
        MatrixOverRing d(2, {F2("X").pow((int)k1), F2("0"), F2("0"), F2("X").pow((int)k2)});
        CHECK(diagonal_length(deg, pi, {k1, k2}) == length_gl(deg, d));
    }
}

TEST_CASE("B_A enumeration: pinned catalog counts") {
    SUBCASE("F_2[X] at k=2: all polynomials of degree <= 2, including 0") {
        auto got = enumerate_ball_BA(RingSpec::fq_poly(2), {Norm::degree()}, 2);
        CHECK(got.size() == 8);
    }
    SUBCASE("F_2[X, X^-1] with degree and order norms at k=1") {
        auto got = enumerate_ball_BA(RingSpec::fq_laurent(2),
                                     {Norm::degree(), Norm::order_at(Poly::variable(2, 0), 0)},
                                     1);
        CHECK(got.size() == 8);
    }
    SUBCASE("Z[1/6] at k=0 with |a| <= 2") {
        auto got = enumerate_ball_BA(RingSpec::z_inv_n(6), {Norm::p_adic(2), Norm::p_adic(3)},
                                     0, {{Norm::eval_at(Rat(0)), Rat(2)}});
        REQUIRE(got.size() == 5);
        std::set<long long> vals;
        for (const auto& e : got) vals.insert(e.num().constant_value().num());
        CHECK(vals == std::set<long long>{-2, -1, 0, 1, 2});
    }
}

TEST_CASE("B_A enumeration in two variables") {
    // F_2[X, Y] with per-variable degree norms at k=1: coefficients over the
    // four monomials 1, X, Y, XY.
    auto got = enumerate_ball_BA(RingSpec::fq_poly(2, 2), {Norm::degree(0), Norm::degree(1)},
                                 1);
    CHECK(got.size() == 16);
    for (const auto& e : got) {
        CHECK(Norm::degree(0)(e).leq_exp(1));
        CHECK(Norm::degree(1)(e).leq_exp(1));
    }
}

TEST_CASE("B_A enumeration cross-checked against a raw scan") {
    SUBCASE("F_2[X, X^-1]") {
        auto got = enumerate_ball_BA(RingSpec::fq_laurent(2),
                                     {Norm::degree(), Norm::order_at(Poly::variable(2, 0), 0)},
                                     1);
        // Independent route: scan a strictly larger exponent box and filter
        // by norm evaluation only.
        std::set<std::string> expect;
        Norm deg = Norm::degree();
        Norm ord = Norm::order_at(Poly::variable(2, 0), 0);
        for (int mask = 0; mask < (1 << 7); ++mask) {
            Poly p(2);
            for (int bit = 0; bit < 7; ++bit)
                if (mask & (1 << bit)) p = p + Poly::monomial(2, mono_var(0, bit - 3), Rat(1));
            RingElement e(p);
            if (deg(e).leq_exp(1) && ord(e).leq_exp(1)) {
                // The scan box must strictly contain the hits.
                CHECK((p.is_zero() || (*p.degree(0) < 3 && *p.order(0) > -3)));
                expect.insert(e.str());
            }
        }
        std::set<std::string> have;
        for (const auto& e : got) have.insert(e.str());
        CHECK(have == expect);
    }
    SUBCASE("Z[X] with two evaluation bounds") {
        std::vector<ArchBound> arch = {{Norm::eval_at(Rat(0)), Rat(1)},
                                       {Norm::eval_at(Rat(1)), Rat(1)}};
        auto got = enumerate_ball_BA(RingSpec::z_poly(), {Norm::degree()}, 1, arch);
        std::set<std::string> expect;
        for (long long a = -5; a <= 5; ++a)
            for (long long b = -5; b <= 5; ++b) {
                if (std::llabs(a) > 1 || std::llabs(a + b) > 1) continue;
                Poly p(0);
                if (a != 0) p = p + Poly::constant(0, Rat(a));
                if (b != 0) p = p + Poly::monomial(0, mono_var(0, 1), Rat(b));
                expect.insert(RingElement(p).str());
            }
        std::set<std::string> have;
        for (const auto& e : got) have.insert(e.str());
        CHECK(have == expect);
        CHECK(have.size() == 9);
    }
}

TEST_CASE("enumeration budget errors") {
    CHECK_THROWS_WITH_AS(enumerate_ball_BA(RingSpec::fq_laurent(2), {Norm::degree()}, 1),
                         doctest::Contains("ENUMERATION_BUDGET_EXCEEDED"), Error);
    CHECK_THROWS_WITH_AS(enumerate_ball_BA(RingSpec::z_poly(), {Norm::degree()}, 3,
                                           {{Norm::eval_at(Rat(0)), Rat(1)}}),
                         doctest::Contains("ENUMERATION_BUDGET_EXCEEDED"), Error);
}

TEST_CASE("matrix ball: 2x2 unipotent over F_2[X] by length") {
    MatrixGroupSpec ms;
    ms.dim = 2;
    ms.field = 2;
    for (int j = 0; j <= 4; ++j)
        ms.generators.push_back(
            MatrixOverRing(2, {F2("1"), F2("X").pow(j), F2("0"), F2("1")}));
    ms.length = LengthFunction::single(Norm::degree());
    auto b = ball(ms, Rat(4));
    CHECK(b.space->size() == 32);  // all polynomials with degree <= 4
    // Non-archimedean length properties on every enumerated pair.
    for (size_t i = 0; i < b.mat_elems.size(); ++i) {
        CHECK(ms.length(b.mat_elems[i]) == ms.length(b.mat_elems[i].inverse()));
        for (size_t j = 0; j < b.mat_elems.size(); ++j)
            CHECK(ms.length(b.mat_elems[i] * b.mat_elems[j]) <=
                  ms.length(b.mat_elems[i]) + ms.length(b.mat_elems[j]));
    }
}
