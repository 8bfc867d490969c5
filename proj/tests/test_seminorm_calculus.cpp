#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/test_util.hpp"
#include "tvspec/seminorm_calculus.hpp"

using namespace tvspec;
using namespace tvspec::testutil;

TEST_CASE("mixed seminorm: left shift against coordinates") {
    OperatorPtr L = left_shift();

    // (Lx)_1 = x_2, fully constrained by p = |x_2|
    auto v = mixed_seminorm(L, Seminorm::coordinate(2), Seminorm::coordinate(1));
    CHECK(v.certainty == Certainty::Exact);
    CHECK(v.value.value() == doctest::Approx(1.0));

    // (Lx)_1 = x_2 is unconstrained by |x_1| <= 1
    auto w = mixed_seminorm(L, Seminorm::coordinate(1), Seminorm::coordinate(1));
    CHECK(w.certainty == Certainty::Exact);
    CHECK(w.value.is_infinite());

    // (Lx)_2 = x_3 unconstrained by max{|x_1|,|x_2|}
    auto u = operator_seminorm(L, Seminorm::finite_max({1, 2}));
    CHECK(u.value.is_infinite());
}

TEST_CASE("mixed seminorm: identity and diagonals") {
    OperatorPtr I = OperatorRep::identity();
    for (const Seminorm& p : {Seminorm::coordinate(4), Seminorm::finite_max({1, 2, 3}),
                              Seminorm::sup_norm(),
                              Seminorm::minkowski_box(WeightRule::double_exponential_box())}) {
        auto v = operator_seminorm(I, p);
        CHECK(v.certainty == Certainty::Exact);
        CHECK(v.value.value() == doctest::Approx(1.0));
    }

    auto d = operator_seminorm(diag_geometric(0.5), Seminorm::coordinate(3));
    CHECK(d.value.value() == doctest::Approx(0.125));
}

TEST_CASE("mixed seminorm: decaying shift reads an unconstrained coordinate") {
    auto v = operator_seminorm(decaying_shift(), Seminorm::coordinate(1));
    CHECK(v.certainty == Certainty::Exact);
    CHECK(v.value.is_infinite());
}

TEST_CASE("mixed seminorm: box profile against a coordinate (growth row sums)") {
    // row 1 of T^n has entry (m)^m/(m+n)^(m+n) at column 1+n against bound (2k)^(2k)
    MixedSeminormEngine engine(decaying_shift());
    Seminorm box = Seminorm::minkowski_box(WeightRule::double_exponential_box());
    auto v = engine.power_value(30, box, Seminorm::coordinate(1));
    CHECK(v.certainty == Certainty::Exact);
    // (2*31)^(2*31) / 31^31 = 4^31 * 31^31, compare in log2
    double expected = 62.0 * std::log2(62.0) - 31.0 * std::log2(31.0);
    CHECK(v.value.log2() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sampling oracle certifies known sups from below") {
    OperatorPtr I = OperatorRep::identity();
    ExtReal id = sampled_sup_oracle(I, Seminorm::coordinate(1), Seminorm::coordinate(1), 100, 5);
    CHECK(id.value() >= 1.0 - 1e-9);
    CHECK(id.value() <= 1.0 + 1e-9);

    ExtReal esc = sampled_sup_oracle(left_shift(), Seminorm::coordinate(1),
                                     Seminorm::coordinate(1), 100, 5);
    CHECK(esc.is_infinite());

    ExtReal d = sampled_sup_oracle(diag_geometric(0.5), Seminorm::coordinate(3),
                                   Seminorm::coordinate(3), 100, 5);
    CHECK(d.value() == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("unit sphere and unit ball constraints agree when the sup is finite") {
    std::vector<std::tuple<OperatorPtr, Seminorm, Seminorm>> cases = {
        {diag_geometric(0.5), Seminorm::coordinate(2), Seminorm::coordinate(2)},
        {forward_shift(), Seminorm::coordinate(1), Seminorm::coordinate(2)},
        {OperatorRep::identity(), Seminorm::finite_max({1, 2}), Seminorm::finite_max({1, 2})},
    };
    for (const auto& [S, p, q] : cases) {
        ExtReal ball = sampled_sup_oracle(S, p, q, 400, 11, 1, ConstraintMode::UnitBall);
        ExtReal sphere = sampled_sup_oracle(S, p, q, 400, 11, 1, ConstraintMode::UnitSphere);
        CHECK(rel_close(ball.value(), sphere.value(), 1e-9));
    }
}

TEST_CASE("bound law q(Sx) <= m_{p,q}(S) p(x) on random probes") {
    Rng rng(31337ull);
    std::vector<std::tuple<OperatorPtr, Seminorm, Seminorm>> cases = {
        {diag_geometric(0.5), Seminorm::coordinate(2), Seminorm::coordinate(2)},
        {left_shift(), Seminorm::coordinate(4), Seminorm::coordinate(3)},
        {decaying_shift(), Seminorm::finite_max({1, 2, 3, 4}), Seminorm::finite_max({1, 2, 3})},
        {OperatorRep::identity(), Seminorm::sup_norm(), Seminorm::sup_norm()},
    };
    for (const auto& [S, p, q] : cases) {
        auto m = mixed_seminorm(S, p, q);
        REQUIRE(m.certainty == Certainty::Exact);
        REQUIRE(m.value.is_finite());
        for (int t = 0; t < 1000; ++t) {
            SparseVector x = random_sparse(rng, 8);
            double lhs = q.eval(S->apply(x)).value();
            double rhs = (m.value * p.eval(x)).value();
            CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
        }
    }
}

TEST_CASE("exact values dominate the sampling oracle") {
    std::vector<std::tuple<OperatorPtr, Seminorm, Seminorm>> cases = {
        {diag_geometric(0.5), Seminorm::coordinate(2), Seminorm::coordinate(2)},
        {left_shift(), Seminorm::coordinate(2), Seminorm::coordinate(1)},
        {decaying_shift(), Seminorm::finite_max({1, 2, 3}), Seminorm::coordinate(1)},
        {OperatorRep::identity(), Seminorm::sup_norm(), Seminorm::sup_norm()},
        {diag_harmonic(), Seminorm::minkowski_box(WeightRule::unit()),
         Seminorm::minkowski_box(WeightRule::unit())},
    };
    for (const auto& [S, p, q] : cases) {
        auto exact = mixed_seminorm(S, p, q);
        REQUIRE(exact.certainty == Certainty::Exact);
        ExtReal lo = sampled_sup_oracle(S, p, q, 300, 17);
        if (exact.value.is_infinite()) continue;
        CHECK(lo.value() <= exact.value.value() * (1.0 + 1e-9));
    }
}
