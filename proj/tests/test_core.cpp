#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/test_util.hpp"
#include "tvspec/errors.hpp"
#include "tvspec/extreal.hpp"
#include "tvspec/seminorm.hpp"

using namespace tvspec;
using namespace tvspec::testutil;

TEST_CASE("extended reals: infinity absorbs addition and max") {
    ExtReal inf = ExtReal::infinity();
    ExtReal two = ExtReal::from_value(2.0);
    CHECK((inf + two).is_infinite());
    CHECK(max(inf, two).is_infinite());
    CHECK((two + ExtReal::zero()).value() == doctest::Approx(2.0));
    CHECK((two * inf).is_infinite());
    CHECK((ExtReal::zero() * inf).is_zero());
    CHECK((two / ExtReal::zero()).is_infinite());
    CHECK((ExtReal::zero() / ExtReal::zero()).is_zero());
}

TEST_CASE("extended reals: log-domain products and roots are exact") {
    ExtReal big = ExtReal::from_log2(4000.0); // far beyond double range
    ExtReal r = big.nth_root(1000);
    CHECK(r.log2() == doctest::Approx(4.0));
    CHECK((big * big).log2() == doctest::Approx(8000.0));
}

TEST_CASE("log scalars: sum and cancellation") {
    LogScalar a = LogScalar::from_real(3.0);
    LogScalar b = LogScalar::from_real(-3.0);
    CHECK((a + b).is_zero());
    LogScalar c = LogScalar::from_real(0.25) + LogScalar::from_real(0.75);
    CHECK(c.to_complex().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(LogScalar::from_real(0.25).pow_int(3).to_complex().real() ==
          doctest::Approx(1.0 / 64.0).epsilon(1e-14));
}

TEST_CASE("coordinate seminorm on unit vectors") {
    Seminorm p2 = Seminorm::coordinate(2);
    Seminorm p1 = Seminorm::coordinate(1);
    SparseVector e2 = SparseVector::unit(2);
    CHECK(p2.eval(e2).value() == doctest::Approx(1.0));
    CHECK(p1.eval(e2).is_zero());
}

TEST_CASE("finite max seminorm takes the max of moduli") {
    Seminorm p = Seminorm::finite_max({1, 3});
    SparseVector x;
    x.set(1, LogScalar::from_real(2.0));
    x.set(3, LogScalar::from_real(-5.0));
    CHECK(p.eval(x).value() == doctest::Approx(5.0));
}

TEST_CASE("graph norm accumulates powers and rejects a null handle") {
    OperatorPtr d = diag_geometric(0.5);
    Seminorm g2 = Seminorm::graph_norm(2, d);
    SparseVector e3 = SparseVector::unit(3);
    // |e3| + |T e3| + |T^2 e3| = 1 + 1/8 + 1/64
    CHECK(g2.eval(e3).value() == doctest::Approx(1.0 + 0.125 + 0.015625));

    Seminorm broken = Seminorm::graph_norm(1, nullptr);
    CHECK_THROWS_AS(broken.eval(e3), DomainError);
}

TEST_CASE("coordinate family enumeration") {
    SeminormFamily plain = SeminormFamily::coordinate(false);
    auto l2 = plain.enumerate(2);
    REQUIRE(l2.size() == 2);
    CHECK(l2[0].describe() == "p[1]");
    CHECK(l2[1].describe() == "p[2]");

    SeminormFamily directed = SeminormFamily::coordinate(true);
    auto d2 = directed.enumerate(2);
    REQUIRE(d2.size() == 3);
    CHECK(d2[0].describe() == "p[1]");
    CHECK(d2[1].describe() == "p[2]");
    CHECK(d2[2].describe() == "max{1,2}");

    CHECK(plain.enumerate(0).empty());
    CHECK(directed.enumerate(0).empty());
}

TEST_CASE("enumeration is prefix-closed in the level") {
    for (bool dir : {false, true}) {
        SeminormFamily f = SeminormFamily::coordinate(dir);
        for (int level = 1; level <= 5; ++level) {
            auto a = f.enumerate(level);
            auto b = f.enumerate(level + 1);
            REQUIRE(a.size() <= b.size());
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].describe() == b[i].describe());
        }
    }
    SeminormFamily boxes = SeminormFamily::prefix_boxes();
    auto a = boxes.enumerate(3);
    auto b = boxes.enumerate(4);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].describe() == b[i].describe());
}

TEST_CASE("every seminorm kind is homogeneous and subadditive on random data") {
    Rng rng(20240811ull);
    OperatorPtr d = diag_geometric(0.5);
    std::vector<Seminorm> kinds = {
        Seminorm::coordinate(2),
        Seminorm::finite_max({1, 2, 5}),
        Seminorm::weighted_sup({1, 3, 4}, WeightRule::harmonic(2.0)),
        Seminorm::minkowski_box(WeightRule::double_exponential_box()),
        Seminorm::sup_norm(),
        Seminorm::graph_norm(2, d),
    };
    for (const Seminorm& p : kinds) {
        for (int t = 0; t < 1000; ++t) {
            SparseVector x = random_sparse(rng, 8);
            SparseVector y = random_sparse(rng, 8);
            double c = rng.uniform(-3.0, 3.0);
            LogScalar lc = LogScalar::from_real(c);

            double lhs = p.eval(lc * x).value();
            double rhs = std::abs(c) * p.eval(x).value();
            CHECK(rel_close(lhs, rhs, 1e-12));

            double sum = p.eval(x + y).value();
            double parts = p.eval(x).value() + p.eval(y).value();
            CHECK(sum <= parts * (1.0 + 1e-12) + 1e-300);
        }
    }
}
