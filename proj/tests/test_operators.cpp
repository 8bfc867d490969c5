#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/test_util.hpp"
#include "tvspec/errors.hpp"
#include "tvspec/operator.hpp"

using namespace tvspec;
using namespace tvspec::testutil;

TEST_CASE("shift actions on unit vectors") {
    OperatorPtr L = left_shift();
    SparseVector y = L->apply(SparseVector::unit(2));
    CHECK(y.get(1).to_complex().real() == doctest::Approx(1.0));
    CHECK(y.support_size() == 1);

    CHECK(L->apply(SparseVector::unit(1)).empty()); // falls off the boundary

    OperatorPtr D = diag_geometric(0.5);
    SparseVector z = D->apply(SparseVector::unit(3));
    CHECK(z.get(3).to_complex().real() == doctest::Approx(0.125));

    // decaying shift: T e_2 = (1/4) e_1
    OperatorPtr T = decaying_shift();
    SparseVector w = T->apply(SparseVector::unit(2));
    CHECK(w.get(1).to_complex().real() == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("power coefficients in closed form") {
    OperatorPtr T = decaying_shift();
    // coefficient of e_1 in T^2 e_3 is 1^1 / 3^3
    CHECK(T->power_coefficient(2, 3, 1).to_complex().real() ==
          doctest::Approx(1.0 / 27.0).epsilon(1e-13));
    CHECK(T->power_coefficient(0, 7, 7).to_complex().real() == doctest::Approx(1.0));
    CHECK(T->power_coefficient(0, 7, 6).is_zero());

    OperatorPtr D2 = OperatorRep::diagonal(WeightRule::constant(Complex(2.0, 0.0)));
    CHECK(D2->power_coefficient(5, 1, 1).to_complex().real() == doctest::Approx(32.0));
}

TEST_CASE("power coefficients agree with repeated application") {
    std::vector<OperatorPtr> ops = {
        left_shift(),
        forward_shift(),
        decaying_shift(),
        diag_geometric(0.5),
        OperatorRep::scale(LogScalar::from_real(-1.5), diag_harmonic()),
    };
    for (const auto& T : ops) {
        for (long n = 0; n <= 10; ++n) {
            for (Index i = 1; i <= 20; ++i) {
                SparseVector v = T->power_apply(n, SparseVector::unit(i));
                for (Index j = 1; j <= 20; ++j) {
                    Complex closed = T->power_coefficient(n, i, j).to_complex();
                    Complex iterated = v.get(j).to_complex();
                    CHECK(mag_close(closed, iterated, 1e-12));
                }
            }
        }
    }
}

TEST_CASE("operator algebra nodes") {
    OperatorPtr L = left_shift();
    OperatorPtr R = forward_shift();

    OperatorPtr twice = OperatorRep::scale(LogScalar::from_real(2.0), OperatorRep::identity());
    CHECK(twice->apply(SparseVector::unit(1)).get(1).to_complex().real() == doctest::Approx(2.0));

    OperatorPtr zero_sum =
        OperatorRep::sum({L, OperatorRep::scale(LogScalar::from_real(-1.0), L)});
    Rng rng(7ull);
    for (int t = 0; t < 50; ++t)
        CHECK(zero_sum->apply(random_sparse(rng, 12)).empty());

    // (L R) e_1 = L e_2 = e_1
    OperatorPtr LR = OperatorRep::product({L, R});
    SparseVector y = LR->apply(SparseVector::unit(1));
    CHECK(y.get(1).to_complex().real() == doctest::Approx(1.0));
    CHECK(y.support_size() == 1);
}

TEST_CASE("product node composes exactly on random probes") {
    OperatorPtr A = decaying_shift();
    OperatorPtr B = diag_harmonic();
    OperatorPtr AB = OperatorRep::product({A, B});
    Rng rng(99ull);
    for (int t = 0; t < 1000; ++t) {
        SparseVector x = random_sparse(rng, 15);
        SparseVector direct = AB->apply(x);
        SparseVector composed = A->apply(B->apply(x));
        CHECK(sup_dist(direct, composed).is_zero());
    }
}

TEST_CASE("transpose rows match matrix entries") {
    std::vector<SparseVector> fs = {SparseVector::unit(2), SparseVector::unit(5)};
    std::vector<SparseVector> ys;
    SparseVector y1; y1.set(1, LogScalar::from_real(3.0)); ys.push_back(y1);
    SparseVector y2; y2.set(4, LogScalar::from_real(-2.0)); ys.push_back(y2);

    std::vector<OperatorPtr> ops = {
        left_shift(), forward_shift(), diag_geometric(0.25),
        OperatorRep::finite_rank(fs, ys),
        OperatorRep::banded({{1, WeightRule::unit()}, {0, WeightRule::harmonic(1.0)}}),
        OperatorRep::product({left_shift(), diag_harmonic()}),
    };
    for (const auto& T : ops) {
        for (Index m = 1; m <= 12; ++m) {
            SparseVector row = T->row(m);
            for (Index j = 1; j <= 12; ++j) {
                Complex via_row = row.get(j).to_complex();
                Complex via_col = T->column(j).get(m).to_complex();
                CHECK(mag_close(via_row, via_col, 1e-13));
            }
        }
    }
}

TEST_CASE("structure certificates") {
    CHECK(left_shift()->shift_funnel());
    CHECK(decaying_shift()->shift_funnel());
    CHECK_FALSE(forward_shift()->shift_funnel());
    CHECK(forward_shift()->lower_prefix());
    CHECK_FALSE(left_shift()->lower_prefix());
    CHECK(diag_harmonic()->lower_prefix());

    CHECK_FALSE(left_shift()->reach_bound().has_value());
    OperatorPtr fr = OperatorRep::finite_rank({SparseVector::unit(3)}, {SparseVector::unit(1)});
    auto reach = fr->reach_bound();
    REQUIRE(reach.has_value());
    CHECK(*reach == 3);
    CHECK(fr->finite_rank_view().has_value());

    OperatorPtr finite_diag =
        OperatorRep::diagonal(WeightRule::finite({Complex(1, 0), Complex(2, 0)}));
    auto view = finite_diag->finite_rank_view();
    REQUIRE(view.has_value());
    CHECK(view->functionals.size() == 2);
}

TEST_CASE("overflow guard stays quiet at desk scale") {
    OperatorPtr T = decaying_shift();
    CHECK_NOTHROW(T->power_coefficient(60, 80, 20));
}
