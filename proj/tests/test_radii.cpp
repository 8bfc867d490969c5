#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/test_util.hpp"
#include "tvspec/errors.hpp"
#include "tvspec/radii.hpp"

using namespace tvspec;
using namespace tvspec::testutil;

namespace {

std::vector<ExtReal> sequence(long n, const std::function<double(long)>& log2_t) {
    std::vector<ExtReal> t;
    for (long i = 1; i <= n; ++i) t.push_back(ExtReal::from_log2(log2_t(i)));
    return t;
}

RadiusAux default_aux() {
    RadiusAux aux;
    for (Index k = 1; k <= 8; ++k) aux.probes.push_back(SparseVector::unit(k));
    aux.bounded_sets = SeminormFamily::bounded_boxes(
        {WeightRule::unit(), WeightRule::power(2.0)});
    aux.candidate_families = {SeminormFamily::coordinate(true), SeminormFamily::prefix_boxes()};
    return aux;
}

} // namespace

TEST_CASE("limsup bracket: geometric sequence is pinned exactly") {
    auto t = sequence(200, [](long n) { return n * std::log2(3.0); });
    LimsupBracket b = limsup_root(t);
    CHECK(b.lower.value() <= 3.0);
    CHECK(b.upper.value() >= 3.0);
    CHECK(b.upper.value() - b.lower.value() <= 0.05);
    CHECK(b.exact);
}

TEST_CASE("limsup bracket: polynomial factor does not push the bracket off 1/2") {
    auto t = sequence(500, [](long n) { return 2.0 * std::log2((double)n) - (double)n; });
    LimsupBracket b = limsup_root(t);
    CHECK(b.lower.value() <= 0.5 + 1e-9);
    CHECK(b.upper.value() >= 0.5 - 1e-9);
    CHECK(b.upper.value() - b.lower.value() <= 0.05);
}

TEST_CASE("limsup bracket: zero sequence and short input") {
    std::vector<ExtReal> z(64, ExtReal::zero());
    LimsupBracket b = limsup_root(z);
    CHECK(b.lower.is_zero());
    CHECK(b.upper.is_zero());
    CHECK(b.exact);

    std::vector<ExtReal> tiny(7, ExtReal::one());
    CHECK_THROWS_AS(limsup_root(tiny), InsufficientData);
}

TEST_CASE("limsup characterization probes agree on the model grid") {
    for (double c : {0.25, 1.0, 7.0}) {
        for (double r : {0.5, 1.0, 1.4}) {
            for (double a : {-2.0, 0.0, 2.0}) {
                auto t = sequence(500, [&](long n) {
                    return std::log2(c) + n * std::log2(r) + a * std::log2((double)n);
                });
                LimsupBracket b = limsup_root(t);
                for (auto [lo, hi] : {std::pair{b.direct_lo, b.direct_hi},
                                      std::pair{b.convergence_lo, b.convergence_hi},
                                      std::pair{b.boundedness_lo, b.boundedness_hi}}) {
                    INFO("c=", c, " r=", r, " a=", a, " lo=", lo.value(), " hi=", hi.value());
                    CHECK(lo.value() <= r + 1e-9);
                    CHECK(hi.value() >= r - 1e-9);
                    CHECK(hi.value() - lo.value() <= 1e-2);
                }
            }
        }
    }
}

TEST_CASE("five radii of a constant diagonal collapse to the entry") {
    OperatorPtr T = diag_geometric(1.0); // entries all 1.0? geometric(1)=1^k=1
    T = OperatorRep::diagonal(WeightRule::constant(Complex(0.5, 0.0)));
    SeminormFamily P = SeminormFamily::coordinate(true);
    RadiusAux aux = default_aux();
    auto ests = estimate_all_radii(T, P, aux, 60, 3);
    for (const auto& e : ests) {
        CHECK(e.exact);
        CHECK(e.lower.value() == doctest::Approx(0.5));
        CHECK(e.upper.value() == doctest::Approx(0.5));
    }
    OrderingReport ord = verify_ordering(ests);
    CHECK(ord.consistent);
}

TEST_CASE("decaying shift: strong radius probes stay at zero") {
    OperatorPtr T = decaying_shift();
    RadiusAux aux;
    for (Index k = 1; k <= 20; ++k) aux.probes.push_back(SparseVector::unit(k));
    RadiusEstimate e = estimate_radius(RadiusKind::L, T, SeminormFamily::coordinate(false), aux,
                                       50, 4);
    CHECK(e.lower_certified);
    CHECK(e.upper.value() <= 1e-3);
}

TEST_CASE("decaying shift: doubly exponential box drives the bb bound past 10") {
    OperatorPtr T = decaying_shift();
    RadiusAux aux;
    aux.probes.push_back(SparseVector::unit(1));
    aux.bounded_sets = SeminormFamily::bounded_boxes({WeightRule::double_exponential_box()});
    RadiusEstimate e = estimate_radius(RadiusKind::BB, T, SeminormFamily::coordinate(false), aux,
                                       30, 3);
    CHECK(e.lower_certified);
    CHECK(e.lower.value() >= 10.0);
}

TEST_CASE("forward shift: all five radii vanish exactly") {
    OperatorPtr T = forward_shift();
    SeminormFamily P = SeminormFamily::coordinate(true);
    RadiusAux aux = default_aux();
    auto ests = estimate_all_radii(T, P, aux, 100, 3);
    for (const auto& e : ests) {
        CHECK(e.exact);
        CHECK(e.lower.is_zero());
        CHECK(e.upper.is_zero());
    }
    CHECK(verify_ordering(ests).consistent);
}

TEST_CASE("decaying shift ordering: l stays below the diverging bb bound") {
    OperatorPtr T = decaying_shift();
    SeminormFamily P = SeminormFamily::coordinate(false);
    RadiusAux aux;
    for (Index k = 1; k <= 20; ++k) aux.probes.push_back(SparseVector::unit(k));
    aux.bounded_sets = SeminormFamily::bounded_boxes({WeightRule::double_exponential_box()});
    RadiusEstimate l = estimate_radius(RadiusKind::L, T, P, aux, 50, 3);
    RadiusEstimate bb = estimate_radius(RadiusKind::BB, T, P, aux, 30, 3);
    CHECK(l.upper.value() <= 1e-3);
    CHECK(bb.lower.value() >= 10.0);
    OrderingReport ord = verify_ordering({l, bb});
    CHECK(ord.consistent);
}

TEST_CASE("radius arithmetic on commuting diagonals") {
    OperatorPtr S = OperatorRep::diagonal(WeightRule::constant(Complex(0.5, 0.0)));
    OperatorPtr T = OperatorRep::diagonal(WeightRule::constant(Complex(1.0 / 3.0, 0.0)));
    ArithmeticReport r = radius_arithmetic_check(S, T, 123);
    CHECK(r.product_ok);
    CHECK(r.sum_ok);
    CHECK(r.rc_product.value() == doctest::Approx(1.0 / 6.0));
    CHECK(r.rc_sum.value() == doctest::Approx(0.5 + 1.0 / 3.0));

    OperatorPtr H = diag_harmonic();
    ArithmeticReport r2 = radius_arithmetic_check(H, S, 77);
    CHECK(r2.product_ok);
    CHECK(r2.rc_product.value() == doctest::Approx(0.5)); // sup_k 1/(2k)
    CHECK(r2.sum_ok);

    OperatorPtr Z = OperatorRep::diagonal(WeightRule::constant(Complex(0.0, 0.0)));
    ArithmeticReport r3 = radius_arithmetic_check(Z, S, 9);
    CHECK(r3.rc_product.is_zero());
    CHECK(r3.product_ok);

    CHECK_THROWS_AS(radius_arithmetic_check(left_shift(), H, 5), NonCommuting);
}

TEST_CASE("fast null transport") {
    auto factorial_seq = [](long n) {
        SparseVector x;
        double lg = -std::lgamma((double)n + 1.0) / std::log(2.0);
        x.set(1, LogScalar::from_log2(lg));
        return x;
    };
    auto halving_seq = [](long n) {
        SparseVector x;
        x.set(1, LogScalar::from_log2(-(double)n));
        return x;
    };
    CHECK(fast_null_check(OperatorRep::diagonal(WeightRule::constant(Complex(0.5, 0.0))),
                          factorial_seq, 120) == FastNullVerdict::Holds);
    CHECK(fast_null_check(OperatorRep::diagonal(WeightRule::constant(Complex(3.0, 0.0))),
                          factorial_seq, 140) == FastNullVerdict::Holds);
    CHECK(fast_null_check(OperatorRep::diagonal(WeightRule::constant(Complex(3.0, 0.0))),
                          halving_seq, 120) == FastNullVerdict::PreconditionViolation);
}
