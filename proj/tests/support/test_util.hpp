#pragma once

#include <cmath>

#include "tvspec/operator.hpp"
#include "tvspec/rng.hpp"
#include "tvspec/seminorm.hpp"

namespace tvspec::testutil {

inline OperatorPtr left_shift() { return OperatorRep::weighted_shift(1, WeightRule::unit()); }
inline OperatorPtr forward_shift() { return OperatorRep::weighted_shift(-1, WeightRule::unit()); }
inline OperatorPtr decaying_shift() {
    return OperatorRep::weighted_shift(1, WeightRule::stirling_shift());
}
inline OperatorPtr diag_geometric(double q) { return OperatorRep::diagonal(WeightRule::geometric(q)); }
inline OperatorPtr diag_harmonic() { return OperatorRep::diagonal(WeightRule::harmonic(1.0)); }

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool rel_close(double a, double b, double tol) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= tol * scale;
}

/// |a-b| <= tol * max(|a|, |b|, 1)
inline bool mag_close(Complex a, Complex b, double tol) {
    double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) <= tol * scale;
}

inline SparseVector random_sparse(Rng& rng, Index max_idx, int max_support = 5) {
    SparseVector x;
    int support = 1 + (int)rng.uniform_int(0, max_support - 1);
    for (int s = 0; s < support; ++s) {
        double mag = rng.uniform(-4.0, 4.0);
        double ang = rng.uniform(0.0, 6.283185307179586);
        x.add(rng.uniform_int(1, max_idx),
              LogScalar::from_parts(Complex(std::cos(ang), std::sin(ang)), mag));
    }
    return x;
}

} // namespace tvspec::testutil
