#pragma once

#include <string>
#include <vector>

#include "tvspec/radii.hpp"

namespace tvspec {

/// Compactness is a certificate of the representation kind: diagonal with
/// entries tending to zero, or finite rank. Nothing is decided from
/// black-box application.
struct CompactModel {
    OperatorPtr op;
    Index truncation = 64; // leading block dimension, at most 512

    static CompactModel diagonal(WeightRule decaying, Index truncation);
    static CompactModel finite_rank(std::vector<SparseVector> functionals,
                                    std::vector<SparseVector> ranges, Index truncation);
};

/// Eigenvalues of the truncation x truncation leading block; exact entries
/// for diagonal kinds, dense eigensolve otherwise.
std::vector<Complex> spectrum_of_truncation(const CompactModel& model);

struct CompactEqualityReport {
    ExtReal radius_lower, radius_upper; // collapsed-radius bracket
    double sigma_radius = 0;            // max |eig| of truncations plus the tail bound
    double gap = 0;                     // distance from sigma_radius to the bracket
    bool within = false;                // gap <= 1e-6
    std::string detail;
};

/// Collapsed-radius bracket against the truncation spectrum radius; for
/// diagonals the tail bound sup_{k>D} |d(k)| makes the comparison rigorous
/// rather than heuristic.
CompactEqualityReport compact_radius_equality(const CompactModel& model, long depth, int level);

} // namespace tvspec
