#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvspec/sparse_vector.hpp"
#include "tvspec/weight_rule.hpp"

namespace tvspec {

class OperatorRep;
using OperatorPtr = std::shared_ptr<const OperatorRep>;

/// Structured linear operator on the sequence space, immutable after
/// construction. Columns have closed form for every kind, so application to
/// finitely supported vectors is exact; powers of shift/diagonal/scale nodes
/// additionally have closed-form coefficients evaluated in log magnitude.
///
/// WeightedShift(offset c, w):  e_k -> w(k) e_{k-c}, dropping to 0 when k-c < 1.
/// Diagonal(d):                 e_k -> d(k) e_k.
/// Banded(bands):               sum of WeightedShift actions.
/// FiniteRank(f_i, y_i):        x -> sum_i <f_i, x> y_i.
class OperatorRep {
public:
    enum class Kind { WeightedShift, Diagonal, Banded, FiniteRank, Sum, Product, Scale };

    static OperatorPtr weighted_shift(int offset, WeightRule weight);
    static OperatorPtr diagonal(WeightRule d);
    static OperatorPtr banded(std::vector<std::pair<int, WeightRule>> bands);
    static OperatorPtr finite_rank(std::vector<SparseVector> functionals,
                                   std::vector<SparseVector> ranges);
    static OperatorPtr sum(std::vector<OperatorPtr> terms);
    static OperatorPtr product(std::vector<OperatorPtr> factors); // product({A,B}) x = A(B(x))
    static OperatorPtr scale(LogScalar factor, OperatorPtr inner);
    static OperatorPtr identity();
    static OperatorPtr zero();

    Kind kind() const { return kind_; }

    SparseVector apply(const SparseVector& x) const;

    /// Transpose action; apply_transpose(e_m) is row m of the matrix.
    SparseVector apply_transpose(const SparseVector& x) const;

    SparseVector row(Index m) const { return apply_transpose(SparseVector::unit(m)); }
    SparseVector column(Index j) const { return apply(SparseVector::unit(j)); }

    /// Coefficient of e_j in T^n e_i, exact; closed form for shift, diagonal
    /// and scalings of those, repeated application otherwise. Throws
    /// OverflowError if the log-magnitude form itself overflows.
    LogScalar power_coefficient(long n, Index i, Index j) const;

    /// Row m of T^n (closed form where available).
    SparseVector power_row(long n, Index m) const;

    SparseVector power_apply(long n, SparseVector x) const;

    // ----- structure certificates (used by classify / radii) -----

    struct FiniteRankView {
        std::vector<SparseVector> functionals;
        std::vector<SparseVector> ranges;
    };

    /// Largest column index any row can read; nullopt when unbounded.
    std::optional<Index> reach_bound() const;

    /// Largest row index that can carry a nonzero value; nullopt when unbounded.
    std::optional<Index> range_bound() const;

    /// Exact finite-rank factorization when the reach is finite.
    std::optional<FiniteRankView> finite_rank_view() const;

    /// Every row m reads only columns <= m (prefix boxes are self-mapped).
    bool lower_prefix() const;

    /// Diagonal, or a scale/sum/product of diagonal-like operators.
    bool diagonal_like() const;
    LogScalar diagonal_entry(Index k) const; // requires diagonal_like()
    /// Upper bound for sup_{k>=lo} |entry|; exact for plain and scaled
    /// diagonals, sub{additive,multiplicative} combination for composites.
    ExtReal diagonal_tail_sup(Index lo) const;
    const WeightRule* plain_diagonal_rule() const; // non-null only for an unscaled Diagonal
    bool diagonal_exact_tail() const; // plain or scaled diagonal: tail_sup is exact

    /// A (scaled) single shift with offset >= 1 whose weight is nonzero on a
    /// scanned initial segment: the neighborhood funnel argument applies.
    bool shift_funnel() const;

    int shift_offset() const { return offset_; } // WeightedShift/funnel only
    const std::vector<OperatorPtr>& children() const { return children_; }
    const WeightRule& rule() const { return rules_.front().second; }
    const std::vector<std::pair<int, WeightRule>>& bands() const { return rules_; }
    const std::vector<SparseVector>& functionals() const { return functionals_; }
    const std::vector<SparseVector>& ranges() const { return ranges_; }
    LogScalar scale_factor() const { return factor_; }

    std::string describe() const;

private:
    OperatorRep() = default;

    Kind kind_ = Kind::Diagonal;
    int offset_ = 0;                                // WeightedShift
    std::vector<std::pair<int, WeightRule>> rules_; // WeightedShift/Diagonal/Banded
    std::vector<SparseVector> functionals_;         // FiniteRank
    std::vector<SparseVector> ranges_;              // FiniteRank
    std::vector<OperatorPtr> children_;             // Sum/Product/Scale
    LogScalar factor_;                              // Scale
};

/// sum(A, -B) probe helper: ||(AB - BA) x||_sup on the given probe.
ExtReal commutator_defect(const OperatorPtr& a, const OperatorPtr& b, const SparseVector& probe);

} // namespace tvspec
