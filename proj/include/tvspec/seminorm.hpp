#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tvspec/operator.hpp"
#include "tvspec/sparse_vector.hpp"
#include "tvspec/weight_rule.hpp"

namespace tvspec {

/// Evaluable seminorm on the sequence space.
///
/// Coordinate(m):        |x_m|
/// FiniteMax(I):         max_{i in I} |x_i|
/// WeightedSup(W, w):    max_{i in W} w(i) |x_i|            (finite window W)
/// MinkowskiBox(c):      sup_i |x_i| / c(i)                  (all coordinates;
///                        the Minkowski functional of the box |x_i| <= c(i))
/// GraphNorm(n, T):      sum_{k=0..n} sup_i |(T^k x)_i|
///
/// Every kind is absolutely homogeneous and subadditive; evaluation is exact
/// on finitely supported vectors since the sups reduce to the support.
class Seminorm {
public:
    enum class Kind { Coordinate, FiniteMax, WeightedSup, MinkowskiBox, GraphNorm };

    static Seminorm coordinate(Index m);
    static Seminorm finite_max(std::vector<Index> indices);
    static Seminorm weighted_sup(std::vector<Index> window, WeightRule multiplier);
    static Seminorm minkowski_box(WeightRule bound);
    static Seminorm sup_norm() { return minkowski_box(WeightRule::unit()); }
    static Seminorm graph_norm(int level, OperatorPtr op);

    Kind kind() const { return kind_; }

    ExtReal eval(const SparseVector& x) const;

    /// True for every kind whose unit ball is a product of per-coordinate
    /// discs (everything except GraphNorm).
    bool coordinatewise() const { return kind_ != Kind::GraphNorm; }

    /// sup{ |x_j| : p(x) <= 1 }; INFINITY for coordinates the seminorm does
    /// not read. Only meaningful for coordinatewise kinds.
    ExtReal allowance(Index j) const;

    /// Whether every coordinate has finite allowance (MinkowskiBox).
    bool constrains_all() const { return kind_ == Kind::MinkowskiBox; }

    /// The finite constrained index set for windowed kinds.
    const std::vector<Index>& window() const { return window_; }

    int graph_level() const { return graph_level_; }
    const OperatorPtr& graph_operator() const { return graph_op_; }
    const WeightRule& profile() const { return *profile_; }

    std::string describe() const;

    friend bool operator==(const Seminorm& a, const Seminorm& b) {
        return a.describe() == b.describe();
    }

private:
    Kind kind_ = Kind::Coordinate;
    std::vector<Index> window_;              // Coordinate/FiniteMax/WeightedSup
    std::shared_ptr<WeightRule> profile_;    // WeightedSup multiplier or box bound
    int graph_level_ = 0;                    // GraphNorm
    OperatorPtr graph_op_;                   // GraphNorm
};

/// Enumerable family of seminorms; enumerate(L) is finite, deterministic and
/// prefix-closed in L.
class SeminormFamily {
public:
    enum class Role { Generating, BoundedSetFamily };
    enum class Kind { Coordinate, PrefixBoxes, SingleNorm, SupNorm, BoundedBoxes, Graph };

    /// Coordinate seminorms p_1..p_L; when directed, each block also carries
    /// every FiniteMax over subsets of {1..L} so finite maxima are dominated
    /// inside the family.
    static SeminormFamily coordinate(bool directed);

    /// FiniteMax({1..l}) for l = 1..L; the canonical directed base of the
    /// coordinate topology.
    static SeminormFamily prefix_boxes();

    /// The single norm max_{i<=dim} |x_i| of a dim-dimensional model.
    static SeminormFamily single_norm(Index dim);

    /// The full supremum norm as a one-member family (locally bounded
    /// sequence models).
    static SeminormFamily sup_norm_family();

    /// Minkowski functionals of explicit box profiles (a bounded-set family).
    static SeminormFamily bounded_boxes(std::vector<WeightRule> bounds);

    /// Graph seminorms ||.||_0 .. ||.||_{L-1} of a closed-operator model.
    static SeminormFamily graph(OperatorPtr op);

    std::vector<Seminorm> enumerate(int level) const;

    bool directed() const { return directed_; }
    Role role() const { return role_; }
    Kind kind() const { return kind_; }
    Index dim() const { return dim_; }
    const OperatorPtr& graph_operator() const { return graph_op_; }
    std::string name() const;

private:
    Kind kind_ = Kind::Coordinate;
    Role role_ = Role::Generating;
    bool directed_ = false;
    Index dim_ = 0;
    std::vector<WeightRule> bounds_;
    OperatorPtr graph_op_;
};

} // namespace tvspec
