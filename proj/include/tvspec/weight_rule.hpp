#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tvspec/log_scalar.hpp"
#include "tvspec/sparse_vector.hpp"

namespace tvspec {

/// Closed-form index -> scalar rule, used for shift and diagonal weights and
/// for box bound profiles.
///
/// Besides pointwise evaluation a rule declares its tail behaviour
/// (sup over k >= lo, accumulation points, support bound). Exact radius and
/// spectrum formulas need these attributes; they are supplied with each
/// registered rule rather than inferred, so growth profiles such as
/// (2n)^(2n) stay honest.
class WeightRule {
public:
    WeightRule() = default;

    const std::string& name() const { return name_; }
    LogScalar eval(Index k) const { return eval_(k); }

    /// sup_{k >= lo} |w(k)|; exact for every registered rule.
    ExtReal tail_sup(Index lo) const { return tail_sup_(lo); }
    ExtReal sup_abs() const { return tail_sup_(1); }

    /// Nonzero entries only at k <= *support_end (finite-support rules).
    std::optional<Index> support_end() const { return support_end_; }

    /// Accumulation points of the value sequence (for resolvent distance).
    const std::vector<Complex>& tail_limit_points() const { return limit_points_; }

    // --- registered rules ---

    static WeightRule constant(Complex c);
    static WeightRule geometric(double ratio);       // ratio^k
    static WeightRule harmonic(double c);            // c / k
    static WeightRule power(double s);               // k^s
    static WeightRule unit() { return constant(Complex(1.0, 0.0)); }
    static WeightRule linear() { return power(1.0); }

    /// (k-1)^(k-1) / k^k, the superexponentially decaying shift weight.
    static WeightRule stirling_shift();

    /// (2k)^(2k), the doubly exponential box bound profile.
    static WeightRule double_exponential_box();

    /// Explicit finite list w(1..n); zero beyond.
    static WeightRule finite(std::vector<Complex> values);

    /// Arbitrary closed-form rule with caller-supplied tail attributes.
    static WeightRule custom(std::string name, std::function<LogScalar(Index)> eval,
                             std::function<ExtReal(Index)> tail_sup,
                             std::vector<Complex> limit_points = {});

    /// Build by name for the CLI layer ("constant", "geometric", ...).
    static WeightRule by_name(const std::string& rule, double param);

private:
    std::string name_;
    std::function<LogScalar(Index)> eval_;
    std::function<ExtReal(Index)> tail_sup_;
    std::optional<Index> support_end_;
    std::vector<Complex> limit_points_;
};

} // namespace tvspec
