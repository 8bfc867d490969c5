#pragma once

#include <string>
#include <vector>

#include "tvspec/extreal.hpp"

namespace tvspec {

/// Step function on the circle [0,1) with log2-represented values.
/// Pieces are [start_i, start_{i+1}) with the last piece wrapping around;
/// value_lg uses -inf for zero. Values never go negative in this gallery, so
/// the log2 representation is total.
class StepFunction {
public:
    static StepFunction constant(double value_lg);
    static StepFunction indicator(double a, double b); // 1 on [a,b), 0 elsewhere

    /// piece list given as (start, value_lg), starts strictly increasing in [0,1)
    static StepFunction from_pieces(std::vector<std::pair<double, double>> pieces);

    std::size_t piece_count() const { return starts_.size(); }
    double value_lg_at(double t) const;

    /// Lebesgue measure of { f >= 2^threshold_lg }.
    double superlevel_measure(double threshold_lg) const;

    /// f(t - delta): every piece moves forward by delta (mod 1).
    StepFunction rotated(double delta) const;

    /// multiply by 2^dlg
    StepFunction scaled_lg(double dlg) const;

    /// pointwise sum in the linear domain, computed by log-sum-exp
    friend StepFunction log_domain_sum(const StepFunction& a, const StepFunction& b);

private:
    std::vector<double> starts_;
    std::vector<double> value_lg_;
    void normalize();
};

struct RotationOperator {
    /// golden-ratio conjugate by default; irrational by declaration (the
    /// double approximation is documented in the error budget)
    double alpha = 0.61803398874989484820;
};

/// (T^k f)(t) = f(t - k alpha); breakpoints move by k*alpha mod 1.
StepFunction rotate_apply(const RotationOperator& T, const StepFunction& f, long k);

/// Smallest M such that the arcs [k alpha, k alpha + 1/n] (mod 1) for
/// k = 1..M cover the circle, by interval sweep with 1e-12 slack. Throws
/// NoCover past the 10^6 cap.
long covering_count(double alpha, long n);

struct BlockReport {
    long n = 0;
    long k_begin = 0, k_end = 0;
    double superlevel_measure = 0; // measure of { sum_{block} T^k h / 2^k >= 1 }
    bool full_measure = false;     // >= 1 - 1e-9
    double per_term_min_measure = 0;
    bool per_term_ok = false;      // every term >= 1 on an arc of length 1/n
};

struct CounterexampleReport {
    double alpha = 0;
    std::vector<long> covering_counts; // M_1 .. M_{n_max+1}
    std::vector<long> block_ends;      // s_n = M_1 + .. + M_n
    std::vector<BlockReport> blocks;   // n = 1 .. n_max
    bool all_blocks_full = false;
};

/// Builds the step function h (value 2^{s_n} on (1/(n+1), 1/n], continued
/// with value 2^{s_{n_max+1}} below 1/(n_max+1)) and certifies per block n
/// that sum_{k=s_{n-1}+1}^{s_n} T^k h / 2^k >= 1 on nearly the whole circle.
CounterexampleReport build_counterexample(double alpha, int n_max);

struct MeasureRadiusReport {
    bool neighborhoods_invariant = false; // measure of superlevel sets preserved
    bool diverges_below_one = false;      // nu = 1/2 keeps mass away from zero
    bool converges_above_one = false;     // nu = 2 sends superlevel mass to zero
    double chain_value = 0;               // the common value of all four radii
    std::string detail;
};

/// Certifies the radius chain value 1: measure preservation pins the lower
/// side through strong convergence failure below 1, the invariant
/// neighborhoods pin r_nn from above, and the ordering collapses the chain.
MeasureRadiusReport measure_radius_check(const RotationOperator& T);

} // namespace tvspec
