#include "tvspec/seminorm_calculus.hpp"

#include <algorithm>
#include <cmath>

#include "tvspec/errors.hpp"
#include "tvspec/rng.hpp"

namespace tvspec {

namespace {

constexpr Index kScanHorizon = 512;

/// Multiplier with which q reads coordinate i: q(x) >= mult(i) |x_i|, with
/// equality attained on single-coordinate vectors. Zero means q ignores i.
ExtReal q_multiplier(const Seminorm& q, Index i) {
    switch (q.kind()) {
        case Seminorm::Kind::Coordinate:
            return i == q.window().front() ? ExtReal::one() : ExtReal::zero();
        case Seminorm::Kind::FiniteMax:
            return std::binary_search(q.window().begin(), q.window().end(), i)
                       ? ExtReal::one()
                       : ExtReal::zero();
        case Seminorm::Kind::WeightedSup:
            return std::binary_search(q.window().begin(), q.window().end(), i)
                       ? q.profile().eval(i).abs()
                       : ExtReal::zero();
        case Seminorm::Kind::MinkowskiBox:
            return ExtReal::one() / q.profile().eval(i).abs();
        case Seminorm::Kind::GraphNorm:
            throw DomainError("q_multiplier: graph norm is not coordinatewise");
    }
    return ExtReal::zero();
}

/// Exact sup of q(D^n x) over the p-ball for a diagonal-like operator:
/// everything is coordinatewise, so the sup is sup_i mult_q(i) |d(i)|^n a_p(i)
/// evaluated by scan plus declared tails.
std::optional<ExtReal> diagonal_sup(const OperatorRep& op, long n, const Seminorm& p,
                                    const Seminorm& q) {
    if (!op.diagonal_like() || !p.coordinatewise() || !q.coordinatewise()) return std::nullopt;

    ExtReal best = ExtReal::zero();
    if (q.kind() != Seminorm::Kind::MinkowskiBox) {
        for (Index i : q.window()) {
            ExtReal term =
                q_multiplier(q, i) * op.diagonal_entry(i).abs().pow(double(n)) * p.allowance(i);
            best = max(best, term);
            if (best.is_infinite()) break;
        }
        return best;
    }
    for (Index i = 1; i <= kScanHorizon; ++i) {
        ExtReal term = q_multiplier(q, i) * op.diagonal_entry(i).abs().pow(double(n)) * p.allowance(i);
        best = max(best, term);
        if (best.is_infinite()) return best;
    }
    // tail beyond the scan (tail_sup is an upper bound for composite trees)
    ExtReal d_tail = op.diagonal_tail_sup(kScanHorizon + 1).pow(double(n));
    if (d_tail.is_zero()) return best;
    if (!p.constrains_all()) {
        // some unread coordinate out there carries a nonzero diagonal entry
        if (op.diagonal_exact_tail()) return ExtReal::infinity();
        return std::nullopt;
    }
    // matching profiles cancel exactly; other profile pairs are not closed form
    if (!(p.profile().name() == q.profile().name())) return std::nullopt;
    if (d_tail <= best) return best;
    if (!op.diagonal_exact_tail()) return std::nullopt;
    return d_tail;
}

bool q_windowed(const Seminorm& q) {
    return q.kind() == Seminorm::Kind::Coordinate || q.kind() == Seminorm::Kind::FiniteMax ||
           q.kind() == Seminorm::Kind::WeightedSup;
}

} // namespace

const SparseVector& MixedSeminormEngine::power_row(long n, Index m) {
    auto key = std::make_pair(n, m);
    auto it = row_cache_.find(key);
    if (it != row_cache_.end()) return it->second;
    return row_cache_.emplace(key, op_->power_row(n, m)).first->second;
}

MixedSeminormValue MixedSeminormEngine::power_value(long n, const Seminorm& p, const Seminorm& q) {
    // diagonal-like operators first: handles sup-type q as well
    if (op_->diagonal_like() && p.coordinatewise() && q.coordinatewise()) {
        if (auto v = diagonal_sup(*op_, n, p, q)) return {*v, Certainty::Exact};
    }

    // graph seminorms: exact only for the same graph level against a
    // diagonal-like operator (the graph operator itself is diagonal there)
    if (p.kind() == Seminorm::Kind::GraphNorm || q.kind() == Seminorm::Kind::GraphNorm) {
        if (p.kind() == q.kind() && p.graph_level() == q.graph_level() && op_->diagonal_like()) {
            return {op_->diagonal_tail_sup(1).pow(double(n)), Certainty::Exact};
        }
        ExtReal lo = sampled_sup_oracle(op_, p, q, 160, oracle_seed_, n);
        return {lo, Certainty::LowerBound};
    }

    // finite row set for q: exact row analysis
    if (q_windowed(q) && p.coordinatewise()) {
        ExtReal best = ExtReal::zero();
        for (Index m : q.window()) {
            ExtReal mult = q_multiplier(q, m);
            if (mult.is_zero()) continue;
            const SparseVector& row = power_row(n, m);
            ExtReal sum = ExtReal::zero();
            for (const auto& [j, coef] : row.entries()) {
                sum = sum + coef.abs() * p.allowance(j);
                if (sum.is_infinite()) break;
            }
            best = max(best, mult * sum);
            if (best.is_infinite()) return {best, Certainty::Exact};
        }
        return {best, Certainty::Exact};
    }

    ExtReal lo = sampled_sup_oracle(op_, p, q, 160, oracle_seed_, n);
    return {lo, Certainty::LowerBound};
}

MixedSeminormValue mixed_seminorm(const OperatorPtr& S, const Seminorm& p, const Seminorm& q) {
    MixedSeminormEngine engine(S);
    return engine.power_value(1, p, q);
}

MixedSeminormValue operator_seminorm(const OperatorPtr& T, const Seminorm& p) {
    return mixed_seminorm(T, p, p);
}

ExtReal sampled_sup_oracle(const OperatorPtr& S, const Seminorm& p, const Seminorm& q,
                           int trials, std::uint64_t seed, long power, ConstraintMode mode) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    ExtReal best = ExtReal::zero();
    const ExtReal escape = ExtReal::from_value(kEscapeBound);

    Index max_idx = 24;
    if (p.coordinatewise() && !p.window().empty()) max_idx = std::max(max_idx, p.window().back() + 4);
    if (q.coordinatewise() && !q.window().empty()) max_idx = std::max(max_idx, q.window().back() + 4);

    auto q_of_image = [&](const SparseVector& x) { return q.eval(S->power_apply(power, x)); };

    // deliberate single-coordinate probes at the constraint boundary
    for (Index j = 1; j <= max_idx; ++j) {
        SparseVector e = SparseVector::unit(j);
        ExtReal pe = p.eval(e);
        if (pe.is_zero()) {
            // p does not see e_j; any nonzero image certifies INFINITY
            if (q_of_image(e) > ExtReal::zero()) return ExtReal::infinity();
            continue;
        }
        SparseVector scaled = LogScalar::from_log2(-pe.log2()) * e;
        ExtReal val = q_of_image(scaled);
        if (val > escape) return ExtReal::infinity();
        best = max(best, val);
    }

    // escalating probes on coordinates p leaves loose (secondary confirmation)
    for (Index j = 1; j <= max_idx; ++j) {
        SparseVector e = SparseVector::unit(j);
        if (!p.eval(e).is_zero()) continue;
        for (int t = 1; t <= 5; ++t) {
            SparseVector big = LogScalar::from_log2(10.0 * t) * e;
            if (!p.eval(big).is_zero()) break;
            ExtReal val = q_of_image(big);
            if (val > escape) return ExtReal::infinity();
            best = max(best, val);
        }
    }

    // random sparse probes normalized onto the constraint set
    for (int t = 0; t < trials; ++t) {
        SparseVector x;
        int support = 1 + static_cast<int>(rng.uniform_int(0, 5));
        for (int s = 0; s < support; ++s) {
            Index j = rng.uniform_int(1, max_idx);
            double mag = rng.uniform(-3.0, 3.0);
            double ang = rng.uniform(0.0, 6.283185307179586);
            x.add(j, LogScalar::from_parts(Complex(std::cos(ang), std::sin(ang)), mag));
        }
        ExtReal px = p.eval(x);
        if (px.is_zero()) {
            if (q_of_image(x) > ExtReal::zero()) return ExtReal::infinity();
            continue;
        }
        if (px.is_infinite()) continue;
        double target = mode == ConstraintMode::UnitSphere ? 0.0 : std::log2(rng.uniform(0.25, 1.0));
        SparseVector scaled = LogScalar::from_log2(target - px.log2()) * x;
        ExtReal val = q_of_image(scaled);
        if (val > escape) return ExtReal::infinity();
        best = max(best, val);
    }
    return best;
}

} // namespace tvspec
