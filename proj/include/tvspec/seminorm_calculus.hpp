#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "tvspec/operator.hpp"
#include "tvspec/seminorm.hpp"

namespace tvspec {

/// Values past this are reported as INFINITY by the sampling oracle.
inline constexpr double kEscapeBound = 1e12;

enum class Certainty { Exact, LowerBound };

struct MixedSeminormValue {
    ExtReal value;
    Certainty certainty;
};

/// Mixed operator seminorm engine for one operator.
///
/// m_{p,q}(T^n) = sup { q(T^n x) : p(x) <= 1 } is computed exactly by column
/// dependency analysis whenever q reads finitely many rows (Coordinate /
/// FiniteMax) and p is coordinatewise: each row is extracted in closed form
/// and the sup is the phase-aligned weighted row sum, INFINITY as soon as a
/// nonzero row entry sits on a coordinate p does not constrain. Sup-type q
/// against a diagonal-like operator reduces coordinatewise with declared
/// tails. Remaining combinations fall back to the sampling oracle and are
/// tagged LowerBound.
class MixedSeminormEngine {
public:
    explicit MixedSeminormEngine(OperatorPtr op, std::uint64_t oracle_seed = 0x5eed0ddf00dull)
        : op_(std::move(op)), oracle_seed_(oracle_seed) {}

    MixedSeminormValue power_value(long n, const Seminorm& p, const Seminorm& q);

    const OperatorPtr& op() const { return op_; }

private:
    const SparseVector& power_row(long n, Index m);

    OperatorPtr op_;
    std::uint64_t oracle_seed_;
    std::map<std::pair<long, Index>, SparseVector> row_cache_;
};

/// m_{p,q}(S); Exact where the analytic path applies, sampled LowerBound
/// otherwise.
MixedSeminormValue mixed_seminorm(const OperatorPtr& S, const Seminorm& p, const Seminorm& q);

/// p(T) = m_{p,p}(T).
MixedSeminormValue operator_seminorm(const OperatorPtr& T, const Seminorm& p);

enum class ConstraintMode { UnitBall, UnitSphere };

/// Certified lower bound for sup{ q(S^power x) : p(x) <= 1 } from random and
/// deliberate probes. Returns INFINITY once a value passes kEscapeBound, or
/// when a probe with p(x) = 0 produces q(Sx) > 0 (homogeneity makes that an
/// exact INFINITY witness).
ExtReal sampled_sup_oracle(const OperatorPtr& S, const Seminorm& p, const Seminorm& q,
                           int trials, std::uint64_t seed, long power = 1,
                           ConstraintMode mode = ConstraintMode::UnitBall);

} // namespace tvspec
