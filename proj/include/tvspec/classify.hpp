#pragma once

#include <string>
#include <vector>

#include "tvspec/seminorm_calculus.hpp"
#include "tvspec/space.hpp"

namespace tvspec {

/// Verdict for one boundedness class, carrying either a structural
/// certificate (Yes) or a concrete witness (No).
struct BoundednessVerdict {
    enum State { Yes, No, Unknown } state = Unknown;
    std::string justification;
};

/// Decision record for the hierarchy nb => nn => continuous => bb. A Yes
/// strictly below a No would contradict the hierarchy; construction rejects
/// such a pattern.
struct ClassificationReport {
    BoundednessVerdict nb, nn, continuous, bb;
};

ClassificationReport classify_boundedness(const OperatorPtr& T, const SpaceModel& space,
                                          int level = 4);

struct RankBoundReport {
    std::size_t functional_count = 0;
    std::size_t verified_rank = 0;
    bool ok = false;
    std::string detail;
};

/// Verifies the finite-rank consequence of a joint-kernel annihilation
/// hypothesis: T must kill the joint kernel of the functionals (checked on a
/// kernel basis of the leading probe_dim coordinates; violation throws
/// PreconditionFailed with the witness), and the rank of T restricted to
/// those coordinates is row-reduced and compared against the functional
/// count at tolerance 1e-10.
RankBoundReport finite_rank_bound(const std::vector<SparseVector>& functionals,
                                  const OperatorPtr& T, Index probe_dim);

} // namespace tvspec
