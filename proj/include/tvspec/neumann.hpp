#pragma once

#include <string>
#include <vector>

#include "tvspec/radii.hpp"
#include "tvspec/space.hpp"

namespace tvspec {

enum class TopologyKind { Pointwise, BB, C, NN, NB };
enum class Verdict { Converged, Diverged, Inconclusive };

std::string to_string(TopologyKind);
std::string to_string(Verdict);

/// Convergence report for the resolvent partial sums at one lambda.
/// Diverged always carries a witness: either an escape past 1e12 or a
/// non-decaying increment trail whose cumulative mass grows monotonically
/// over the final quarter of terms.
struct NeumannReport {
    Complex lambda;
    TopologyKind topology = TopologyKind::Pointwise;
    long terms_used = 0;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::pair<long, ExtReal>> residual_trace; // per-n increment size
    std::string witness;
};

/// R_{lambda,n} x = (1/lambda) sum_{i=0..n} T^i x / lambda^i, exact in log
/// magnitude arithmetic. Throws ZeroLambda.
SparseVector neumann_partial_sum(const OperatorPtr& T, Complex lambda, long n,
                                 const SparseVector& x);

/// Max-coordinate deviation between R_{lambda,n}(lambda x - Tx) and
/// x - T^{n+1}x/lambda^{n+1}, relative to the largest magnitude the
/// computation touches. An algebraic identity: must sit at rounding level
/// for every lambda, convergent or not.
ExtReal residual_identity_check(const OperatorPtr& T, Complex lambda, long n,
                                const SparseVector& x);

struct MonitorConfig {
    long depth = 200;
    int level = 3;
    std::vector<SparseVector> probes;             // pointwise topology
    std::optional<Seminorm> neighborhood;         // NB: designated zero neighborhood
};

NeumannReport converge_monitor(const OperatorPtr& T, Complex lambda, TopologyKind kind,
                               const SpaceModel& space, const MonitorConfig& cfg);

/// Tri-state membership of lambda in each resolvent set.
struct ClassVerdict {
    enum State { In, Out, Unknown } state = Unknown;
    bool certified = false;
    std::string evidence;
};

struct SpectrumProbeReport {
    Complex lambda;
    ClassVerdict l, bb, c, nn, nb;
};

/// Closed-form resolvent probes for diagonal, finite-rank and unilateral
/// shift kinds. Membership in rho^nb follows the non-unital convention: the
/// inverse must be alpha I + S with S nb-bounded. Throws NoClosedForm for
/// unsupported operator kinds.
SpectrumProbeReport spectrum_probe(const OperatorPtr& T, Complex lambda, const SpaceModel& space);

} // namespace tvspec
