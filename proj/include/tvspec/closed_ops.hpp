#pragma once

#include <string>
#include <vector>

#include "tvspec/radii.hpp"

namespace tvspec {

/// Core-domain model of a closed unbounded diagonal operator: the graph
/// seminorms ||x||_n = sum_{k<=n} sup|T^k x| topologize the joint domain of
/// all powers, and finitely supported probes always lie inside it.
struct ClosedOperatorModel {
    OperatorPtr op;        // diagonal with unbounded entries
    SeminormFamily graph;  // graph seminorm levels over op

    static ClosedOperatorModel linear_diagonal() {
        ClosedOperatorModel m;
        m.op = OperatorRep::diagonal(WeightRule::linear());
        m.graph = SeminormFamily::graph(m.op);
        return m;
    }

    /// ||x||_n, exact on finite supports.
    ExtReal graph_norm(int n, const SparseVector& x) const {
        return Seminorm::graph_norm(n, op).eval(x);
    }
};

/// Closed-form diagonal resolvent of the model at lambda; throws
/// SpectrumLambda when lambda touches the closure of the diagonal values.
OperatorPtr model_resolvent(const ClosedOperatorModel& model, Complex lambda);

/// Distance from lambda to the diagonal entries (scan plus declared limit
/// points).
double diagonal_distance(const ClosedOperatorModel& model, Complex lambda);

struct ResolventBoundReport {
    Complex lambda;
    int level = 0;
    double resolvent_norm = 0;  // sup_k 1/|lambda - d(k)|
    double c_n = 0;             // the constant of the level-n bound
    std::size_t probes_checked = 0;
    std::size_t violations = 0;
    std::vector<std::string> witnesses;
};

/// Checks ||R(lambda)x||_n <= C_n ||x||_{n-1} on every probe, with C_n built
/// from the geometric partial sums mu_k = 1 + |lambda| + .. + |lambda|^k and
/// the closed-form resolvent norm: C_n = mu_n ||R|| + mu_{n-1}.
ResolventBoundReport resolvent_bound_check(const ClosedOperatorModel& model, Complex lambda,
                                           int n, const std::vector<SparseVector>& probes);

struct RestrictedRadiusReport {
    ExtReal base_radius;   // radius in the ambient sup norm
    ExtReal graph_upper;   // upper bound from the graph family
    bool holds = false;
    std::string detail;
};

/// Graph-family nn bound for a bounded commuting diagonal: the estimate over
/// graph seminorms must not exceed the ambient-norm radius. Throws
/// NonCommuting when a sampled commutator probe is nonzero.
RestrictedRadiusReport restricted_radius_nn(const ClosedOperatorModel& model,
                                            const OperatorPtr& S, long depth, int level);

/// nb route for the resolvent: iterates bounded by M_k ||R^{n-k}|| with
/// M_k the product of the bound constants; the root extrapolation of that
/// bound sequence must stay at or below the ambient resolvent radius.
RestrictedRadiusReport restricted_radius_nb_resolvent(const ClosedOperatorModel& model,
                                                      Complex lambda, long depth, int level);

} // namespace tvspec
