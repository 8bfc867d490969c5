#include "tvspec/closed_ops.hpp"

#include <cmath>

#include "tvspec/errors.hpp"
#include "tvspec/rng.hpp"

namespace tvspec {

double diagonal_distance(const ClosedOperatorModel& model, Complex lambda) {
    double dist = std::numeric_limits<double>::infinity();
    for (Index k = 1; k <= 4096; ++k)
        dist = std::min(dist, std::abs(lambda - model.op->diagonal_entry(k).to_complex()));
    if (const WeightRule* rule = model.op->plain_diagonal_rule())
        for (Complex lp : rule->tail_limit_points())
            dist = std::min(dist, std::abs(lambda - lp));
    return dist;
}

OperatorPtr model_resolvent(const ClosedOperatorModel& model, Complex lambda) {
    double dist = diagonal_distance(model, lambda);
    if (!(dist > 1e-13 * (1.0 + std::abs(lambda))))
        throw SpectrumLambda("lambda touches the closure of the diagonal values");
    OperatorPtr T = model.op;
    auto eval = [T, lambda](Index k) {
        return LogScalar::from_complex(Complex(1.0, 0.0) /
                                       (lambda - T->diagonal_entry(k).to_complex()));
    };
    // entries decay once |d(k)| outruns |lambda|; the scan window plus a
    // conservative cap certifies the tail
    auto tail = [T, lambda](Index lo) {
        double best = 0.0;
        Index hi = lo + 4096;
        for (Index k = lo; k <= hi; ++k)
            best = std::max(best, 1.0 / std::abs(lambda - T->diagonal_entry(k).to_complex()));
        return ExtReal::from_value(best);
    };
    return OperatorRep::diagonal(
        WeightRule::custom("resolvent_diagonal", eval, tail, {Complex(0.0, 0.0)}));
}

ResolventBoundReport resolvent_bound_check(const ClosedOperatorModel& model, Complex lambda,
                                           int n, const std::vector<SparseVector>& probes) {
    if (n < 1) throw DomainError("resolvent_bound_check: level must be >= 1");
    ResolventBoundReport rep;
    rep.lambda = lambda;
    rep.level = n;

    OperatorPtr R = model_resolvent(model, lambda);
    ExtReal norm_r = *exact_diagonal_sup(R);
    rep.resolvent_norm = norm_r.value();

    // mu_k = 1 + |lambda| + ... + |lambda|^k
    double al = std::abs(lambda);
    std::vector<double> mu(n + 1);
    double pw = 1.0, acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        acc += pw;
        mu[k] = acc;
        pw *= al;
    }
    rep.c_n = mu[n] * rep.resolvent_norm + (n >= 1 ? mu[n - 1] : 0.0);

    ExtReal cn = ExtReal::from_value(rep.c_n);
    for (const SparseVector& x : probes) {
        ExtReal lhs = model.graph_norm(n, R->apply(x));
        ExtReal rhs = cn * model.graph_norm(n - 1, x);
        ++rep.probes_checked;
        if (lhs > rhs * ExtReal::from_log2(1e-9)) {
            ++rep.violations;
            rep.witnesses.push_back("||Rx||_" + std::to_string(n) + " = " + lhs.str() +
                                    " > C_n ||x||_" + std::to_string(n - 1) + " = " + rhs.str());
        }
    }
    return rep;
}

namespace {

void require_commuting(const OperatorPtr& a, const OperatorPtr& b) {
    Rng rng(0xc0117e5ull);
    for (int t = 0; t < 24; ++t) {
        SparseVector x;
        x.add(rng.uniform_int(1, 32), LogScalar::from_real(rng.uniform(-2.0, 2.0)));
        x.add(rng.uniform_int(1, 32), LogScalar::from_real(rng.uniform(-2.0, 2.0)));
        ExtReal defect = commutator_defect(a, b, x);
        ExtReal scale = max(ExtReal::one(), a->apply(b->apply(x)).sup_abs());
        if (defect > scale * ExtReal::from_value(1e-10))
            throw NonCommuting("operators do not commute on a sampled probe");
    }
}

} // namespace

RestrictedRadiusReport restricted_radius_nn(const ClosedOperatorModel& model,
                                            const OperatorPtr& S, long depth, int level) {
    require_commuting(model.op, S);
    auto base = exact_diagonal_sup(S);
    if (!base) throw UnsupportedCombination("restricted_radius_nn needs a diagonal-like S");

    RadiusAux aux;
    aux.candidate_families = {model.graph};
    RadiusEstimate est = estimate_radius(RadiusKind::NN, S, model.graph, aux, depth, level);

    RestrictedRadiusReport rep;
    rep.base_radius = *base;
    rep.graph_upper = est.upper;
    rep.holds = est.upper <= *base * ExtReal::from_log2(1e-9);
    rep.detail = "graph-family estimate " + est.upper.str() + " vs ambient radius " + base->str();
    return rep;
}

RestrictedRadiusReport restricted_radius_nb_resolvent(const ClosedOperatorModel& model,
                                                      Complex lambda, long depth, int level) {
    OperatorPtr R = model_resolvent(model, lambda);
    ExtReal r_base = *exact_diagonal_sup(R);

    // bound constants C_i as in the level bound, M_k their product
    double al = std::abs(lambda);
    double norm_r = r_base.value();
    double mu_prev = 1.0, mu = 1.0 + al, m_k = 1.0;
    int k = std::max(1, level);
    for (int i = 1; i <= k; ++i) {
        double c_i = mu * norm_r + mu_prev;
        m_k *= c_i;
        mu_prev = mu;
        mu += std::pow(al, i + 1);
    }

    // iterate bound u_n = M_k ||R||^{n-k}
    std::vector<ExtReal> u;
    for (long n = 1; n <= depth; ++n) {
        double lg = std::log2(m_k) + (double)(n - k) * r_base.log2();
        u.push_back(ExtReal::from_log2(lg));
    }
    LimsupBracket b = limsup_root(u);

    RestrictedRadiusReport rep;
    rep.base_radius = r_base;
    rep.graph_upper = b.upper;
    ExtReal width = abs_diff(b.upper, b.lower);
    rep.holds = b.upper <= (r_base + width) * ExtReal::from_log2(1e-6);
    rep.detail = "bound-sequence extrapolation " + b.upper.str() + " vs resolvent radius " +
                 r_base.str();
    return rep;
}

} // namespace tvspec
