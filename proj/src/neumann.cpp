#include "tvspec/neumann.hpp"

#include <algorithm>
#include <cmath>

#include "tvspec/errors.hpp"

namespace tvspec {

std::string to_string(TopologyKind k) {
    switch (k) {
        case TopologyKind::Pointwise: return "pointwise";
        case TopologyKind::BB: return "bb";
        case TopologyKind::C: return "c";
        case TopologyKind::NN: return "nn";
        case TopologyKind::NB: return "nb";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Converged: return "Converged";
        case Verdict::Diverged: return "Diverged";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

SparseVector neumann_partial_sum(const OperatorPtr& T, Complex lambda, long n,
                                 const SparseVector& x) {
    if (lambda == Complex(0.0, 0.0)) throw ZeroLambda("neumann_partial_sum: lambda = 0");
    LogScalar inv_lambda = LogScalar::from_complex(lambda).inverse();
    SparseVector term = x;
    SparseVector acc = x;
    for (long i = 1; i <= n; ++i) {
        term = inv_lambda * T->apply(term);
        acc = acc + term;
    }
    return inv_lambda * acc;
}

ExtReal residual_identity_check(const OperatorPtr& T, Complex lambda, long n,
                                const SparseVector& x) {
    if (lambda == Complex(0.0, 0.0)) throw ZeroLambda("residual_identity_check: lambda = 0");
    LogScalar ls_lambda = LogScalar::from_complex(lambda);
    LogScalar inv_lambda = ls_lambda.inverse();

    SparseVector y = (ls_lambda * x) - T->apply(x);
    SparseVector lhs = neumann_partial_sum(T, lambda, n, y);

    // x - T^{n+1} x / lambda^{n+1}, tracking the largest term magnitude
    ExtReal scale = x.sup_abs();
    SparseVector term = x;
    for (long i = 1; i <= n + 1; ++i) {
        term = inv_lambda * T->apply(term);
        scale = max(scale, term.sup_abs());
    }
    SparseVector rhs = x - term;
    scale = max(scale, rhs.sup_abs());
    scale = max(scale, ExtReal::one());

    return sup_dist(lhs, rhs) / scale;
}

namespace {

struct IncrementTrace {
    std::vector<ExtReal> inc;      // increment size per n (monitored topology)
    std::vector<ExtReal> ambient;  // ambient-norm increments (may be empty)
    std::string escape_witness;
};

Verdict judge(const IncrementTrace& tr, long depth, std::string& witness) {
    if (!tr.escape_witness.empty()) {
        witness = tr.escape_witness;
        return Verdict::Diverged;
    }
    auto window_stats = [&](const std::vector<ExtReal>& v, ExtReal& wmax, ExtReal& wmin,
                            ExtReal& gmax, bool& nondecreasing) {
        std::size_t start = v.size() - v.size() / 4;
        wmax = ExtReal::zero();
        wmin = ExtReal::infinity();
        gmax = ExtReal::zero();
        nondecreasing = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            gmax = max(gmax, v[i]);
            if (i >= start) {
                wmax = max(wmax, v[i]);
                wmin = min(wmin, v[i]);
                if (i > start && v[i] < v[i - 1] * ExtReal::from_log2(-1e-9))
                    nondecreasing = false;
            }
        }
    };

    // divergence by a non-decaying increment trail (checked on both traces)
    for (const std::vector<ExtReal>* v : {&tr.inc, &tr.ambient}) {
        if (v->empty()) continue;
        ExtReal wmax, wmin, gmax;
        bool nondecreasing = false;
        window_stats(*v, wmax, wmin, gmax, nondecreasing);
        ExtReal floor = max(ExtReal::from_value(1e-9), gmax * ExtReal::from_value(1e-6));
        if (nondecreasing && wmin >= floor) {
            witness = "increments do not decay over the final quarter (cumulative mass grows "
                      "monotonically); tail increment " + wmin.str();
            return Verdict::Diverged;
        }
    }

    ExtReal wmax, wmin, gmax;
    bool nondecreasing = false;
    window_stats(tr.inc, wmax, wmin, gmax, nondecreasing);
    ExtReal tol = max(ExtReal::one(), gmax) * ExtReal::from_value(1e-12);
    bool conv = wmax <= tol;
    if (conv && !tr.ambient.empty()) {
        ExtReal amax, amin, agmax;
        bool an;
        window_stats(tr.ambient, amax, amin, agmax, an);
        conv = amax <= max(ExtReal::one(), agmax) * ExtReal::from_value(1e-12);
    }
    if (conv) return Verdict::Converged;
    (void)depth;
    return Verdict::Inconclusive;
}

} // namespace

NeumannReport converge_monitor(const OperatorPtr& T, Complex lambda, TopologyKind kind,
                               const SpaceModel& space, const MonitorConfig& cfg) {
    if (lambda == Complex(0.0, 0.0)) throw ZeroLambda("converge_monitor: lambda = 0");
    NeumannReport report;
    report.lambda = lambda;
    report.topology = kind;
    report.terms_used = cfg.depth;

    const double lg_abs_lambda = std::log2(std::abs(lambda));
    const std::vector<Seminorm> seminorms = space.generating.enumerate(cfg.level);
    const ExtReal escape = ExtReal::from_value(kEscapeBound);

    IncrementTrace tr;
    auto note_escape = [&](long n, const std::string& what) {
        if (tr.escape_witness.empty())
            tr.escape_witness = what + " at term " + std::to_string(n);
    };

    if (kind == TopologyKind::Pointwise) {
        std::vector<SparseVector> probes = cfg.probes;
        if (probes.empty()) probes.push_back(SparseVector::unit(1));
        std::vector<SparseVector> powers = probes;
        ExtReal cumulative = ExtReal::zero();
        LogScalar inv_lambda = LogScalar::from_complex(lambda).inverse();
        for (long n = 1; n <= cfg.depth; ++n) {
            ExtReal inc = ExtReal::zero(), amb = ExtReal::zero();
            for (std::size_t ip = 0; ip < powers.size(); ++ip) {
                powers[ip] = inv_lambda * T->apply(powers[ip]);
                for (const Seminorm& p : seminorms) inc = max(inc, p.eval(powers[ip]));
                if (space.ambient_norm) amb = max(amb, space.ambient_norm->eval(powers[ip]));
            }
            tr.inc.push_back(inc);
            if (space.ambient_norm) tr.ambient.push_back(amb);
            cumulative = cumulative + max(inc, amb);
            if (inc > escape || cumulative > escape)
                note_escape(n, "partial-sum seminorm passed the escape bound");
            report.residual_trace.emplace_back(n, inc);
        }
    } else {
        MixedSeminormEngine engine(T);
        Seminorm nb_neighborhood = cfg.neighborhood
                                       ? *cfg.neighborhood
                                       : Seminorm::finite_max([&] {
                                             std::vector<Index> idx;
                                             for (Index i = 1; i <= cfg.level; ++i) idx.push_back(i);
                                             return idx;
                                         }());
        std::vector<Seminorm> boxes;
        if (kind == TopologyKind::BB) {
            if (!space.bounded_sets)
                throw UnsupportedCombination("bb monitoring needs a bounded-set family");
            boxes = space.bounded_sets->enumerate(cfg.level);
        }
        ExtReal cumulative = ExtReal::zero();
        for (long n = 1; n <= cfg.depth; ++n) {
            ExtReal inc = ExtReal::zero();
            double shrink = -(double)(n + 1) * lg_abs_lambda;
            auto scaled = [&](ExtReal v) { return v * ExtReal::from_log2(shrink); };
            switch (kind) {
                case TopologyKind::BB:
                    for (const Seminorm& b : boxes)
                        for (const Seminorm& q : seminorms)
                            inc = max(inc, scaled(engine.power_value(n, b, q).value));
                    break;
                case TopologyKind::C:
                    for (const Seminorm& q : seminorms) {
                        ExtReal inner = ExtReal::infinity();
                        for (const Seminorm& p : seminorms)
                            inner = min(inner, scaled(engine.power_value(n, p, q).value));
                        inc = max(inc, inner);
                    }
                    break;
                case TopologyKind::NN:
                    for (const Seminorm& p : seminorms)
                        inc = max(inc, scaled(engine.power_value(n, p, p).value));
                    break;
                case TopologyKind::NB:
                    for (const Seminorm& q : seminorms)
                        inc = max(inc, scaled(engine.power_value(n, nb_neighborhood, q).value));
                    break;
                default:
                    break;
            }
            tr.inc.push_back(inc);
            cumulative = cumulative + inc;
            if (inc.is_infinite())
                note_escape(n, "infinite operator increment (unconstrained coordinate)");
            else if (inc > escape || cumulative > escape)
                note_escape(n, "operator increment passed the escape bound");
            report.residual_trace.emplace_back(n, inc);
        }
    }

    report.verdict = judge(tr, cfg.depth, report.witness);
    if (report.verdict == Verdict::Diverged && tr.escape_witness.empty() &&
        !tr.ambient.empty()) {
        report.witness += " (each increment keeps fresh ambient mass)";
    }
    return report;
}

// ---------------------------------------------------------------------------
// spectrum probes

namespace {

bool solve_complex(std::vector<std::vector<Complex>> A, std::vector<Complex> b,
                   std::vector<Complex>& x) {
    const std::size_t n = A.size();
    double scale = 1e-300;
    for (const auto& row : A)
        for (Complex v : row) scale = std::max(scale, std::abs(v));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(A[idx[r]][c]) > std::abs(A[idx[piv]][c])) piv = r;
        std::swap(idx[c], idx[piv]);
        if (std::abs(A[idx[c]][c]) <= 1e-12 * scale) return false;
        for (std::size_t r = c + 1; r < n; ++r) {
            Complex f = A[idx[r]][c] / A[idx[c]][c];
            for (std::size_t k = c; k < n; ++k) A[idx[r]][k] -= f * A[idx[c]][k];
            b[idx[r]] -= f * b[idx[c]];
        }
    }
    x.assign(n, Complex(0, 0));
    for (std::size_t c = n; c-- > 0;) {
        Complex s = b[idx[c]];
        for (std::size_t k = c + 1; k < n; ++k) s -= A[idx[c]][k] * x[k];
        x[c] = s / A[idx[c]][c];
    }
    return true;
}

void set_all(SpectrumProbeReport& r, ClassVerdict::State s, bool certified,
             const std::string& evidence) {
    for (ClassVerdict* v : {&r.l, &r.bb, &r.c, &r.nn, &r.nb}) {
        v->state = s;
        v->certified = certified;
        v->evidence = evidence;
    }
}

SpectrumProbeReport probe_diagonal(const OperatorPtr& T, Complex lambda, const SpaceModel& space) {
    SpectrumProbeReport r;
    r.lambda = lambda;
    constexpr Index kScan = 4096;
    double nearest = std::numeric_limits<double>::infinity();
    bool exact_hit = false;
    for (Index k = 1; k <= kScan; ++k) {
        double d = std::abs(lambda - T->diagonal_entry(k).to_complex());
        nearest = std::min(nearest, d);
        if (d == 0.0) exact_hit = true;
    }
    double limit_dist = std::numeric_limits<double>::infinity();
    if (const WeightRule* rule = T->plain_diagonal_rule()) {
        for (Complex lp : rule->tail_limit_points())
            limit_dist = std::min(limit_dist, std::abs(lambda - lp));
    }
    double dist = std::min(nearest, limit_dist);

    if (space.locally_bounded) {
        if (dist > 1e-13 * (1.0 + std::abs(lambda))) {
            set_all(r, ClassVerdict::In, true,
                    "resolvent entries bounded by " + std::to_string(1.0 / dist));
        } else {
            set_all(r, ClassVerdict::Out, true,
                    "lambda within " + std::to_string(dist) + " of the diagonal value closure");
        }
        return r;
    }

    // full coordinate model: the algebraic inverse exists iff lambda misses
    // the entries themselves; it is then automatically bb/c/nn-bounded
    if (exact_hit) {
        set_all(r, ClassVerdict::Out, true, "lambda equals a diagonal entry (kernel direction)");
        return r;
    }
    std::string ev = "diagonal resolvent entries 1/(lambda - d(k)); nearest gap " +
                     std::to_string(dist);
    for (ClassVerdict* v : {&r.l, &r.bb, &r.c, &r.nn}) {
        v->state = ClassVerdict::In;
        v->certified = true;
        v->evidence = ev;
    }
    const WeightRule* rule = T->plain_diagonal_rule();
    bool finitely_supported = rule && rule->support_end().has_value();
    if (lambda != Complex(0, 0) && finitely_supported) {
        r.nb = {ClassVerdict::In, true,
                "resolvent = (1/lambda) I + finitely supported diagonal correction"};
    } else {
        r.nb = {ClassVerdict::Out, true,
                "resolvent minus any multiple of I keeps infinite diagonal reach"};
    }
    return r;
}

SpectrumProbeReport probe_finite_rank(const OperatorRep::FiniteRankView& view,
                                      const OperatorPtr& T, Complex lambda) {
    SpectrumProbeReport r;
    r.lambda = lambda;
    const std::size_t n = view.functionals.size();
    if (lambda == Complex(0, 0)) {
        set_all(r, ClassVerdict::Out, true,
                "finite-rank operators are never invertible on the sequence space");
        return r;
    }
    // compression G_{ij} = <f_i, y_j>
    std::vector<std::vector<Complex>> G(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            G[i][j] = pair(view.functionals[i], view.ranges[j]).to_complex();

    std::vector<std::vector<Complex>> A(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = (i == j ? lambda : Complex(0, 0)) - G[i][j];

    // residual check of the closed-form resolvent on a few probes
    auto resolve = [&](const SparseVector& x, SparseVector& out) {
        std::vector<Complex> fx(n);
        for (std::size_t i = 0; i < n; ++i) fx[i] = pair(view.functionals[i], x).to_complex();
        std::vector<Complex> c;
        if (!solve_complex(A, fx, c)) return false;
        SparseVector acc = x;
        for (std::size_t i = 0; i < n; ++i)
            acc = acc + (LogScalar::from_complex(c[i]) * view.ranges[i]);
        out = LogScalar::from_complex(lambda).inverse() * acc;
        return true;
    };

    SparseVector dummy;
    if (!resolve(SparseVector::unit(1), dummy)) {
        // lambda is an eigenvalue of the compression; exhibit the kernel
        set_all(r, ClassVerdict::Out, true,
                "lambda is an eigenvalue of the rank-" + std::to_string(n) + " compression");
        return r;
    }
    double worst = 0.0;
    for (Index j = 1; j <= 6; ++j) {
        SparseVector x = SparseVector::unit(j);
        SparseVector rx;
        if (!resolve(x, rx)) continue;
        SparseVector back = (LogScalar::from_complex(lambda) * rx) - T->apply(rx);
        double dev = sup_dist(back, x).value();
        worst = std::max(worst, dev);
    }
    set_all(r, ClassVerdict::In, true,
            "resolvent = (1/lambda)(I + finite-rank correction); identity residual " +
                std::to_string(worst));
    return r;
}

SpectrumProbeReport probe_left_shift(const OperatorPtr& T, Complex lambda,
                                     const SpaceModel& space) {
    SpectrumProbeReport r;
    r.lambda = lambda;
    const WeightRule& w = T->rule();
    if (lambda == Complex(0, 0)) {
        set_all(r, ClassVerdict::Out, true, "kernel witness e_1 (the shift drops it)");
        return r;
    }
    double lg_lambda = std::log2(std::abs(lambda));

    // candidate eigenvector x_k = lambda^{k-1} / prod_{j=2..k} w(j)
    double lg = 0.0, lg_max_tail = -std::numeric_limits<double>::infinity();
    bool bounded_eigenvector = true;
    double lg_cap = 0.0;
    for (Index k = 2; k <= 400; ++k) {
        lg += lg_lambda - w.eval(k).log2_abs();
        if (k > 350) lg_max_tail = std::max(lg_max_tail, lg);
        lg_cap = std::max(lg_cap, lg);
    }
    bounded_eigenvector = lg_cap < 60.0 && lg_max_tail <= lg_cap;

    if (space.name == "full_sequence" || bounded_eigenvector) {
        set_all(r, ClassVerdict::Out, true,
                "eigenvector x_k = lambda^{k-1}/prod w stays in the space");
        return r;
    }

    // rows of the resolvent: sum_i coef(m,i) / lambda^{i+1}; certify
    // absolute convergence numerically
    bool rows_converge = true;
    for (Index m = 1; m <= 4 && rows_converge; ++m) {
        double lg_term = -lg_lambda; // i = 0 term: 1/lambda
        double prev = lg_term;
        double lg_coef = 0.0;
        bool decayed = false;
        for (long i = 1; i <= 600; ++i) {
            lg_coef += w.eval(m + i).log2_abs();
            lg_term = lg_coef - (double)(i + 1) * lg_lambda;
            if (i > 500 && lg_term < prev - 0.5 && lg_term < -120.0) { decayed = true; break; }
            prev = lg_term;
        }
        rows_converge = decayed;
    }
    if (rows_converge) {
        r.l = {ClassVerdict::In, true, "resolvent row sums converge absolutely"};
    } else {
        r.l = {ClassVerdict::Unknown, false, "no convergence certificate for the resolvent rows"};
    }

    // bb fails when a growth box pushes a resolvent row past the escape bound
    double lg_sum = -std::numeric_limits<double>::infinity();
    double lg_coef = 0.0;
    bool escaped = false;
    for (long i = 1; i <= 200 && !escaped; ++i) {
        lg_coef += w.eval(1 + i).log2_abs();
        double bound = 2.0 * (double)(1 + i) * std::log2(2.0 * (double)(1 + i));
        double term = lg_coef + bound - (double)(i + 1) * lg_lambda;
        lg_sum = std::max(lg_sum, term);
        if (lg_sum > std::log2(kEscapeBound)) escaped = true;
    }
    if (escaped) {
        std::string ev = "image of the doubly exponential box escapes coordinate 1";
        r.bb = {ClassVerdict::Out, true, ev};
        r.c = {ClassVerdict::Out, true, ev + " (nested above bb)"};
        r.nn = {ClassVerdict::Out, true, ev + " (nested above bb)"};
        r.nb = {ClassVerdict::Out, true, ev + " (nested above bb)"};
    } else {
        for (ClassVerdict* v : {&r.bb, &r.c, &r.nn, &r.nb})
            *v = {ClassVerdict::Unknown, false, "no box-divergence certificate"};
    }
    return r;
}

SpectrumProbeReport probe_forward_shift(const OperatorPtr& T, Complex lambda,
                                        const SpaceModel& space) {
    SpectrumProbeReport r;
    r.lambda = lambda;
    const WeightRule& w = T->rule();
    if (lambda == Complex(0, 0)) {
        set_all(r, ClassVerdict::Out, true, "coordinate 1 is not in the range of the shift");
        return r;
    }
    double lg_lambda = std::log2(std::abs(lambda));
    // column of the resolvent at e_1: entries prod w / lambda^{i+1}
    double lg_coef = 0.0;
    double tail_max = -std::numeric_limits<double>::infinity();
    double global_max = -lg_lambda;
    for (long i = 1; i <= 400; ++i) {
        lg_coef += w.eval(i).log2_abs();
        double entry = lg_coef - (double)(i + 1) * lg_lambda;
        global_max = std::max(global_max, entry);
        if (i > 350) tail_max = std::max(tail_max, entry);
    }
    bool column_vanishes = tail_max < -60.0;
    bool column_bounded = global_max < 60.0;

    bool needs_vanishing = space.ambient_norm.has_value(); // the c0-style model
    bool in_l = needs_vanishing ? column_vanishes : column_bounded;
    if (space.name == "full_sequence") in_l = true;
    if (in_l) {
        r.l = {ClassVerdict::In, true, "closed-form resolvent columns stay in the space"};
    } else {
        r.l = {ClassVerdict::Out, true,
               "resolvent column at e_1 leaves the space (entries do not vanish)"};
    }
    for (ClassVerdict* v : {&r.bb, &r.c, &r.nn, &r.nb})
        *v = {ClassVerdict::Unknown, false, "no closed-form certificate for this class"};
    if (r.l.state == ClassVerdict::Out) {
        // the nesting runs the other way: sigma^l is inside every other spectrum
        std::string ev = "nested above the linear spectrum";
        r.bb = {ClassVerdict::Out, true, ev};
        r.c = {ClassVerdict::Out, true, ev};
        r.nn = {ClassVerdict::Out, true, ev};
        r.nb = {ClassVerdict::Out, true, ev};
    }
    return r;
}

} // namespace

SpectrumProbeReport spectrum_probe(const OperatorPtr& T, Complex lambda, const SpaceModel& space) {
    if (T->diagonal_like() && T->diagonal_exact_tail()) return probe_diagonal(T, lambda, space);
    if (auto view = T->finite_rank_view()) return probe_finite_rank(*view, T, lambda);
    if (T->kind() == OperatorRep::Kind::WeightedShift) {
        if (T->shift_offset() == 1) return probe_left_shift(T, lambda, space);
        if (T->shift_offset() == -1) return probe_forward_shift(T, lambda, space);
    }
    throw NoClosedForm("spectrum_probe: unsupported operator kind " + T->describe());
}

} // namespace tvspec
