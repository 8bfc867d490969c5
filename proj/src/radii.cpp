#include "tvspec/radii.hpp"

#include <algorithm>
#include <cmath>

#include "tvspec/errors.hpp"
#include "tvspec/rng.hpp"

namespace tvspec {

std::string to_string(RadiusKind kind) {
    switch (kind) {
        case RadiusKind::L: return "l";
        case RadiusKind::BB: return "bb";
        case RadiusKind::C: return "c";
        case RadiusKind::NN: return "nn";
        case RadiusKind::NB: return "nb";
    }
    return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct TailPoint {
    double n;
    double y; // log2 t_n
};

struct Fit {
    double alpha = 0, beta = 0, gamma = 0;
    double resid_rms = 0, resid_max = 0;
    double se_beta = 0;
    bool three_term = false;
    bool ok = false;
};

template <int K>
bool solve_dense(long double a[K][K], long double b[K], long double x[K]) {
    int idx[K];
    for (int i = 0; i < K; ++i) idx[i] = i;
    for (int c = 0; c < K; ++c) {
        int piv = c;
        for (int r = c + 1; r < K; ++r)
            if (std::fabs((double)a[idx[r]][c]) > std::fabs((double)a[idx[piv]][c])) piv = r;
        std::swap(idx[c], idx[piv]);
        if (std::fabs((double)a[idx[c]][c]) < 1e-32) return false;
        for (int r = c + 1; r < K; ++r) {
            long double f = a[idx[r]][c] / a[idx[c]][c];
            for (int k = c; k < K; ++k) a[idx[r]][k] -= f * a[idx[c]][k];
            b[idx[r]] -= f * b[idx[c]];
        }
    }
    for (int c = K - 1; c >= 0; --c) {
        long double s = b[idx[c]];
        for (int k = c + 1; k < K; ++k) s -= a[idx[c]][k] * x[k];
        x[c] = s / a[idx[c]][c];
    }
    return true;
}

bool solve3(long double a[3][3], long double b[3], long double x[3]) {
    return solve_dense<3>(a, b, x);
}

/// Least squares of y against (1, n, log2 n); falls back to (1, n) when the
/// system is too small or ill conditioned.
Fit fit_log_tail(const std::vector<TailPoint>& pts) {
    Fit f;
    const std::size_t m = pts.size();
    if (m < 2) return f;

    if (m >= 4) {
        long double A[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        long double B[3] = {0, 0, 0};
        for (const auto& p : pts) {
            long double r[3] = {1.0L, (long double)p.n, (long double)std::log2(p.n)};
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) A[i][j] += r[i] * r[j];
                B[i] += r[i] * (long double)p.y;
            }
        }
        long double Ainv_col1[3];
        long double Acopy[3][3];
        long double e1[3] = {0, 1, 0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) Acopy[i][j] = A[i][j];
        long double x[3];
        if (solve3(A, B, x)) {
            f.alpha = (double)x[0];
            f.beta = (double)x[1];
            f.gamma = (double)x[2];
            f.three_term = true;
            f.ok = true;
            double rss = 0, rmax = 0;
            for (const auto& p : pts) {
                double pred = f.alpha + f.beta * p.n + f.gamma * std::log2(p.n);
                double e = p.y - pred;
                rss += e * e;
                rmax = std::max(rmax, std::fabs(e));
            }
            f.resid_rms = std::sqrt(rss / (double)m);
            f.resid_max = rmax;
            double s2 = m > 3 ? rss / (double)(m - 3) : 0.0;
            if (solve3(Acopy, e1, Ainv_col1))
                f.se_beta = std::sqrt(std::max(0.0, s2 * (double)Ainv_col1[1]));
            return f;
        }
    }

    // two-term fallback
    long double sn = 0, sy = 0, snn = 0, sny = 0;
    for (const auto& p : pts) {
        sn += p.n;
        sy += p.y;
        snn += (long double)p.n * p.n;
        sny += (long double)p.n * p.y;
    }
    long double det = (long double)m * snn - sn * sn;
    if (std::fabs((double)det) < 1e-30) return f;
    f.beta = (double)(((long double)m * sny - sn * sy) / det);
    f.alpha = (double)((sy - f.beta * sn) / (long double)m);
    f.ok = true;
    double rss = 0, rmax = 0;
    for (const auto& p : pts) {
        double e = p.y - (f.alpha + f.beta * p.n);
        rss += e * e;
        rmax = std::max(rmax, std::fabs(e));
    }
    f.resid_rms = std::sqrt(rss / (double)m);
    f.resid_max = rmax;
    double s2 = m > 2 ? rss / (double)(m - 2) : 0.0;
    f.se_beta = std::sqrt(std::max(0.0, s2 * (double)((long double)m / det)));
    return f;
}

enum class Trend { Falling, Rising, Flat };

/// Compares the max of the first and last eighth of the corrected tail.
Trend tail_trend(const std::vector<TailPoint>& pts, double lg_nu, double gamma, double threshold,
                 double* span_n = nullptr) {
    std::size_t m = pts.size();
    std::size_t w = std::max<std::size_t>(2, m / 8);
    double first = -kInf, last = -kInf, nf = 0, nl = 0;
    for (std::size_t i = 0; i < w; ++i) {
        first = std::max(first, pts[i].y - pts[i].n * lg_nu - gamma * std::log2(pts[i].n));
        nf += pts[i].n;
    }
    for (std::size_t i = m - w; i < m; ++i) {
        last = std::max(last, pts[i].y - pts[i].n * lg_nu - gamma * std::log2(pts[i].n));
        nl += pts[i].n;
    }
    if (span_n) *span_n = (nl - nf) / (double)w;
    if (last <= first - threshold) return Trend::Falling;
    if (last >= first + threshold) return Trend::Rising;
    return Trend::Flat;
}

/// Bisects for the trend boundary of t_n / nu^n; flat counts toward `side`.
std::pair<double, double> bisect_boundary(const std::vector<TailPoint>& pts, double lg_seed,
                                          double gamma, double threshold, bool flat_converges) {
    auto is_conv = [&](double lg_nu) {
        Trend tr = tail_trend(pts, lg_nu, gamma, threshold);
        if (tr == Trend::Flat) return flat_converges;
        return tr == Trend::Falling;
    };
    double lo = lg_seed - 2.0, hi = lg_seed + 2.0;
    for (int i = 0; i < 8 && is_conv(lo); ++i) { hi = lo; lo -= 4.0; }
    for (int i = 0; i < 8 && !is_conv(hi); ++i) { lo = hi; hi += 4.0; }
    if (is_conv(lo) || !is_conv(hi)) return {lo, hi}; // degenerate; caller widens
    while (hi - lo > 1e-4) {
        double mid = 0.5 * (lo + hi);
        if (is_conv(mid)) hi = mid; else lo = mid;
    }
    return {lo, hi};
}

} // namespace

LimsupBracket limsup_root(const std::vector<ExtReal>& t) {
    const std::size_t N = t.size();
    if (N < 8) throw InsufficientData("limsup_root: need at least 8 iterates");
    LimsupBracket out;
    const std::size_t n0 = N / 2; // tail covers n = n0+1 .. N

    bool tail_infinite = false;
    std::vector<TailPoint> pts;
    for (std::size_t n = n0 + 1; n <= N; ++n) {
        const ExtReal& v = t[n - 1];
        if (v.is_infinite()) { tail_infinite = true; break; }
        if (!v.is_zero()) pts.push_back({(double)n, v.log2()});
    }

    if (tail_infinite) {
        out.lower = out.upper = ExtReal::infinity();
        out.exact = true;
        out.direct_lo = out.direct_hi = ExtReal::infinity();
        out.convergence_lo = out.convergence_hi = ExtReal::infinity();
        out.boundedness_lo = out.boundedness_hi = ExtReal::infinity();
        return out;
    }
    if (pts.empty()) {
        out.lower = out.upper = ExtReal::zero();
        out.exact = true;
        out.direct_lo = out.direct_hi = ExtReal::zero();
        out.convergence_lo = out.convergence_hi = ExtReal::zero();
        out.boundedness_lo = out.boundedness_hi = ExtReal::zero();
        return out;
    }

    double runmax_lg = -kInf;
    for (const auto& p : pts) runmax_lg = std::max(runmax_lg, p.y / p.n);

    Fit fit = fit_log_tail(pts);
    double fit_lo_lg, fit_hi_lg;
    if (fit.ok) {
        double margin = std::min(1.0, 6.0 * fit.se_beta);
        fit_lo_lg = fit.beta - margin;
        fit_hi_lg = fit.beta + margin;
    } else {
        fit_lo_lg = fit_hi_lg = runmax_lg;
    }

    double lo_lg = std::min(runmax_lg, fit_lo_lg);
    double hi_lg = std::max(runmax_lg, fit_hi_lg);
    out.lower = ExtReal::from_log2(lo_lg);
    out.upper = ExtReal::from_log2(hi_lg);
    out.exact = hi_lg - lo_lg <= 1e-9;

    // --- probe 1: extrapolate the root sequence a_n = t_n^(1/n) directly ---
    // basis spans the second-order expansion of r 2^(u(n)/n) with
    // u(n) = log2 c + a log2 n, so the constant term recovers the limit
    {
        constexpr int K = 6;
        auto basis = [](double n, long double r[K]) {
            long double ln = std::log2(n);
            r[0] = 1.0L;
            r[1] = 1.0L / n;
            r[2] = ln / n;
            r[3] = 1.0L / ((long double)n * n);
            r[4] = ln / ((long double)n * n);
            r[5] = ln * ln / ((long double)n * n);
        };
        long double S[K][K] = {}, B[K] = {}, Scopy[K][K], e0[K] = {1, 0, 0, 0, 0, 0};
        for (const auto& p : pts) {
            long double r[K];
            basis(p.n, r);
            long double a = std::exp2(p.y / p.n);
            for (int i = 0; i < K; ++i) {
                for (int j = 0; j < K; ++j) S[i][j] += r[i] * r[j];
                B[i] += r[i] * a;
            }
        }
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j) Scopy[i][j] = S[i][j];
        long double x[K], inv0[K];
        if (pts.size() >= 2 * K && solve_dense<K>(S, B, x)) {
            double ahat = (double)x[0];
            double rss = 0;
            for (const auto& p : pts) {
                long double r[K];
                basis(p.n, r);
                long double pred = 0;
                for (int i = 0; i < K; ++i) pred += r[i] * x[i];
                double e = std::exp2(p.y / p.n) - (double)pred;
                rss += e * e;
            }
            double s2 = pts.size() > K ? rss / (double)(pts.size() - K) : 0.0;
            double se = 0;
            if (solve_dense<K>(Scopy, e0, inv0)) se = std::sqrt(std::max(0.0, s2 * (double)inv0[0]));
            double w = 6.0 * se + 1e-4 * (1.0 + std::fabs(ahat));
            out.direct_lo = ExtReal::from_value(std::max(0.0, ahat - w));
            out.direct_hi = ExtReal::from_value(ahat + w);
        } else {
            out.direct_lo = out.lower;
            out.direct_hi = out.upper;
        }
    }

    // --- probes 2 and 3: the two normalized-sequence characterizations ---
    {
        double gamma = fit.three_term ? fit.gamma : 0.0;
        double span = 1.0;
        tail_trend(pts, fit.ok ? fit.beta : runmax_lg, gamma, 0.25, &span);
        span = std::max(span, 1.0);
        double boundary_band = (0.5 + 5.0 * fit.resid_rms) / span + 2e-4;

        // t_n/nu^n -> 0: a flat normalized tail does not converge
        auto [clo, chi] = bisect_boundary(pts, fit.ok ? fit.beta : runmax_lg, gamma, 0.25, false);
        out.convergence_lo = ExtReal::from_log2(clo - boundary_band);
        out.convergence_hi = ExtReal::from_log2(chi + boundary_band);

        // t_n/nu^n bounded: a flat normalized tail is bounded
        auto [blo, bhi] = bisect_boundary(pts, fit.ok ? fit.beta : runmax_lg, gamma, 0.25, true);
        out.boundedness_lo = ExtReal::from_log2(blo - boundary_band);
        out.boundedness_hi = ExtReal::from_log2(bhi + boundary_band);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::optional<ExtReal> exact_diagonal_sup(const OperatorPtr& op) {
    if (!op->diagonal_like()) return std::nullopt;
    constexpr Index kScan = 2048;
    ExtReal best = ExtReal::zero();
    for (Index k = 1; k <= kScan; ++k) best = max(best, op->diagonal_entry(k).abs());
    ExtReal tail = op->diagonal_tail_sup(kScan + 1);
    if (tail <= best) return best;
    if (op->diagonal_exact_tail()) return tail;
    return std::nullopt;
}

namespace {

/// Scaled pure shift moving mass toward higher indices with bounded weights:
/// every iterate sequence the radius formulas see has an eventually-zero
/// tail, so all five radii are exactly zero.
bool forward_shift_null(const OperatorPtr& op) {
    const OperatorRep* cur = op.get();
    ExtReal factor = ExtReal::one();
    while (cur->kind() == OperatorRep::Kind::Scale) {
        factor = factor * cur->scale_factor().abs();
        cur = cur->children().front().get();
    }
    if (cur->kind() != OperatorRep::Kind::WeightedShift) return false;
    if (cur->shift_offset() >= 0) return false;
    return cur->rule().tail_sup(1).is_finite() && factor.is_finite();
}

std::optional<ExtReal> closed_form_collapsed(const OperatorPtr& T, const SeminormFamily& P) {
    if (forward_shift_null(T)) return ExtReal::zero();
    if (!T->diagonal_like()) return std::nullopt;
    switch (P.kind()) {
        case SeminormFamily::Kind::SingleNorm: {
            ExtReal best = ExtReal::zero();
            for (Index k = 1; k <= P.dim(); ++k) best = max(best, T->diagonal_entry(k).abs());
            return best;
        }
        case SeminormFamily::Kind::Coordinate:
        case SeminormFamily::Kind::PrefixBoxes:
            return exact_diagonal_sup(T);
        default:
            return std::nullopt;
    }
}

struct BracketMerge {
    ExtReal lower = ExtReal::zero();
    ExtReal upper = ExtReal::zero();
    bool all_exact = true;
    bool any = false;

    void take_max(ExtReal lo, ExtReal hi, bool exact) {
        lower = max(lower, lo);
        upper = max(upper, hi);
        all_exact = all_exact && exact;
        any = true;
    }
};

struct MinMerge {
    ExtReal lower = ExtReal::infinity();
    ExtReal upper = ExtReal::infinity();
    bool all_exact = true;
    bool any = false;

    void take_min(ExtReal lo, ExtReal hi, bool exact) {
        lower = min(lower, lo);
        upper = min(upper, hi);
        all_exact = all_exact && exact;
        any = true;
    }
};

std::vector<std::pair<long, ExtReal>> trace_of(const std::vector<ExtReal>& t) {
    std::vector<std::pair<long, ExtReal>> out;
    out.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out.emplace_back((long)(i + 1), t[i]);
    return out;
}

std::vector<ExtReal> max_rows(const std::vector<std::vector<ExtReal>>& seqs, std::size_t n) {
    std::vector<ExtReal> m(n, ExtReal::zero());
    for (const auto& s : seqs)
        for (std::size_t i = 0; i < n; ++i) m[i] = max(m[i], s[i]);
    return m;
}

} // namespace

RadiusEstimate estimate_radius(RadiusKind kind, const OperatorPtr& T, const SeminormFamily& P,
                               const RadiusAux& aux, long depth, int level) {
    if (depth < 8) throw InsufficientData("estimate_radius: depth below 8");
    RadiusEstimate est;
    est.kind = kind;

    const std::vector<Seminorm> seminorms = P.enumerate(level);
    const std::size_t N = (std::size_t)depth;

    MixedSeminormEngine engine(T);
    bool sampled_anywhere = false;

    auto pair_sequence = [&](const Seminorm& p, const Seminorm& q) {
        std::vector<ExtReal> t(N);
        for (std::size_t n = 1; n <= N; ++n) {
            MixedSeminormValue v = engine.power_value((long)n, p, q);
            if (v.certainty == Certainty::LowerBound) sampled_anywhere = true;
            t[n - 1] = v.value;
        }
        return t;
    };

    switch (kind) {
        case RadiusKind::L: {
            if (aux.probes.empty()) throw UnsupportedCombination("L radius needs probe vectors");
            BracketMerge merge;
            std::vector<std::vector<ExtReal>> traces;
            for (const SparseVector& x : aux.probes) {
                std::vector<std::vector<ExtReal>> per_p(seminorms.size(), std::vector<ExtReal>(N));
                SparseVector y = x;
                for (std::size_t n = 1; n <= N; ++n) {
                    y = T->apply(y);
                    for (std::size_t ip = 0; ip < seminorms.size(); ++ip)
                        per_p[ip][n - 1] = seminorms[ip].eval(y);
                }
                for (auto& t : per_p) {
                    LimsupBracket b = limsup_root(t);
                    merge.take_max(b.lower, b.upper, b.exact);
                    traces.push_back(std::move(t));
                }
            }
            est.lower = merge.lower;
            est.upper = merge.upper;
            est.exact = merge.all_exact;
            est.lower_certified = true;
            est.iterates = trace_of(max_rows(traces, N));
            est.method = "strong probes x seminorms, tail extrapolation";
            break;
        }
        case RadiusKind::BB: {
            if (!aux.bounded_sets)
                throw UnsupportedCombination("BB radius needs a bounded-set family");
            const auto boxes = aux.bounded_sets->enumerate(level);
            if (boxes.empty()) throw UnsupportedCombination("BB radius: empty bounded-set family");
            BracketMerge merge;
            std::vector<std::vector<ExtReal>> traces;
            for (const Seminorm& b : boxes) {
                for (const Seminorm& q : seminorms) {
                    std::vector<ExtReal> t = pair_sequence(b, q);
                    LimsupBracket br = limsup_root(t);
                    merge.take_max(br.lower, br.upper, br.exact);
                    traces.push_back(std::move(t));
                }
            }
            est.lower = merge.lower;
            est.upper = merge.upper;
            est.exact = merge.all_exact && !sampled_anywhere;
            est.lower_certified = true;
            est.iterates = trace_of(max_rows(traces, N));
            est.method = "mixed seminorms over bounded boxes";
            break;
        }
        case RadiusKind::C: {
            BracketMerge outer;
            std::vector<ExtReal> trace(N, ExtReal::zero());
            for (const Seminorm& q : seminorms) {
                MinMerge inner;
                std::vector<ExtReal> inner_trace(N, ExtReal::infinity());
                for (const Seminorm& p : seminorms) {
                    std::vector<ExtReal> t = pair_sequence(p, q);
                    LimsupBracket br = limsup_root(t);
                    inner.take_min(br.lower, br.upper, br.exact);
                    for (std::size_t i = 0; i < N; ++i) inner_trace[i] = min(inner_trace[i], t[i]);
                }
                if (inner.any) {
                    outer.take_max(inner.lower, inner.upper, inner.all_exact);
                    for (std::size_t i = 0; i < N; ++i) trace[i] = max(trace[i], inner_trace[i]);
                }
            }
            est.lower = outer.any ? outer.lower : ExtReal::zero();
            est.upper = outer.any ? outer.upper : ExtReal::zero();
            est.exact = false;
            est.iterates = trace_of(trace);
            est.method = "sup_q inf_p over enumerated seminorms (level-restricted)";
            break;
        }
        case RadiusKind::NN: {
            std::vector<SeminormFamily> families = aux.candidate_families;
            if (families.empty()) families.push_back(P);
            MinMerge over_families;
            std::vector<ExtReal> trace(N, ExtReal::zero());
            for (const SeminormFamily& F : families) {
                BracketMerge fam;
                for (const Seminorm& p : F.enumerate(level)) {
                    std::vector<ExtReal> t = pair_sequence(p, p);
                    LimsupBracket br = limsup_root(t);
                    fam.take_max(br.lower, br.upper, br.exact);
                    for (std::size_t i = 0; i < N; ++i) trace[i] = max(trace[i], t[i]);
                }
                if (fam.any) over_families.take_min(fam.lower, fam.upper, fam.all_exact);
            }
            est.lower = over_families.any ? over_families.lower : ExtReal::zero();
            est.upper = over_families.any ? over_families.upper : ExtReal::zero();
            est.exact = false;
            est.iterates = trace_of(trace);
            est.method = "candidate-family upper bounds (level-restricted)";
            break;
        }
        case RadiusKind::NB: {
            MinMerge over_p;
            std::vector<ExtReal> trace(N, ExtReal::zero());
            for (const Seminorm& p : seminorms) {
                BracketMerge over_q;
                for (const Seminorm& q : seminorms) {
                    std::vector<ExtReal> t = pair_sequence(p, q);
                    LimsupBracket br = limsup_root(t);
                    over_q.take_max(br.lower, br.upper, br.exact);
                    for (std::size_t i = 0; i < N; ++i) trace[i] = max(trace[i], t[i]);
                }
                if (over_q.any) over_p.take_min(over_q.lower, over_q.upper, over_q.all_exact);
            }
            est.lower = over_p.any ? over_p.lower : ExtReal::zero();
            est.upper = over_p.any ? over_p.upper : ExtReal::zero();
            est.exact = over_p.any && over_p.all_exact && est.lower == est.upper;
            est.iterates = trace_of(trace);
            est.method = "inf_p sup_q over enumerated seminorms (level-restricted)";
            break;
        }
    }

    if (auto cf = closed_form_collapsed(T, P)) {
        est.lower = est.upper = *cf;
        est.lower_certified = est.upper_certified = true;
        est.exact = true;
        est.method += "; collapsed by closed form";
        if (est.iterates.empty()) est.iterates.emplace_back(1, *cf);
    }
    if (est.iterates.empty()) est.iterates.emplace_back(1, ExtReal::zero());
    return est;
}

std::vector<RadiusEstimate> estimate_all_radii(const OperatorPtr& T, const SeminormFamily& P,
                                               const RadiusAux& aux, long depth, int level) {
    std::vector<RadiusEstimate> out;
    for (RadiusKind k :
         {RadiusKind::L, RadiusKind::BB, RadiusKind::C, RadiusKind::NN, RadiusKind::NB})
        out.push_back(estimate_radius(k, T, P, aux, depth, level));
    return out;
}

OrderingReport verify_ordering(const std::vector<RadiusEstimate>& estimates) {
    OrderingReport report;
    auto rank = [](RadiusKind k) {
        switch (k) {
            case RadiusKind::L: return 0;
            case RadiusKind::BB: return 1;
            case RadiusKind::C: return 2;
            case RadiusKind::NN: return 3;
            case RadiusKind::NB: return 4;
        }
        return 0;
    };
    for (const auto& a : estimates) {
        for (const auto& b : estimates) {
            if (rank(a.kind) >= rank(b.kind)) continue;
            if (!a.lower_certified || !b.upper_certified) continue;
            if (b.upper.is_infinite() || a.lower.is_zero()) continue;
            // tolerate log-domain rounding of exact values
            bool violated = a.lower.is_infinite() ||
                            a.lower.log2() > b.upper.log2() + 1e-9;
            if (violated) {
                report.consistent = false;
                report.violations.push_back(
                    "r_" + to_string(a.kind) + " lower " + a.lower.str() + " exceeds r_" +
                    to_string(b.kind) + " upper " + b.upper.str());
            }
        }
    }
    return report;
}

ArithmeticReport radius_arithmetic_check(const OperatorPtr& S, const OperatorPtr& T,
                                         std::uint64_t seed) {
    Rng rng(seed ^ 0xabcdef1234ull);
    for (int trial = 0; trial < 32; ++trial) {
        SparseVector x;
        int support = 1 + (int)rng.uniform_int(0, 4);
        for (int s = 0; s < support; ++s)
            x.add(rng.uniform_int(1, 40),
                  LogScalar::from_real(rng.uniform(-2.0, 2.0)));
        if (x.empty()) continue;
        ExtReal defect = commutator_defect(S, T, x);
        ExtReal scale = max(S->apply(T->apply(x)).sup_abs(), T->apply(S->apply(x)).sup_abs());
        if (!defect.is_zero() && defect > scale * ExtReal::from_value(1e-10))
            throw NonCommuting("sampled commutator probe is nonzero");
    }

    auto rc = [](const OperatorPtr& op) {
        auto v = exact_diagonal_sup(op);
        if (!v) throw UnsupportedCombination("radius arithmetic needs diagonal-like operands");
        return *v;
    };

    ArithmeticReport rep;
    rep.rc_s = rc(S);
    rep.rc_t = rc(T);
    rep.rc_product = rc(OperatorRep::product({S, T}));
    rep.rc_sum = rc(OperatorRep::sum({S, T}));

    const ExtReal slack = ExtReal::from_log2(1e-11); // log-domain rounding only
    rep.product_ok = rep.rc_product <= rep.rc_s * rep.rc_t * slack;
    rep.sum_ok = rep.rc_sum <= (rep.rc_s + rep.rc_t) * slack;
    return rep;
}

FastNullVerdict fast_null_check(const OperatorPtr& T,
                                const std::function<SparseVector(long)>& x_seq, long depth) {
    depth = std::max<long>(depth, 16);
    for (double alpha : {2.0, 10.0}) {
        double lg_alpha = std::log2(alpha);
        // precondition: alpha^n x_n -> 0
        {
            double head = -kInf, tail = -kInf;
            for (long n = 1; n <= depth; ++n) {
                ExtReal s = x_seq(n).sup_abs();
                double v = s.is_zero() ? -kInf : s.log2() + n * lg_alpha;
                if (n <= depth / 4) head = std::max(head, v);
                if (n > depth - depth / 4) tail = std::max(tail, v);
            }
            if (!(tail <= head - 2.0) && tail != -kInf) return FastNullVerdict::PreconditionViolation;
        }
        // conclusion: alpha^n T^n x_n -> 0
        {
            double head = -kInf, tail = -kInf;
            for (long n = 1; n <= depth; ++n) {
                ExtReal s = T->power_apply(n, x_seq(n)).sup_abs();
                double v = s.is_zero() ? -kInf : s.log2() + n * lg_alpha;
                if (n <= depth / 4) head = std::max(head, v);
                if (n > depth - depth / 4) tail = std::max(tail, v);
            }
            if (tail == -kInf) continue;
            if (!(tail <= head - 2.0) || tail > -6.0) return FastNullVerdict::Fails;
        }
    }
    return FastNullVerdict::Holds;
}

} // namespace tvspec
