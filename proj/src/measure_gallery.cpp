#include "tvspec/measure_gallery.hpp"

#include <algorithm>
#include <cmath>

#include "tvspec/errors.hpp"

namespace tvspec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double frac(double t) {
    double f = t - std::floor(t);
    if (f >= 1.0) f -= 1.0;
    return f;
}

} // namespace

void StepFunction::normalize() {
    // sort pieces by start; merge duplicate starts (later wins deterministically)
    std::vector<std::size_t> order(starts_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return starts_[a] < starts_[b]; });
    std::vector<double> s, v;
    for (std::size_t i : order) {
        if (!s.empty() && starts_[i] == s.back()) {
            v.back() = value_lg_[i];
        } else {
            s.push_back(starts_[i]);
            v.push_back(value_lg_[i]);
        }
    }
    // drop zero-length pieces created by merging identical neighbours
    starts_.clear();
    value_lg_.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!starts_.empty() && value_lg_.back() == v[i]) continue;
        starts_.push_back(s[i]);
        value_lg_.push_back(v[i]);
    }
    if (starts_.empty()) {
        starts_ = {0.0};
        value_lg_ = {kNegInf};
    }
}

StepFunction StepFunction::constant(double value_lg) {
    StepFunction f;
    f.starts_ = {0.0};
    f.value_lg_ = {value_lg};
    return f;
}

StepFunction StepFunction::indicator(double a, double b) {
    StepFunction f;
    a = frac(a);
    b = frac(b);
    if (a == b) return constant(kNegInf);
    if (a < b) {
        if (a > 0.0) {
            f.starts_ = {0.0, a, b};
            f.value_lg_ = {kNegInf, 0.0, kNegInf};
        } else {
            f.starts_ = {0.0, b};
            f.value_lg_ = {0.0, kNegInf};
        }
    } else {
        // wraps around the top of the circle
        f.starts_ = {0.0, b, a};
        f.value_lg_ = {0.0, kNegInf, 0.0};
    }
    f.normalize();
    return f;
}

StepFunction StepFunction::from_pieces(std::vector<std::pair<double, double>> pieces) {
    StepFunction f;
    for (auto& [s, v] : pieces) {
        f.starts_.push_back(frac(s));
        f.value_lg_.push_back(v);
    }
    f.normalize();
    return f;
}

double StepFunction::value_lg_at(double t) const {
    t = frac(t);
    auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
    std::size_t idx = (it == starts_.begin()) ? starts_.size() - 1
                                              : (std::size_t)(it - starts_.begin()) - 1;
    return value_lg_[idx];
}

double StepFunction::superlevel_measure(double threshold_lg) const {
    double total = 0.0;
    for (std::size_t i = 0; i < starts_.size(); ++i) {
        double len = (i + 1 < starts_.size() ? starts_[i + 1] : starts_.front() + 1.0) - starts_[i];
        if (value_lg_[i] >= threshold_lg) total += len;
    }
    return total;
}

StepFunction StepFunction::rotated(double delta) const {
    StepFunction f;
    for (std::size_t i = 0; i < starts_.size(); ++i) {
        f.starts_.push_back(frac(starts_[i] + delta));
        f.value_lg_.push_back(value_lg_[i]);
    }
    // the piece containing 0 must still start at 0 after sorting; inject the
    // wrapped boundary explicitly
    f.normalize();
    if (f.starts_.front() > 0.0) {
        double v = value_lg_at(frac(-delta));
        f.starts_.insert(f.starts_.begin(), 0.0);
        f.value_lg_.insert(f.value_lg_.begin(), v);
        f.normalize();
    }
    return f;
}

StepFunction StepFunction::scaled_lg(double dlg) const {
    StepFunction f = *this;
    for (double& v : f.value_lg_)
        if (v != kNegInf) v += dlg;
    return f;
}

StepFunction log_domain_sum(const StepFunction& a, const StepFunction& b) {
    std::vector<double> cuts;
    cuts.reserve(a.starts_.size() + b.starts_.size());
    cuts.insert(cuts.end(), a.starts_.begin(), a.starts_.end());
    cuts.insert(cuts.end(), b.starts_.begin(), b.starts_.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    StepFunction f;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        double end = i + 1 < cuts.size() ? cuts[i + 1] : cuts.front() + 1.0;
        double mid = 0.5 * (cuts[i] + end);
        double va = a.value_lg_at(mid);
        double vb = b.value_lg_at(mid);
        double v;
        if (va == kNegInf) v = vb;
        else if (vb == kNegInf) v = va;
        else {
            double hi = std::max(va, vb), lo = std::min(va, vb);
            v = hi + std::log2(1.0 + std::exp2(lo - hi));
        }
        f.starts_.push_back(cuts[i]);
        f.value_lg_.push_back(v);
    }
    f.normalize();
    return f;
}

StepFunction rotate_apply(const RotationOperator& T, const StepFunction& f, long k) {
    if (k < 0) throw DomainError("rotate_apply: negative power");
    if (k == 0) return f;
    // exact-in-double shift by k*alpha mod 1 in one move; breakpoint drift is
    // bounded by k ulps and absorbed in the coverage slack
    return f.rotated(frac((double)k * T.alpha));
}

long covering_count(double alpha, long n) {
    if (n < 1) throw DomainError("covering_count: n must be >= 1");
    constexpr long kCap = 1000000;
    constexpr double kSlack = 1e-12;
    const double len = 1.0 / (double)n;

    std::vector<std::pair<double, double>> arcs; // non-wrapping [s, e] pieces
    for (long k = 1; k <= kCap; ++k) {
        double s = frac((double)k * alpha);
        double e = s + len;
        if (e <= 1.0) {
            arcs.emplace_back(s, e);
        } else {
            arcs.emplace_back(s, 1.0);
            arcs.emplace_back(0.0, e - 1.0);
        }
        // sweep for coverage of [0,1)
        std::vector<std::pair<double, double>> sorted = arcs;
        std::sort(sorted.begin(), sorted.end());
        double covered_to = 0.0;
        for (const auto& [as, ae] : sorted) {
            if (as > covered_to + kSlack) break;
            covered_to = std::max(covered_to, ae);
        }
        if (covered_to >= 1.0 - kSlack) return k;
    }
    throw NoCover("covering_count: cap exceeded");
}

CounterexampleReport build_counterexample(double alpha, int n_max) {
    if (n_max < 2) throw DomainError("build_counterexample: n_max must be >= 2");
    CounterexampleReport rep;
    rep.alpha = alpha;

    for (long n = 1; n <= n_max + 1; ++n) rep.covering_counts.push_back(covering_count(alpha, n));
    long acc = 0;
    for (long m : rep.covering_counts) rep.block_ends.push_back(acc += m);

    // h takes value 2^{s_n} on (1/(n+1), 1/n]; continue with the next block
    // value below the last explicit interval so every block bound applies
    std::vector<std::pair<double, double>> pieces;
    pieces.emplace_back(0.0, (double)rep.block_ends[(std::size_t)n_max]); // s_{n_max+1}
    for (int m = n_max; m >= 1; --m)
        pieces.emplace_back(1.0 / (double)(m + 1), (double)rep.block_ends[(std::size_t)m - 1]);
    StepFunction h = StepFunction::from_pieces(std::move(pieces));

    RotationOperator T{alpha};
    rep.all_blocks_full = true;
    for (int n = 1; n <= n_max; ++n) {
        long s_lo = n >= 2 ? rep.block_ends[(std::size_t)n - 2] : 0;
        long s_hi = rep.block_ends[(std::size_t)n - 1];
        BlockReport block;
        block.n = n;
        block.k_begin = s_lo + 1;
        block.k_end = s_hi;
        StepFunction sum = StepFunction::constant(kNegInf);
        double min_term_measure = 1.0;
        for (long k = s_lo + 1; k <= s_hi; ++k) {
            StepFunction term = rotate_apply(T, h, k).scaled_lg(-(double)k);
            min_term_measure = std::min(min_term_measure, term.superlevel_measure(0.0));
            sum = log_domain_sum(sum, term);
        }
        block.superlevel_measure = sum.superlevel_measure(0.0);
        block.full_measure = block.superlevel_measure >= 1.0 - 1e-9;
        block.per_term_min_measure = min_term_measure;
        block.per_term_ok = min_term_measure >= 1.0 / (double)n - 1e-9;
        rep.all_blocks_full = rep.all_blocks_full && block.full_measure && block.per_term_ok;
        rep.blocks.push_back(block);
    }
    return rep;
}

MeasureRadiusReport measure_radius_check(const RotationOperator& T) {
    MeasureRadiusReport rep;
    StepFunction f = StepFunction::indicator(0.0, 0.5);

    // rotation preserves the measure of every superlevel set
    rep.neighborhoods_invariant = true;
    for (long k = 1; k <= 40; ++k) {
        StepFunction g = rotate_apply(T, f, k);
        for (double thr : {-1.0, 0.0}) {
            if (std::abs(g.superlevel_measure(thr) - f.superlevel_measure(thr)) > 1e-12)
                rep.neighborhoods_invariant = false;
        }
    }

    // below 1: T^n f / nu^n keeps superlevel measure 1/2 at nu = 1/2
    rep.diverges_below_one = true;
    for (long n = 1; n <= 60; ++n) {
        StepFunction g = rotate_apply(T, f, n).scaled_lg((double)n); // f * 2^n
        if (std::abs(g.superlevel_measure(0.0) - 0.5) > 1e-12) rep.diverges_below_one = false;
    }

    // above 1: T^n f / 2^n has vanishing superlevel measure for any epsilon
    rep.converges_above_one = true;
    for (long n = 20; n <= 60; ++n) {
        StepFunction g = rotate_apply(T, f, n).scaled_lg(-(double)n);
        if (g.superlevel_measure(-10.0) != 0.0) rep.converges_above_one = false;
    }

    rep.chain_value =
        (rep.neighborhoods_invariant && rep.diverges_below_one && rep.converges_above_one) ? 1.0
                                                                                           : 0.0;
    rep.detail = "invariant neighborhoods give r_nn <= 1; measure preservation blocks strong "
                 "convergence below 1; the ordering collapses the chain to 1";
    return rep;
}

} // namespace tvspec
