#include "tvspec/classify.hpp"

#include <algorithm>
#include <cmath>

#include "tvspec/errors.hpp"

namespace tvspec {

namespace {

bool known_structured(const OperatorRep& op) {
    using K = OperatorRep::Kind;
    switch (op.kind()) {
        case K::WeightedShift:
        case K::Diagonal:
        case K::Banded:
        case K::FiniteRank:
            return true;
        case K::Sum:
        case K::Product:
        case K::Scale: {
            for (const auto& c : op.children())
                if (!known_structured(*c)) return false;
            return true;
        }
    }
    return false;
}

/// nn certificate by recursion: nb-bounded parts, self-mapping diagonals,
/// prefix-triangular kinds, and algebra combinations of those.
bool nn_yes(const OperatorRep& op, std::string& how) {
    if (op.finite_rank_view()) {
        how = "nb-bounded (finite reach), hence nn-bounded";
        return true;
    }
    if (op.diagonal_like()) {
        how = "each coordinate ball maps into |d(k)| times itself";
        return true;
    }
    if (op.lower_prefix()) {
        how = "prefix boxes are self-mapped (rows read no higher coordinate)";
        return true;
    }
    if (op.kind() == OperatorRep::Kind::Scale) return nn_yes(*op.children().front(), how);
    if (op.kind() == OperatorRep::Kind::Sum || op.kind() == OperatorRep::Kind::Product) {
        std::string childhow;
        for (const auto& c : op.children())
            if (!nn_yes(*c, childhow)) return false;
        how = "algebra of nn-bounded parts on a locally convex space";
        return true;
    }
    return false;
}

/// The neighborhood funnel refutation for upward shifts: a base neighborhood
/// inside the offset-length prefix box forces every coordinate bound
/// |x_{c+n}| < alpha^n / |w-product|, i.e. a bounded neighborhood, which a
/// non-locally-bounded coordinate space does not have.
bool nn_no_funnel(const OperatorRep& op, std::string& how) {
    if (op.shift_funnel()) {
        how = "self-mapped neighborhoods would pin every coordinate through the shift chain, "
              "making some neighborhood bounded; the space is not locally bounded";
        return true;
    }
    return false;
}

BoundednessVerdict nb_verdict(const OperatorPtr& T, int level) {
    if (auto view = T->finite_rank_view()) {
        return {BoundednessVerdict::Yes,
                "maps the cylinder over its " + std::to_string(view->functionals.size()) +
                    " read coordinates into a bounded box"};
    }
    // hunt a row that escapes any prefix box, then generalize structurally
    for (Index m = 1; m <= level + 64; ++m) {
        SparseVector row = T->row(m);
        if (row.empty()) continue;
        Index top = row.max_index();
        if (top > level) {
            return {BoundednessVerdict::No,
                    "row " + std::to_string(m) + " reads coordinate " + std::to_string(top) +
                        " outside the level-" + std::to_string(level) +
                        " prefix box; the same pattern recurs at every level, so no "
                        "neighborhood has a bounded image"};
        }
    }
    if (!T->reach_bound())
        return {BoundednessVerdict::No, "unbounded read reach with no bounding certificate"};
    return {BoundednessVerdict::Unknown, "no structural certificate applies"};
}

} // namespace

ClassificationReport classify_boundedness(const OperatorPtr& T, const SpaceModel& space,
                                          int level) {
    ClassificationReport rep;

    if (space.locally_bounded) {
        // one norm decides all four classes at once
        Seminorm norm = space.generating.enumerate(1).front();
        MixedSeminormValue v = operator_seminorm(T, norm);
        BoundednessVerdict verdict;
        if (v.certainty == Certainty::Exact) {
            verdict = v.value.is_finite()
                          ? BoundednessVerdict{BoundednessVerdict::Yes,
                                               "operator norm " + v.value.str()}
                          : BoundednessVerdict{BoundednessVerdict::No,
                                               "operator norm is infinite"};
        } else if (v.value.is_infinite()) {
            verdict = {BoundednessVerdict::No, "sampled norm escaped past the bound"};
        } else {
            verdict = {BoundednessVerdict::Unknown,
                       "sampled norm lower bound " + v.value.str() + " only"};
        }
        rep.nb = rep.nn = rep.continuous = rep.bb = verdict;
        return rep;
    }

    if (!known_structured(*T)) {
        rep.nb = rep.nn = rep.continuous = rep.bb =
            {BoundednessVerdict::Unknown, "unrecognized operator structure"};
        return rep;
    }

    rep.bb = {BoundednessVerdict::Yes,
              "rows are finite, so box-shaped bounded sets map into box-shaped bounded sets"};
    rep.continuous = {BoundednessVerdict::Yes,
                      "each output coordinate depends on finitely many inputs"};

    rep.nb = nb_verdict(T, level);

    std::string how;
    if (rep.nb.state == BoundednessVerdict::Yes) {
        rep.nn = {BoundednessVerdict::Yes, "nb-bounded implies nn-bounded"};
    } else if (nn_yes(*T, how)) {
        rep.nn = {BoundednessVerdict::Yes, how};
    } else if (nn_no_funnel(*T, how)) {
        rep.nn = {BoundednessVerdict::No, how};
    } else {
        rep.nn = {BoundednessVerdict::Unknown, "no certificate or refutation applies"};
    }

    // hierarchy sanity: a Yes below a No is rejected outright
    auto rank_yes = [](const BoundednessVerdict& v) { return v.state == BoundednessVerdict::Yes; };
    auto rank_no = [](const BoundednessVerdict& v) { return v.state == BoundednessVerdict::No; };
    const BoundednessVerdict* chain[4] = {&rep.nb, &rep.nn, &rep.continuous, &rep.bb};
    for (int lower = 0; lower < 4; ++lower)
        for (int upper = lower + 1; upper < 4; ++upper)
            if (rank_yes(*chain[lower]) && rank_no(*chain[upper]))
                throw std::logic_error("classification contradicts the boundedness hierarchy");
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

/// Row echelon rank of a dense complex matrix with a relative tolerance.
std::size_t complex_rank(std::vector<std::vector<Complex>> M, double tol) {
    if (M.empty()) return 0;
    const std::size_t rows = M.size(), cols = M.front().size();
    double scale = 0.0;
    for (const auto& r : M)
        for (Complex v : r) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        for (std::size_t r = rank + 1; r < rows; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        if (std::abs(M[piv][c]) <= tol * scale) continue;
        std::swap(M[rank], M[piv]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            Complex f = M[r][c] / M[rank][c];
            for (std::size_t k = c; k < cols; ++k) M[r][k] -= f * M[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Nullspace basis of an n x D functional matrix via column echelon.
std::vector<SparseVector> kernel_basis(const std::vector<SparseVector>& functionals,
                                       Index probe_dim) {
    const std::size_t n = functionals.size(), D = (std::size_t)probe_dim;
    std::vector<std::vector<Complex>> M(n, std::vector<Complex>(D));
    double scale = 1e-300;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < D; ++j) {
            M[i][j] = functionals[i].get((Index)j + 1).to_complex();
            scale = std::max(scale, std::abs(M[i][j]));
        }
    // row echelon with pivot column tracking
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < D && rank < n; ++c) {
        std::size_t piv = rank;
        for (std::size_t r = rank + 1; r < n; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        if (std::abs(M[piv][c]) <= 1e-12 * scale) continue;
        std::swap(M[rank], M[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank) continue;
            Complex f = M[r][c] / M[rank][c];
            for (std::size_t k = 0; k < D; ++k) M[r][k] -= f * M[rank][k];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<SparseVector> basis;
    for (std::size_t c = 0; c < D; ++c) {
        if (std::find(pivot_col.begin(), pivot_col.end(), c) != pivot_col.end()) continue;
        SparseVector v;
        v.set((Index)c + 1, LogScalar::one());
        for (std::size_t r = 0; r < rank; ++r) {
            Complex coef = -M[r][c] / M[r][pivot_col[r]];
            if (std::abs(coef) > 0)
                v.set((Index)pivot_col[r] + 1, LogScalar::from_complex(coef));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace

RankBoundReport finite_rank_bound(const std::vector<SparseVector>& functionals,
                                  const OperatorPtr& T, Index probe_dim) {
    RankBoundReport rep;
    rep.functional_count = functionals.size();

    // precondition: T annihilates the joint kernel of the functionals
    for (const SparseVector& v : kernel_basis(functionals, probe_dim)) {
        SparseVector image = T->apply(v);
        ExtReal size = image.sup_abs();
        ExtReal scale = max(ExtReal::one(), v.sup_abs());
        if (size > scale * ExtReal::from_value(1e-10)) {
            throw PreconditionFailed(
                "kernel probe with f_i(x)=0 for all i has a nonzero image of size " + size.str());
        }
    }

    // rank of T on the leading probe_dim coordinates
    Index max_row = 0;
    std::vector<SparseVector> images;
    for (Index j = 1; j <= probe_dim; ++j) {
        SparseVector col = T->column(j);
        max_row = std::max(max_row, col.max_index());
        images.push_back(std::move(col));
    }
    if (max_row == 0) {
        rep.verified_rank = 0;
        rep.ok = true;
        rep.detail = "zero restriction";
        return rep;
    }
    std::vector<std::vector<Complex>> M((std::size_t)probe_dim,
                                        std::vector<Complex>((std::size_t)max_row));
    for (Index j = 1; j <= probe_dim; ++j)
        for (Index m = 1; m <= max_row; ++m)
            M[(std::size_t)j - 1][(std::size_t)m - 1] = images[(std::size_t)j - 1].get(m).to_complex();

    rep.verified_rank = complex_rank(std::move(M), 1e-10);
    rep.ok = rep.verified_rank <= rep.functional_count;
    rep.detail = "rank " + std::to_string(rep.verified_rank) + " over the leading " +
                 std::to_string(probe_dim) + " coordinates";
    return rep;
}

} // namespace tvspec
