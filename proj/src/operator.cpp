#include "tvspec/operator.hpp"

#include <algorithm>
#include <cmath>

#include "tvspec/errors.hpp"

namespace tvspec {

OperatorPtr OperatorRep::weighted_shift(int offset, WeightRule weight) {
    auto op = std::shared_ptr<OperatorRep>(new OperatorRep());
    op->kind_ = Kind::WeightedShift;
    op->offset_ = offset;
    op->rules_.emplace_back(offset, std::move(weight));
    return op;
}

OperatorPtr OperatorRep::diagonal(WeightRule d) {
    auto op = std::shared_ptr<OperatorRep>(new OperatorRep());
    op->kind_ = Kind::Diagonal;
    op->rules_.emplace_back(0, std::move(d));
    return op;
}

OperatorPtr OperatorRep::banded(std::vector<std::pair<int, WeightRule>> bands) {
    auto op = std::shared_ptr<OperatorRep>(new OperatorRep());
    op->kind_ = Kind::Banded;
    op->rules_ = std::move(bands);
    return op;
}

OperatorPtr OperatorRep::finite_rank(std::vector<SparseVector> functionals,
                                     std::vector<SparseVector> ranges) {
    if (functionals.size() != ranges.size())
        throw DomainError("finite_rank: functional/range count mismatch");
    auto op = std::shared_ptr<OperatorRep>(new OperatorRep());
    op->kind_ = Kind::FiniteRank;
    op->functionals_ = std::move(functionals);
    op->ranges_ = std::move(ranges);
    return op;
}

OperatorPtr OperatorRep::sum(std::vector<OperatorPtr> terms) {
    auto op = std::shared_ptr<OperatorRep>(new OperatorRep());
    op->kind_ = Kind::Sum;
    op->children_ = std::move(terms);
    return op;
}

OperatorPtr OperatorRep::product(std::vector<OperatorPtr> factors) {
    auto op = std::shared_ptr<OperatorRep>(new OperatorRep());
    op->kind_ = Kind::Product;
    op->children_ = std::move(factors);
    return op;
}

OperatorPtr OperatorRep::scale(LogScalar factor, OperatorPtr inner) {
    auto op = std::shared_ptr<OperatorRep>(new OperatorRep());
    op->kind_ = Kind::Scale;
    op->factor_ = factor;
    op->children_.push_back(std::move(inner));
    return op;
}

OperatorPtr OperatorRep::identity() { return diagonal(WeightRule::unit()); }

OperatorPtr OperatorRep::zero() { return finite_rank({}, {}); }

SparseVector OperatorRep::apply(const SparseVector& x) const {
    SparseVector out;
    switch (kind_) {
        case Kind::WeightedShift:
        case Kind::Diagonal:
        case Kind::Banded:
            for (const auto& [c, w] : rules_) {
                for (const auto& [k, v] : x.entries()) {
                    Index target = k - c;
                    if (target >= 1) out.add(target, v * w.eval(k));
                }
            }
            break;
        case Kind::FiniteRank:
            for (std::size_t i = 0; i < functionals_.size(); ++i) {
                LogScalar c = pair(functionals_[i], x);
                if (!c.is_zero()) out = out + (c * ranges_[i]);
            }
            break;
        case Kind::Sum:
            for (const auto& t : children_) out = out + t->apply(x);
            break;
        case Kind::Product: {
            SparseVector y = x;
            for (auto it = children_.rbegin(); it != children_.rend(); ++it) y = (*it)->apply(y);
            out = y;
            break;
        }
        case Kind::Scale:
            out = factor_ * children_.front()->apply(x);
            break;
    }
    return out;
}

SparseVector OperatorRep::apply_transpose(const SparseVector& x) const {
    SparseVector out;
    switch (kind_) {
        case Kind::WeightedShift:
        case Kind::Diagonal:
        case Kind::Banded:
            // T_{m,k} = w(k) [m == k - c]; transpose sends e_m to w(m+c) e_{m+c}
            for (const auto& [c, w] : rules_) {
                for (const auto& [m, v] : x.entries()) {
                    Index source = m + c;
                    if (source >= 1) out.add(source, v * w.eval(source));
                }
            }
            break;
        case Kind::FiniteRank:
            for (std::size_t i = 0; i < functionals_.size(); ++i) {
                LogScalar c = pair(ranges_[i], x);
                if (!c.is_zero()) out = out + (c * functionals_[i]);
            }
            break;
        case Kind::Sum:
            for (const auto& t : children_) out = out + t->apply_transpose(x);
            break;
        case Kind::Product: {
            SparseVector y = x;
            for (const auto& f : children_) y = f->apply_transpose(y);
            out = y;
            break;
        }
        case Kind::Scale:
            out = factor_ * children_.front()->apply_transpose(x);
            break;
    }
    return out;
}

LogScalar OperatorRep::power_coefficient(long n, Index i, Index j) const {
    if (n < 0) throw DomainError("power_coefficient: negative power");
    if (n == 0) return i == j ? LogScalar::one() : LogScalar::zero();
    switch (kind_) {
        case Kind::Diagonal: {
            if (i != j) return LogScalar::zero();
            LogScalar c = rules_.front().second.eval(i).pow_int(n);
            if (!c.is_zero() && !std::isfinite(c.log2_abs()))
                throw OverflowError("power_coefficient: log-magnitude overflow");
            return c;
        }
        case Kind::WeightedShift: {
            int c = offset_;
            if (j != i - static_cast<Index>(n) * c) return LogScalar::zero();
            LogScalar acc = LogScalar::one();
            Index k = i;
            for (long t = 0; t < n; ++t) {
                if (k - c < 1) return LogScalar::zero();
                acc = acc * rules_.front().second.eval(k);
                k -= c;
            }
            if (!acc.is_zero() && !std::isfinite(acc.log2_abs()))
                throw OverflowError("power_coefficient: log-magnitude overflow");
            return acc;
        }
        case Kind::Scale: {
            LogScalar f = factor_.pow_int(n);
            return f * children_.front()->power_coefficient(n, i, j);
        }
        default: {
            SparseVector v = power_apply(n, SparseVector::unit(i));
            return v.get(j);
        }
    }
}

SparseVector OperatorRep::power_row(long n, Index m) const {
    if (n < 0) throw DomainError("power_row: negative power");
    if (n == 0) return SparseVector::unit(m);
    switch (kind_) {
        case Kind::Diagonal: {
            SparseVector r;
            r.set(m, rules_.front().second.eval(m).pow_int(n));
            return r;
        }
        case Kind::WeightedShift: {
            // row m of T^n has its single entry at column m + n*offset
            int c = offset_;
            Index col = m + static_cast<Index>(n) * c;
            SparseVector r;
            if (col < 1) return r;
            LogScalar acc = LogScalar::one();
            Index k = col;
            for (long t = 0; t < n; ++t) {
                if (k - c < 1) return SparseVector();
                acc = acc * rules_.front().second.eval(k);
                k -= c;
            }
            r.set(col, acc);
            return r;
        }
        case Kind::Scale: {
            return factor_.pow_int(n) * children_.front()->power_row(n, m);
        }
        default: {
            SparseVector v = SparseVector::unit(m);
            for (long t = 0; t < n; ++t) v = apply_transpose(v);
            return v;
        }
    }
}

SparseVector OperatorRep::power_apply(long n, SparseVector x) const {
    for (long t = 0; t < n; ++t) x = apply(x);
    return x;
}

std::optional<Index> OperatorRep::reach_bound() const {
    switch (kind_) {
        case Kind::WeightedShift:
        case Kind::Diagonal:
        case Kind::Banded: {
            Index bound = 0;
            for (const auto& [c, w] : rules_) {
                auto se = w.support_end();
                if (!se) return std::nullopt;
                bound = std::max(bound, *se);
            }
            return bound;
        }
        case Kind::FiniteRank: {
            Index bound = 0;
            for (const auto& f : functionals_) bound = std::max(bound, f.max_index());
            return bound;
        }
        case Kind::Sum: {
            Index bound = 0;
            for (const auto& t : children_) {
                auto b = t->reach_bound();
                if (!b) return std::nullopt;
                bound = std::max(bound, *b);
            }
            return bound;
        }
        case Kind::Product:
            // rows of AB read no further than rows of the rightmost factor
            return children_.back()->reach_bound();
        case Kind::Scale:
            if (factor_.is_zero()) return 0;
            return children_.front()->reach_bound();
    }
    return std::nullopt;
}

std::optional<Index> OperatorRep::range_bound() const {
    switch (kind_) {
        case Kind::WeightedShift:
        case Kind::Diagonal:
        case Kind::Banded: {
            Index bound = 0;
            for (const auto& [c, w] : rules_) {
                auto se = w.support_end();
                if (!se) return std::nullopt;
                bound = std::max(bound, *se - c);
            }
            return bound;
        }
        case Kind::FiniteRank: {
            Index bound = 0;
            for (const auto& y : ranges_) bound = std::max(bound, y.max_index());
            return bound;
        }
        case Kind::Sum: {
            Index bound = 0;
            for (const auto& t : children_) {
                auto b = t->range_bound();
                if (!b) return std::nullopt;
                bound = std::max(bound, *b);
            }
            return bound;
        }
        case Kind::Product:
            return children_.front()->range_bound();
        case Kind::Scale:
            if (factor_.is_zero()) return 0;
            return children_.front()->range_bound();
    }
    return std::nullopt;
}

std::optional<OperatorRep::FiniteRankView> OperatorRep::finite_rank_view() const {
    if (kind_ == Kind::FiniteRank) {
        FiniteRankView v;
        v.functionals = functionals_;
        v.ranges = ranges_;
        return v;
    }
    if (kind_ == Kind::Scale) {
        if (factor_.is_zero()) return FiniteRankView{};
        auto inner = children_.front()->finite_rank_view();
        if (!inner) return std::nullopt;
        for (auto& y : inner->ranges) y = factor_ * y;
        return inner;
    }
    if (kind_ == Kind::Sum) {
        FiniteRankView v;
        for (const auto& t : children_) {
            auto part = t->finite_rank_view();
            if (!part) return std::nullopt;
            v.functionals.insert(v.functionals.end(), part->functionals.begin(),
                                 part->functionals.end());
            v.ranges.insert(v.ranges.end(), part->ranges.begin(), part->ranges.end());
        }
        return v;
    }
    if (kind_ == Kind::Product) {
        // a finite-rank factor makes the whole product finite rank: pull the
        // view through the factors on either side
        for (std::size_t split = 0; split < children_.size(); ++split) {
            auto view = children_[split]->finite_rank_view();
            if (!view) continue;
            FiniteRankView v = *view;
            // factors to the right feed the functionals through transposes
            for (std::size_t r = split + 1; r < children_.size(); ++r)
                for (auto& f : v.functionals) f = children_[r]->apply_transpose(f);
            // factors to the left act on the ranges
            for (std::size_t l = split; l-- > 0;)
                for (auto& y : v.ranges) y = children_[l]->apply(y);
            return v;
        }
        return std::nullopt;
    }
    auto reach = reach_bound();
    if (!reach) return std::nullopt;
    FiniteRankView v;
    for (Index j = 1; j <= *reach; ++j) {
        SparseVector col = column(j);
        if (col.empty()) continue;
        v.functionals.push_back(SparseVector::unit(j));
        v.ranges.push_back(col);
    }
    return v;
}

bool OperatorRep::lower_prefix() const {
    switch (kind_) {
        case Kind::WeightedShift:
        case Kind::Diagonal:
        case Kind::Banded:
            for (const auto& [c, w] : rules_)
                if (c > 0) return false; // row m reads column m + c > m
            return true;
        case Kind::FiniteRank: {
            for (std::size_t i = 0; i < ranges_.size(); ++i) {
                Index read = functionals_[i].max_index();
                for (const auto& [m, v] : ranges_[i].entries())
                    if (read > m) return false;
            }
            return true;
        }
        case Kind::Sum:
        case Kind::Product:
            for (const auto& t : children_)
                if (!t->lower_prefix()) return false;
            return true;
        case Kind::Scale:
            return factor_.is_zero() || children_.front()->lower_prefix();
    }
    return false;
}

bool OperatorRep::diagonal_like() const {
    switch (kind_) {
        case Kind::Diagonal:
            return true;
        case Kind::Scale:
            return children_.front()->diagonal_like();
        case Kind::Sum:
        case Kind::Product:
            for (const auto& t : children_)
                if (!t->diagonal_like()) return false;
            return !children_.empty();
        default:
            return false;
    }
}

LogScalar OperatorRep::diagonal_entry(Index k) const {
    switch (kind_) {
        case Kind::Diagonal:
            return rules_.front().second.eval(k);
        case Kind::Scale:
            return factor_ * children_.front()->diagonal_entry(k);
        case Kind::Sum: {
            LogScalar s = LogScalar::zero();
            for (const auto& t : children_) s = s + t->diagonal_entry(k);
            return s;
        }
        case Kind::Product: {
            LogScalar s = LogScalar::one();
            for (const auto& t : children_) s = s * t->diagonal_entry(k);
            return s;
        }
        default:
            throw DomainError("diagonal_entry: operator is not diagonal-like");
    }
}

ExtReal OperatorRep::diagonal_tail_sup(Index lo) const {
    switch (kind_) {
        case Kind::Diagonal:
            return rules_.front().second.tail_sup(lo);
        case Kind::Scale:
            return factor_.abs() * children_.front()->diagonal_tail_sup(lo);
        case Kind::Sum: {
            ExtReal s = ExtReal::zero();
            for (const auto& t : children_) s = s + t->diagonal_tail_sup(lo);
            return s;
        }
        case Kind::Product: {
            ExtReal s = ExtReal::one();
            for (const auto& t : children_) s = s * t->diagonal_tail_sup(lo);
            return s;
        }
        default:
            throw DomainError("diagonal_tail_sup: operator is not diagonal-like");
    }
}

const WeightRule* OperatorRep::plain_diagonal_rule() const {
    if (kind_ == Kind::Diagonal) return &rules_.front().second;
    return nullptr;
}

bool OperatorRep::diagonal_exact_tail() const {
    if (kind_ == Kind::Diagonal) return true;
    if (kind_ == Kind::Scale) return children_.front()->diagonal_exact_tail();
    return false;
}

bool OperatorRep::shift_funnel() const {
    if (kind_ == Kind::Scale)
        return !factor_.is_zero() && children_.front()->shift_funnel();
    if (kind_ != Kind::WeightedShift || offset_ < 1) return false;
    if (rules_.front().second.support_end()) return false;
    // the funnel argument needs nonzero weights along the whole chain;
    // scan an initial segment as the certificate's checked part
    for (Index k = offset_ + 1; k <= offset_ + 64; ++k)
        if (rules_.front().second.eval(k).is_zero()) return false;
    return true;
}

std::string OperatorRep::describe() const {
    switch (kind_) {
        case Kind::WeightedShift:
            return "shift(offset=" + std::to_string(offset_) + ", " + rules_.front().second.name() + ")";
        case Kind::Diagonal:
            return "diagonal(" + rules_.front().second.name() + ")";
        case Kind::Banded: {
            std::string s = "banded(";
            for (std::size_t i = 0; i < rules_.size(); ++i) {
                if (i) s += ", ";
                s += std::to_string(rules_[i].first) + ":" + rules_[i].second.name();
            }
            return s + ")";
        }
        case Kind::FiniteRank:
            return "finite_rank(n=" + std::to_string(functionals_.size()) + ")";
        case Kind::Sum: {
            std::string s = "sum(";
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i) s += ", ";
                s += children_[i]->describe();
            }
            return s + ")";
        }
        case Kind::Product: {
            std::string s = "product(";
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i) s += ", ";
                s += children_[i]->describe();
            }
            return s + ")";
        }
        case Kind::Scale: {
            Complex f = factor_.to_complex();
            char buf[64];
            std::snprintf(buf, sizeof(buf), "scale(%g%+gi, ", f.real(), f.imag());
            return std::string(buf) + children_.front()->describe() + ")";
        }
    }
    return "?";
}

ExtReal commutator_defect(const OperatorPtr& a, const OperatorPtr& b, const SparseVector& probe) {
    SparseVector ab = a->apply(b->apply(probe));
    SparseVector ba = b->apply(a->apply(probe));
    return sup_dist(ab, ba);
}

} // namespace tvspec
