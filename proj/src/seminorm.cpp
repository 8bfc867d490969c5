#include "tvspec/seminorm.hpp"

#include <algorithm>

#include "tvspec/errors.hpp"

namespace tvspec {

Seminorm Seminorm::coordinate(Index m) {
    Seminorm p;
    p.kind_ = Kind::Coordinate;
    p.window_ = {m};
    return p;
}

Seminorm Seminorm::finite_max(std::vector<Index> indices) {
    Seminorm p;
    p.kind_ = Kind::FiniteMax;
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    p.window_ = std::move(indices);
    return p;
}

Seminorm Seminorm::weighted_sup(std::vector<Index> window, WeightRule multiplier) {
    Seminorm p;
    p.kind_ = Kind::WeightedSup;
    std::sort(window.begin(), window.end());
    window.erase(std::unique(window.begin(), window.end()), window.end());
    p.window_ = std::move(window);
    p.profile_ = std::make_shared<WeightRule>(std::move(multiplier));
    return p;
}

Seminorm Seminorm::minkowski_box(WeightRule bound) {
    Seminorm p;
    p.kind_ = Kind::MinkowskiBox;
    p.profile_ = std::make_shared<WeightRule>(std::move(bound));
    return p;
}

Seminorm Seminorm::graph_norm(int level, OperatorPtr op) {
    Seminorm p;
    p.kind_ = Kind::GraphNorm;
    p.graph_level_ = level;
    p.graph_op_ = std::move(op);
    return p;
}

ExtReal Seminorm::eval(const SparseVector& x) const {
    switch (kind_) {
        case Kind::Coordinate:
            return x.get(window_.front()).abs();
        case Kind::FiniteMax: {
            ExtReal m = ExtReal::zero();
            for (Index i : window_) m = max(m, x.get(i).abs());
            return m;
        }
        case Kind::WeightedSup: {
            ExtReal m = ExtReal::zero();
            for (Index i : window_) m = max(m, profile_->eval(i).abs() * x.get(i).abs());
            return m;
        }
        case Kind::MinkowskiBox: {
            ExtReal m = ExtReal::zero();
            for (const auto& [i, v] : x.entries()) m = max(m, v.abs() / profile_->eval(i).abs());
            return m;
        }
        case Kind::GraphNorm: {
            if (!graph_op_) throw DomainError("graph norm: missing operator handle");
            ExtReal s = ExtReal::zero();
            SparseVector y = x;
            for (int k = 0; k <= graph_level_; ++k) {
                s = s + y.sup_abs();
                if (k < graph_level_) y = graph_op_->apply(y);
            }
            return s;
        }
    }
    return ExtReal::zero();
}

ExtReal Seminorm::allowance(Index j) const {
    switch (kind_) {
        case Kind::Coordinate:
            return j == window_.front() ? ExtReal::one() : ExtReal::infinity();
        case Kind::FiniteMax:
            return std::binary_search(window_.begin(), window_.end(), j)
                       ? ExtReal::one()
                       : ExtReal::infinity();
        case Kind::WeightedSup: {
            if (!std::binary_search(window_.begin(), window_.end(), j)) return ExtReal::infinity();
            ExtReal w = profile_->eval(j).abs();
            return w.is_zero() ? ExtReal::infinity() : ExtReal::one() / w;
        }
        case Kind::MinkowskiBox:
            return profile_->eval(j).abs();
        case Kind::GraphNorm:
            throw DomainError("allowance: graph norms are not coordinatewise");
    }
    return ExtReal::infinity();
}

std::string Seminorm::describe() const {
    switch (kind_) {
        case Kind::Coordinate:
            return "p[" + std::to_string(window_.front()) + "]";
        case Kind::FiniteMax: {
            std::string s = "max{";
            for (std::size_t i = 0; i < window_.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(window_[i]);
            }
            return s + "}";
        }
        case Kind::WeightedSup: {
            std::string s = "wsup(" + profile_->name() + "){";
            for (std::size_t i = 0; i < window_.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(window_[i]);
            }
            return s + "}";
        }
        case Kind::MinkowskiBox:
            return "box(" + profile_->name() + ")";
        case Kind::GraphNorm:
            return "graph[" + std::to_string(graph_level_) + "]";
    }
    return "?";
}

// ---------------------------------------------------------------------------

SeminormFamily SeminormFamily::coordinate(bool directed) {
    SeminormFamily f;
    f.kind_ = Kind::Coordinate;
    f.directed_ = directed;
    return f;
}

SeminormFamily SeminormFamily::prefix_boxes() {
    SeminormFamily f;
    f.kind_ = Kind::PrefixBoxes;
    f.directed_ = true;
    return f;
}

SeminormFamily SeminormFamily::single_norm(Index dim) {
    SeminormFamily f;
    f.kind_ = Kind::SingleNorm;
    f.directed_ = true;
    f.dim_ = dim;
    return f;
}

SeminormFamily SeminormFamily::sup_norm_family() {
    SeminormFamily f;
    f.kind_ = Kind::SupNorm;
    f.directed_ = true;
    return f;
}

SeminormFamily SeminormFamily::bounded_boxes(std::vector<WeightRule> bounds) {
    SeminormFamily f;
    f.kind_ = Kind::BoundedBoxes;
    f.role_ = Role::BoundedSetFamily;
    f.bounds_ = std::move(bounds);
    return f;
}

SeminormFamily SeminormFamily::graph(OperatorPtr op) {
    SeminormFamily f;
    f.kind_ = Kind::Graph;
    f.directed_ = true;
    f.graph_op_ = std::move(op);
    return f;
}

std::vector<Seminorm> SeminormFamily::enumerate(int level) const {
    std::vector<Seminorm> out;
    if (level <= 0) return out;
    switch (kind_) {
        case Kind::Coordinate: {
            if (directed_ && level > 14)
                throw ConfigError("directed coordinate enumeration above level 14");
            for (Index l = 1; l <= level; ++l) {
                out.push_back(Seminorm::coordinate(l));
                if (!directed_ || l < 2) continue;
                // all subsets of {1..l} with maximum l and size >= 2,
                // ordered by their bitmask over {1..l-1}
                unsigned long top = 1ul << (l - 1);
                for (unsigned long mask = 1; mask < top; ++mask) {
                    std::vector<Index> idx;
                    for (Index b = 0; b < l - 1; ++b)
                        if (mask & (1ul << b)) idx.push_back(b + 1);
                    idx.push_back(l);
                    out.push_back(Seminorm::finite_max(std::move(idx)));
                }
            }
            break;
        }
        case Kind::PrefixBoxes: {
            std::vector<Index> idx;
            for (Index l = 1; l <= level; ++l) {
                idx.push_back(l);
                out.push_back(Seminorm::finite_max(idx));
            }
            break;
        }
        case Kind::SingleNorm: {
            std::vector<Index> idx;
            for (Index i = 1; i <= dim_; ++i) idx.push_back(i);
            out.push_back(Seminorm::finite_max(std::move(idx)));
            break;
        }
        case Kind::SupNorm:
            out.push_back(Seminorm::sup_norm());
            break;
        case Kind::BoundedBoxes: {
            for (std::size_t i = 0; i < bounds_.size() && i < static_cast<std::size_t>(level); ++i)
                out.push_back(Seminorm::minkowski_box(bounds_[i]));
            break;
        }
        case Kind::Graph: {
            for (int l = 0; l < level; ++l) out.push_back(Seminorm::graph_norm(l, graph_op_));
            break;
        }
    }
    return out;
}

std::string SeminormFamily::name() const {
    switch (kind_) {
        case Kind::Coordinate:
            return directed_ ? "coordinate_directed" : "coordinate";
        case Kind::PrefixBoxes:
            return "prefix_boxes";
        case Kind::SingleNorm:
            return "single_norm(" + std::to_string(dim_) + ")";
        case Kind::SupNorm:
            return "sup_norm";
        case Kind::BoundedBoxes:
            return "bounded_boxes(" + std::to_string(bounds_.size()) + ")";
        case Kind::Graph:
            return "graph_family";
    }
    return "?";
}

} // namespace tvspec
