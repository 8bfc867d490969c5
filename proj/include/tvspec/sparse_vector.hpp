#pragma once

#include <map>
#include <string>

#include "tvspec/log_scalar.hpp"

namespace tvspec {

/// 1-based coordinate index into a sequence space.
using Index = long;

/// Finitely supported sequence with LogScalar entries; no stored zeros.
///
/// Entries live in an ordered map so iteration order (and therefore every
/// report built from it) is deterministic.
class SparseVector {
public:
    SparseVector() = default;

    static SparseVector unit(Index k) {
        SparseVector v;
        v.set(k, LogScalar::one());
        return v;
    }

    void set(Index k, const LogScalar& value) {
        if (value.is_zero()) {
            entries_.erase(k);
        } else {
            entries_[k] = value;
        }
    }

    void add(Index k, const LogScalar& value) {
        if (value.is_zero()) return;
        auto it = entries_.find(k);
        if (it == entries_.end()) {
            entries_.emplace(k, value);
        } else {
            LogScalar s = it->second + value;
            if (s.is_zero()) {
                entries_.erase(it);
            } else {
                it->second = s;
            }
        }
    }

    LogScalar get(Index k) const {
        auto it = entries_.find(k);
        return it == entries_.end() ? LogScalar::zero() : it->second;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }
    Index max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

    const std::map<Index, LogScalar>& entries() const { return entries_; }

    friend SparseVector operator+(const SparseVector& a, const SparseVector& b) {
        SparseVector r = a;
        for (const auto& [k, v] : b.entries_) r.add(k, v);
        return r;
    }

    friend SparseVector operator-(const SparseVector& a, const SparseVector& b) {
        SparseVector r = a;
        for (const auto& [k, v] : b.entries_) r.add(k, -v);
        return r;
    }

    friend SparseVector operator*(const LogScalar& c, const SparseVector& x) {
        SparseVector r;
        if (c.is_zero()) return r;
        for (const auto& [k, v] : x.entries_) r.entries_[k] = c * v;
        return r;
    }

    /// max_k |x_k|, exact on the support.
    ExtReal sup_abs() const {
        ExtReal m = ExtReal::zero();
        for (const auto& [k, v] : entries_) m = max(m, v.abs());
        return m;
    }

    /// Bilinear pairing sum_k f_k x_k (no conjugation).
    friend LogScalar pair(const SparseVector& f, const SparseVector& x) {
        LogScalar acc = LogScalar::zero();
        const SparseVector& small = f.support_size() <= x.support_size() ? f : x;
        const SparseVector& big = f.support_size() <= x.support_size() ? x : f;
        for (const auto& [k, v] : small.entries_) acc = acc + v * big.get(k);
        return acc;
    }

    /// sup-norm distance, exact per coordinate.
    friend ExtReal sup_dist(const SparseVector& a, const SparseVector& b) {
        return (a - b).sup_abs();
    }

private:
    std::map<Index, LogScalar> entries_;
};

} // namespace tvspec
