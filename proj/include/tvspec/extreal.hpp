#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace tvspec {

/// Nonnegative extended real carried in base-2 logarithmic form.
///
/// The stored field is log2 of the represented value; -inf encodes 0 and
/// +inf encodes INFINITY. Multiplication, n-th roots and comparisons are
/// exact in this form no matter how large the value gets, and INFINITY
/// absorbs addition and max as required. Conversion to a plain double
/// happens only at the reporting boundary.
class ExtReal {
public:
    ExtReal() : lg_(-std::numeric_limits<double>::infinity()) {}

    static ExtReal zero() { return ExtReal(); }
    static ExtReal one() { return from_log2(0.0); }
    static ExtReal infinity() { return from_log2(std::numeric_limits<double>::infinity()); }

    static ExtReal from_log2(double lg) {
        ExtReal r;
        r.lg_ = lg;
        return r;
    }

    /// v must be >= 0 (negative input is clamped to zero magnitude of |v|
    /// by the caller; we take std::abs defensiveness out of the hot path).
    static ExtReal from_value(double v) {
        if (v <= 0.0) return zero();
        return from_log2(std::log2(v));
    }

    double log2() const { return lg_; }
    double value() const { return std::exp2(lg_); }

    bool is_zero() const { return lg_ == -std::numeric_limits<double>::infinity(); }
    bool is_infinite() const { return lg_ == std::numeric_limits<double>::infinity(); }
    bool is_finite() const { return !is_infinite(); }

    /// Product; 0 * INFINITY is 0 here (the empty contribution wins, which is
    /// the convention every column-sum use site needs).
    friend ExtReal operator*(ExtReal a, ExtReal b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return from_log2(a.lg_ + b.lg_);
    }

    /// Sum via log-sum-exp; INFINITY absorbs.
    friend ExtReal operator+(ExtReal a, ExtReal b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        double hi = a.lg_ > b.lg_ ? a.lg_ : b.lg_;
        double lo = a.lg_ > b.lg_ ? b.lg_ : a.lg_;
        return from_log2(hi + std::log2(1.0 + std::exp2(lo - hi)));
    }

    /// a / b with 0/0 = 0 and x/0 = INFINITY for x > 0.
    friend ExtReal operator/(ExtReal a, ExtReal b) {
        if (a.is_zero()) return zero();
        if (b.is_zero()) return infinity();
        if (b.is_infinite()) return a.is_infinite() ? infinity() : zero();
        return from_log2(a.lg_ - b.lg_);
    }

    ExtReal pow(double e) const {
        if (is_zero()) return e == 0.0 ? one() : zero();
        return from_log2(lg_ * e);
    }

    ExtReal nth_root(long n) const {
        if (is_zero() || is_infinite()) return *this;
        return from_log2(lg_ / static_cast<double>(n));
    }

    friend bool operator<(ExtReal a, ExtReal b) { return a.lg_ < b.lg_; }
    friend bool operator>(ExtReal a, ExtReal b) { return a.lg_ > b.lg_; }
    friend bool operator<=(ExtReal a, ExtReal b) { return a.lg_ <= b.lg_; }
    friend bool operator>=(ExtReal a, ExtReal b) { return a.lg_ >= b.lg_; }
    friend bool operator==(ExtReal a, ExtReal b) { return a.lg_ == b.lg_; }
    friend bool operator!=(ExtReal a, ExtReal b) { return a.lg_ != b.lg_; }

    friend ExtReal max(ExtReal a, ExtReal b) { return a.lg_ >= b.lg_ ? a : b; }
    friend ExtReal min(ExtReal a, ExtReal b) { return a.lg_ <= b.lg_ ? a : b; }

    /// |a - b| as nonnegative extended real via plain doubles; only used for
    /// desk-scale report comparisons.
    friend ExtReal abs_diff(ExtReal a, ExtReal b) {
        if (a.is_infinite() && b.is_infinite()) return zero();
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return from_value(std::abs(a.value() - b.value()));
    }

    std::string str() const {
        if (is_zero()) return "0";
        if (is_infinite()) return "inf";
        double v = value();
        if (std::isfinite(v)) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.12g", v);
            return buf;
        }
        char buf[48];
        std::snprintf(buf, sizeof(buf), "2^%.6g", lg_);
        return buf;
    }

private:
    double lg_;
};

} // namespace tvspec
