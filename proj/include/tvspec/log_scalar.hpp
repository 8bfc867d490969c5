#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "tvspec/extreal.hpp"

namespace tvspec {

using Complex = std::complex<double>;

/// A complex scalar stored as (unit phase, log2 magnitude).
///
/// All vector and power arithmetic in this library runs on this type so that
/// products of doubly exponential weights never overflow; only the phase
/// carries rounding beyond the usual ulp. Zero is (phase 0, log2 -inf).
class LogScalar {
public:
    LogScalar() : phase_(0.0, 0.0), lg_(-std::numeric_limits<double>::infinity()) {}

    static LogScalar zero() { return LogScalar(); }
    static LogScalar one() { return from_parts(Complex(1.0, 0.0), 0.0); }

    static LogScalar from_parts(Complex unit_phase, double lg) {
        LogScalar s;
        s.phase_ = unit_phase;
        s.lg_ = lg;
        return s;
    }

    static LogScalar from_complex(Complex z) {
        double m = std::abs(z);
        if (m == 0.0 || !std::isfinite(m)) {
            if (m == 0.0) return zero();
            // Caller fed an overflowed double; saturate.
            return from_parts(Complex(1.0, 0.0), std::numeric_limits<double>::infinity());
        }
        return from_parts(z / m, std::log2(m));
    }

    static LogScalar from_real(double x) {
        if (x == 0.0) return zero();
        return from_parts(Complex(x < 0 ? -1.0 : 1.0, 0.0), std::log2(std::abs(x)));
    }

    /// Exact 2^lg construction (phase +1).
    static LogScalar from_log2(double lg) { return from_parts(Complex(1.0, 0.0), lg); }

    bool is_zero() const { return lg_ == -std::numeric_limits<double>::infinity(); }

    ExtReal abs() const { return ExtReal::from_log2(lg_); }
    double log2_abs() const { return lg_; }
    Complex phase() const { return phase_; }

    Complex to_complex() const {
        if (is_zero()) return Complex(0.0, 0.0);
        return phase_ * std::exp2(lg_);
    }

    friend LogScalar operator*(const LogScalar& a, const LogScalar& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        Complex p = a.phase_ * b.phase_;
        double m = std::abs(p);
        if (m > 0) p /= m; // keep the phase on the unit circle
        return from_parts(p, a.lg_ + b.lg_);
    }

    friend LogScalar operator+(const LogScalar& a, const LogScalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        double hi = a.lg_ > b.lg_ ? a.lg_ : b.lg_;
        Complex z = a.phase_ * std::exp2(a.lg_ - hi) + b.phase_ * std::exp2(b.lg_ - hi);
        double m = std::abs(z);
        if (m == 0.0) return zero(); // exact cancellation
        return from_parts(z / m, hi + std::log2(m));
    }

    friend LogScalar operator-(const LogScalar& a, const LogScalar& b) { return a + (-b); }

    LogScalar operator-() const {
        if (is_zero()) return zero();
        return from_parts(-phase_, lg_);
    }

    LogScalar conj() const {
        if (is_zero()) return zero();
        return from_parts(std::conj(phase_), lg_);
    }

    LogScalar inverse() const {
        if (is_zero()) return from_parts(Complex(1.0, 0.0), std::numeric_limits<double>::infinity());
        return from_parts(std::conj(phase_) / std::norm(phase_), -lg_);
    }

    LogScalar pow_int(long n) const {
        if (n == 0) return one();
        if (is_zero()) return zero();
        Complex p = std::pow(phase_, Complex(static_cast<double>(n), 0.0));
        double m = std::abs(p);
        if (m > 0) p /= m;
        return from_parts(p, lg_ * static_cast<double>(n));
    }

private:
    Complex phase_;
    double lg_;
};

} // namespace tvspec
