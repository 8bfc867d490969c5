#include "tvspec/weight_rule.hpp"

#include <cmath>

#include "tvspec/errors.hpp"

namespace tvspec {

WeightRule WeightRule::constant(Complex c) {
    WeightRule r;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "constant(%g%+gi)", c.real(), c.imag());
    r.name_ = c.imag() == 0.0 ? "constant(" + std::to_string(c.real()) + ")" : buf;
    LogScalar v = LogScalar::from_complex(c);
    r.eval_ = [v](Index) { return v; };
    ExtReal m = v.abs();
    r.tail_sup_ = [m](Index) { return m; };
    r.limit_points_ = {c};
    return r;
}

WeightRule WeightRule::geometric(double ratio) {
    WeightRule r;
    r.name_ = "geometric(" + std::to_string(ratio) + ")";
    LogScalar base = LogScalar::from_real(ratio);
    r.eval_ = [base](Index k) { return base.pow_int(k); };
    double lg = base.log2_abs();
    if (std::abs(ratio) < 1.0) {
        r.tail_sup_ = [lg](Index lo) { return ExtReal::from_log2(lg * static_cast<double>(lo)); };
        r.limit_points_ = {Complex(0.0, 0.0)};
    } else if (std::abs(ratio) == 1.0) {
        r.tail_sup_ = [](Index) { return ExtReal::one(); };
        r.limit_points_ = {};
    } else {
        r.tail_sup_ = [](Index) { return ExtReal::infinity(); };
        r.limit_points_ = {};
    }
    return r;
}

WeightRule WeightRule::harmonic(double c) {
    WeightRule r;
    r.name_ = "harmonic(" + std::to_string(c) + ")";
    r.eval_ = [c](Index k) { return LogScalar::from_real(c / static_cast<double>(k)); };
    double ac = std::abs(c);
    r.tail_sup_ = [ac](Index lo) { return ExtReal::from_value(ac / static_cast<double>(lo)); };
    r.limit_points_ = {Complex(0.0, 0.0)};
    return r;
}

WeightRule WeightRule::power(double s) {
    WeightRule r;
    r.name_ = "power(" + std::to_string(s) + ")";
    r.eval_ = [s](Index k) {
        return LogScalar::from_log2(s * std::log2(static_cast<double>(k)));
    };
    if (s < 0.0) {
        r.tail_sup_ = [s](Index lo) {
            return ExtReal::from_log2(s * std::log2(static_cast<double>(lo)));
        };
        r.limit_points_ = {Complex(0.0, 0.0)};
    } else if (s == 0.0) {
        r.tail_sup_ = [](Index) { return ExtReal::one(); };
        r.limit_points_ = {Complex(1.0, 0.0)};
    } else {
        r.tail_sup_ = [](Index) { return ExtReal::infinity(); };
        r.limit_points_ = {};
    }
    return r;
}

WeightRule WeightRule::stirling_shift() {
    WeightRule r;
    r.name_ = "stirling_shift";
    r.eval_ = [](Index k) {
        if (k <= 1) return LogScalar::one(); // never reaches the output (index falls off)
        double kk = static_cast<double>(k);
        double lg = (kk - 1.0) * std::log2(kk - 1.0) - kk * std::log2(kk);
        return LogScalar::from_log2(lg);
    };
    // values decrease from w(1)=1, w(2)=1/4, ... toward 0
    r.tail_sup_ = [](Index lo) {
        if (lo <= 1) return ExtReal::one();
        double kk = static_cast<double>(lo);
        return ExtReal::from_log2((kk - 1.0) * std::log2(kk - 1.0) - kk * std::log2(kk));
    };
    r.limit_points_ = {Complex(0.0, 0.0)};
    return r;
}

WeightRule WeightRule::double_exponential_box() {
    WeightRule r;
    r.name_ = "double_exponential_box";
    r.eval_ = [](Index k) {
        double kk = static_cast<double>(k);
        return LogScalar::from_log2(2.0 * kk * std::log2(2.0 * kk));
    };
    r.tail_sup_ = [](Index) { return ExtReal::infinity(); };
    r.limit_points_ = {};
    return r;
}

WeightRule WeightRule::finite(std::vector<Complex> values) {
    WeightRule r;
    r.name_ = "finite(" + std::to_string(values.size()) + ")";
    auto vals = std::make_shared<std::vector<LogScalar>>();
    for (Complex c : values) vals->push_back(LogScalar::from_complex(c));
    r.eval_ = [vals](Index k) {
        if (k < 1 || static_cast<std::size_t>(k) > vals->size()) return LogScalar::zero();
        return (*vals)[static_cast<std::size_t>(k - 1)];
    };
    r.tail_sup_ = [vals](Index lo) {
        ExtReal m = ExtReal::zero();
        for (Index k = lo; static_cast<std::size_t>(k) <= vals->size(); ++k) {
            if (k >= 1) m = max(m, (*vals)[static_cast<std::size_t>(k - 1)].abs());
        }
        return m;
    };
    r.support_end_ = static_cast<Index>(values.size());
    r.limit_points_ = {Complex(0.0, 0.0)};
    return r;
}

WeightRule WeightRule::custom(std::string name, std::function<LogScalar(Index)> eval,
                              std::function<ExtReal(Index)> tail_sup,
                              std::vector<Complex> limit_points) {
    WeightRule r;
    r.name_ = std::move(name);
    r.eval_ = std::move(eval);
    r.tail_sup_ = std::move(tail_sup);
    r.limit_points_ = std::move(limit_points);
    return r;
}

WeightRule WeightRule::by_name(const std::string& rule, double param) {
    if (rule == "constant") return constant(Complex(param, 0.0));
    if (rule == "geometric") return geometric(param);
    if (rule == "harmonic") return harmonic(param);
    if (rule == "power") return power(param);
    if (rule == "unit") return unit();
    if (rule == "linear") return linear();
    if (rule == "stirling_shift") return stirling_shift();
    if (rule == "double_exponential_box") return double_exponential_box();
    throw ConfigError("unknown weight rule: " + rule);
}

} // namespace tvspec
