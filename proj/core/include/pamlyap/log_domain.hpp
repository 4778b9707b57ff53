#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace pam {

// A complex number stored as (log-magnitude, phase). Moments grow like
// e^{gamma t}; at t ~ 40 the raw values can leave double range, so this
// representation is first-class throughout the quadrature stack.
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    static LogComplex from(std::complex<double> z) {
        if (z == std::complex<double>(0.0, 0.0)) return {};
        return {std::log(std::abs(z)), std::arg(z)};
    }
    static LogComplex from_log(double log_mag, double phase) { return {log_mag, phase}; }

    bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }

    // may overflow to inf; log form stays authoritative
    std::complex<double> value() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_mag), phase);
    }
    double real_part() const {
        if (is_zero()) return 0.0;
        return std::exp(log_mag) * std::cos(phase);
    }
    // signed real magnitude: exp(log_mag)*sign(cos(phase)); callers use this
    // for values known to be real up to quadrature noise
    double sign() const { return std::cos(phase) >= 0.0 ? 1.0 : -1.0; }

    LogComplex operator*(const LogComplex& o) const {
        if (is_zero() || o.is_zero()) return {};
        return {log_mag + o.log_mag, phase + o.phase};
    }
    LogComplex operator/(const LogComplex& o) const {
        return {log_mag - o.log_mag, phase - o.phase};
    }
    LogComplex scaled(double log_factor) const { return {log_mag + log_factor, phase}; }
};

// |a-b| / |b| computed without leaving the log domain.
inline double rel_diff(const LogComplex& a, const LogComplex& b) {
    if (b.is_zero()) return a.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
    if (a.is_zero()) return 1.0;
    const double shift = std::max(a.log_mag, b.log_mag);
    const std::complex<double> av = std::polar(std::exp(a.log_mag - shift), a.phase);
    const std::complex<double> bv = std::polar(std::exp(b.log_mag - shift), b.phase);
    return std::abs(av - bv) * std::exp(shift - b.log_mag);
}

// Deterministic log-domain sum: contributions are complex factors with an
// attached log scale; the running sum is rescaled whenever a larger scale
// arrives, so arbitrary magnitudes accumulate without overflow. Summation
// order is the call order (fixed for reproducibility).
class LogAccumulator {
public:
    void add(std::complex<double> factor, double log_scale) {
        if (factor == std::complex<double>(0.0, 0.0)) return;
        if (std::isinf(shift_) && shift_ < 0) {
            shift_ = log_scale;
            sum_ = factor;
            return;
        }
        if (log_scale > shift_) {
            sum_ *= std::exp(shift_ - log_scale);
            shift_ = log_scale;
            sum_ += factor;
        } else {
            sum_ += factor * std::exp(log_scale - shift_);
        }
    }
    void add(const LogComplex& v) {
        if (v.is_zero()) return;
        add(std::polar(1.0, v.phase), v.log_mag);
    }

    LogComplex result() const {
        if (sum_ == std::complex<double>(0.0, 0.0)) return {};
        return {shift_ + std::log(std::abs(sum_)), std::arg(sum_)};
    }
    // largest log scale seen; e^{max_scale} * eps estimates the roundoff floor
    double max_log_scale() const { return shift_; }

private:
    double shift_ = -std::numeric_limits<double>::infinity();
    std::complex<double> sum_{0.0, 0.0};
};

// Square root under the continuous-argument branch rule: for z = r e^{i theta}
// with theta tracked along a parameterization (not reduced mod 2pi),
// sqrt(z) = sqrt(r) e^{i theta/2}.
inline std::complex<double> sqrt_tracked(double modulus, double argument) {
    return std::polar(std::sqrt(modulus), argument / 2.0);
}

}  // namespace pam
