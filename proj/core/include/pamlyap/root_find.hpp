#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "pamlyap/types.hpp"

namespace pam {

struct RootResult {
    double root;
    double residual;
    double bracket_lo;
    double bracket_hi;
};

// Newton iteration guarded by a maintained sign-change bracket; falls back to
// bisection whenever the Newton step leaves the bracket. Unconditionally
// convergent for the monotone derivative functions solved here.
template <typename F, typename DF>
RootResult newton_bracketed(const F& f, const DF& df, double lo, double hi,
                            double tol = 1e-14, int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, lo, hi};
    if (fhi == 0.0) return {hi, 0.0, lo, hi};
    if (std::signbit(flo) == std::signbit(fhi))
        throw std::invalid_argument("newton_bracketed: no sign change on bracket");
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        const double fx = f(x);
        if (std::abs(fx) == 0.0) return {x, 0.0, lo, hi};
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        const double d = df(x);
        double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= tol * (1.0 + std::abs(x))) {
            x = next;
            break;
        }
        x = next;
    }
    return {x, std::abs(f(x)), lo, hi};
}

// Same interface without a derivative (bisection to the requested tolerance).
template <typename F>
RootResult bisect(const F& f, double lo, double hi, double tol = 1e-14, int max_iter = 400) {
    double flo = f(lo);
    if (flo == 0.0) return {lo, 0.0, lo, hi};
    if (std::signbit(flo) == std::signbit(f(hi)))
        throw std::invalid_argument("bisect: no sign change on bracket");
    const double lo0 = lo, hi0 = hi;
    for (int it = 0; it < max_iter && (hi - lo) > tol * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return {mid, 0.0, lo0, hi0};
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, std::abs(f(x)), lo0, hi0};
}

// Grow hi geometrically from lo until f changes sign; for monotone f.
template <typename F>
std::pair<double, double> grow_bracket(const F& f, double lo, double hi0, double hi_cap) {
    const double flo = f(lo);
    double hi = hi0;
    while (hi < hi_cap) {
        if (std::signbit(f(hi)) != std::signbit(flo)) return {lo, hi};
        hi *= 2.0;
    }
    if (std::signbit(f(hi_cap)) != std::signbit(flo)) return {lo, hi_cap};
    throw ComputationError("bracket not found on (" + std::to_string(lo) + ", " +
                           std::to_string(hi_cap) + ")");
}

}  // namespace pam
