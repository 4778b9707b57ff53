#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "pamlyap/log_domain.hpp"
#include "pamlyap/types.hpp"

namespace pam {

// Integer-indexed sequence on a finite window; reads outside return 0
// (absorbing truncation, the caller's window rule keeps the error negligible).
template <typename T>
class SequenceWindow {
public:
    SequenceWindow(int lo, std::vector<T> values) : lo_(lo), values_(std::move(values)) {}

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(values_.size()) - 1; }
    T operator()(int n) const {
        const int i = n - lo_;
        if (i < 0 || i >= static_cast<int>(values_.size())) return T{};
        return values_[static_cast<std::size_t>(i)];
    }
    T& at(int n) { return values_[static_cast<std::size_t>(n - lo_)]; }

private:
    int lo_;
    std::vector<T> values_;
};

// Delta^{p,q} f(n) = p f(n-1) + q f(n+1) - (p+q) f(n), uniformly for all
// (p,q) including (2,0).
template <typename T>
T apply_delta(const SequenceWindow<T>& f, int n, const ModelParams& params) {
    return params.p() * f(n - 1) + params.q() * f(n + 1) - (params.p() + params.q()) * f(n);
}

// Same stencil on a callable sequence (used by the eval_F ODE property test).
template <typename Fn>
auto apply_delta_fn(const Fn& f, int n, const ModelParams& params) {
    return params.p() * f(n - 1) + params.q() * f(n + 1) - (params.p() + params.q()) * f(n);
}

// F^{p,q}_{t,n}(z) = z^{-n} exp((t/2)(p z + q z^{-1} - 2)); z != 0.
std::complex<double> eval_F(std::complex<double> z, double t, int n, const ModelParams& params);

// Log-domain form of the same; safe where the direct form overflows.
LogComplex eval_F_log(std::complex<double> z, double t, int n, const ModelParams& params);

}  // namespace pam
