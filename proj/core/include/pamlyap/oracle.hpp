#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pamlyap/types.hpp"

namespace pam {

// Dense symmetric moment field v(t; n_vec) on window^k. For the one-sided
// model the window starts at -1 and that layer is pinned to 0; for general
// (p,q) the window is symmetric about 0 with absorbing truncation.
class MomentField {
public:
    MomentField(int k, int n_min, int n_max, double t);

    int k() const { return k_; }
    int n_min() const { return n_min_; }
    int n_max() const { return n_max_; }
    int width() const { return n_max_ - n_min_ + 1; }
    double t() const { return t_; }
    double& t_mutable() { return t_; }

    double value(std::span<const int> n) const;
    double& at(std::span<const int> n);
    std::vector<double>& raw() { return values_; }
    const std::vector<double>& raw() const { return values_; }

    std::size_t size() const { return values_.size(); }
    std::size_t index(std::span<const int> n) const;
    void coords(std::size_t flat, std::span<int> out) const;

private:
    int k_;
    int n_min_;
    int n_max_;
    double t_;
    std::vector<double> values_;
};

struct OdeOptions {
    double tol = 1e-10;          // local abs/rel tolerance of the RK45 stepper
    int window_halfwidth = -1;   // -1: L = ceil(2(p+q+b^2)t + 10 sqrt(t) + 10 + max|n_i|)
};

int default_window_halfwidth(const ModelParams& params, double t, int max_abs_n);

// Integrates d/dt v = H v, H = 1/2 sum_i [Delta^{p,q}]_i + 1/2 b^2 sum_{a!=b} 1{n_a=n_b},
// from delta data, and returns the full field. k <= 2 for general (p,q);
// k <= 4 for (2,0) where the n = -1 layer is pinned to 0.
MomentField ode_moment_field(const ModelParams& params, int k, double t,
                             int max_abs_n, const OdeOptions& opts = {});

// Field value at n_vec plus a truncation certificate: total |v| on the window
// boundary shell must stay below tol * (interior max), else "window too small".
MomentResult ode_moment(const ModelParams& params, std::span<const int> n, double t,
                        const OdeOptions& opts = {});
MomentResult ode_moment(const ModelParams& params, const OrderedTuple& n, double t,
                        const OdeOptions& opts = {});
MomentResult ode_moment(const ModelParams& params, const OrderedPair& n, double t,
                        const OdeOptions& opts = {});

// Boundary-condition residuals of the contour formulas. The sampler returns
// u(t; n_vec) for arbitrary integer tuples (the formulas extend off the
// ordered cone, where the boundary relations actually hold).
using MomentSampler = std::function<double(std::span<const int>)>;

// max_n |T_beta u(n,n)| / max |u| over n in [lo, hi], with
// T_beta u = b^2 u(n,n) + (p/2)u(n,n-1) + (q/2)u(n+1,n) - (p/2)u(n-1,n) - (q/2)u(n,n+1).
double boundary_residual_two_point(const MomentSampler& u, const ModelParams& params,
                                   int lo, int hi);

// One-sided form: max over adjacent slots i and diagonal tuples of
// |([Delta^{2,0}]_i - [Delta^{2,0}]_{i+1} - 2 b^2) u| / max |u|.
double boundary_residual_onesided(const MomentSampler& u, const ModelParams& params,
                                  std::span<const std::vector<int>> diagonal_tuples);

}  // namespace pam
