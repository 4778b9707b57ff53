#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "pamlyap/contour.hpp"
#include "pamlyap/quadrature.hpp"
#include "pamlyap/types.hpp"

namespace pam {

// f analytic off 0, supplied in log form so string products survive large t.
using LogFn = std::function<LogComplex(std::complex<double>)>;

// f(z) = F^{2,0}_{t,n}(z) / z = e^{t(z-1)} z^{-n-1}; n real so callers can
// pass n = nu * t directly.
LogFn onesided_weight(double t, double n);

struct ExpansionTerm {
    Partition lambda;
    LogComplex value;          // I_lambda, symmetry prefactor included
    double symmetry_factor;
    double contour_radius;
    double error_estimate;
};

// Common circle for the w-variables. The determinant kernel
// det[1/(lambda_i + w_i - w_j)] has poles at w_i - w_j = -lambda_i, so the
// radius must keep every chord below 1 (radius < 1/2); 0.45 default.
Contour partition_contour(double radius = 0.45, int nodes = 32);

// I_lambda: ell(lambda)-fold quadrature of det[1/(lambda_i+w_i-w_j)] times
// string products f(w_j) f(w_j+1) ... f(w_j+lambda_j-1) over the common
// circle, including the 1/(m_1! m_2! ...) prefactor.
ExpansionTerm i_lambda(const LogFn& f, const Partition& lambda, const Contour& contour,
                       const QuadratureOptions& opts = {});

// mu_k = k! sum over partitions of k of I_lambda. Equals the nested-contour
// integral with integrand prod_{A<B} (z_A-z_B)/(z_A-z_B-1) prod f(z_j) dz_j
// (no extra 1/z measure); moment callers absorb 1/z into f, as
// onesided_weight does.
MomentResult mu_via_partitions(const LogFn& f, int k, const Contour& contour,
                               const QuadratureOptions& opts = {});

// Direct route for the same nested integral (independent of the expansion):
// circles shifted by 1, for the expansion-identity cross-check.
MomentResult mu_direct_nested(const LogFn& f, int k, const QuadratureOptions& opts = {});

// gamma_lambda = sum_j gamma_{lambda_j}(1; nu), the per-partition exponent.
double gamma_lambda(const Partition& lambda, double nu);

}  // namespace pam
