#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pamlyap/types.hpp"

namespace pam {

enum class ExponentMethod { closed_form, root_finder, growth_fit };

struct ExponentResult {
    double value = 0.0;           // the exponent, units 1/time
    double critical_point = 0.0;  // z0 of the solved stationarity condition
    ExponentMethod method = ExponentMethod::root_finder;
    double residual = 0.0;        // |H'(z0)| or analogous
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

// H_k(z) = k(k-3)/2 + k z - nu log prod_{i=0}^{k-1}(z+i); log-gamma
// differences take over for large k.
double H_k(double z, int k, double nu);
double H_k_prime(double z, int k, double nu);
// Gamma-ratio form k(k-3)/2 + kz - nu log(Gamma(z+k)/Gamma(z)); equals H_k.
double H_k_gamma_form(double z, int k, double nu);

// gamma_k(1; nu) = H_k(z0_k), z0_k the unique root of H_k' on (0, infinity)
// (H_k is strictly convex there).
ExponentResult gamma_k_onesided(int k, double nu);

// gamma_1(1; nu) = -1 + nu - nu log nu (the minimum of H_1 at z = nu).
double gamma1_onesided(double nu);

// Second-moment exponent for general p, q > 0 at velocity p - q:
// root of H2'(z) on (0, infinity) with
//   H2(z) = (1/2)(p s + q/s - 2 - (p-q) log s + p z + q/z - 2 - (p-q) log z),
//   s(z) = ((p z - q/z + 2 b^2) + sqrt((p z - q/z + 2 b^2)^2 + 4 p q)) / (2 p).
// gamma1 at the same velocity is 0 and is returned alongside.
// (p,q) = (2,0) delegates to the one-sided exponents; 0 < q < 1e-3 rejected.
struct Gamma2General {
    ExponentResult gamma2;
    double gamma1 = 0.0;
};
Gamma2General gamma2_general(const ModelParams& params);
double H2_general(double z, const ModelParams& params);

// Almost-sure exponent via the replica continuation:
// -3/2 + inf_{z>0} (z - nu Psi(z)), the infimum located by Psi'(z) = 1/nu.
ExponentResult almost_sure_replica(double nu);

// Continuum (SHE) moment exponents (k^3 - k)/24, exact.
double she_gamma(int k);

enum class ExponentModel { onesided, symmetric, she };

struct IntermittencyEntry {
    std::string label;     // "gamma_tilde_1", "gamma_1", "gamma_2/2", ...
    double value;
    double margin_to_next;  // next.value - value; strict iff > 0
    bool strict;
};
struct IntermittencyReport {
    ExponentModel model;
    double parameter;  // nu for onesided/she, beta for symmetric
    std::vector<IntermittencyEntry> entries;
    bool all_strict;
};
// Orders gamma_tilde_1 (one-sided only) and gamma_k/k for k <= k_max with
// strictness margins. symmetric(beta) has exponents only up to k = 2.
IntermittencyReport intermittency_report(double parameter, int k_max, ExponentModel model);

struct GrowthFit {
    double exponent;             // last two-point slope of log M(t)
    double error_bar;            // |last slope - previous slope|
    std::vector<double> slopes;  // all consecutive slopes
};
// Finite-t exponent estimator: consecutive slopes of t -> log M(t) on an
// increasing grid of >= 3 points.
GrowthFit growth_rate_fit(const std::function<double(double)>& log_moment,
                          std::span<const double> t_grid);

}  // namespace pam
