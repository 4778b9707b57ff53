#pragma once

#include <string>
#include <vector>

namespace pam {

// Lyapunov exponents of the one-sided model versus velocity, normalized by
// the zero-noise growth rate gamma_1(1;nu) = -1 + nu - nu log nu so the
// gamma_1 curve sits at 0.
struct Figure2Data {
    std::vector<double> nu;
    int k_max = 5;
    std::vector<double> gamma_tilde_norm;               // almost-sure curve
    std::vector<std::vector<double>> gamma_over_k_norm;  // [k-2][i] for k = 2..k_max
};

Figure2Data compute_figure2(double nu_lo, double nu_hi, int points, int k_max);

// Deterministic CSV: header then one row per nu, %.17g fields.
std::string figure2_csv(const Figure2Data& data);

// Self-contained line plot, fixed 800x600 viewBox, linear axes, legend.
std::string figure2_svg(const Figure2Data& data);

}  // namespace pam
