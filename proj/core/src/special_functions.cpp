#include "pamlyap/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace pam {

namespace {
// B_2 / 2, B_4 / 4, ... for the digamma tail; B_2n for the trigamma tail.
constexpr double kB2n[] = {
    1.0 / 6.0,    -1.0 / 30.0,    1.0 / 42.0,     -1.0 / 30.0,
    5.0 / 66.0,   -691.0 / 2730.0, 7.0 / 6.0,
};
constexpr int kTerms = 7;
constexpr double kShiftLimit = 12.0;  // error of the 7-term tail < 1e-16 here
}  // namespace

double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma: x > 0 required");
    double result = 0.0;
    while (x < kShiftLimit) {  // Psi(x) = Psi(x+1) - 1/x
        result -= 1.0 / x;
        x += 1.0;
    }
    // Psi(x) ~ log x - 1/(2x) - sum B_2n / (2n x^{2n})
    result += std::log(x) - 0.5 / x;
    const double z = 1.0 / (x * x);
    double zp = z;
    for (int n = 1; n <= kTerms; ++n) {
        result -= kB2n[n - 1] / (2.0 * n) * zp;
        zp *= z;
    }
    return result;
}

double trigamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("trigamma: x > 0 required");
    double result = 0.0;
    while (x < kShiftLimit) {  // Psi'(x) = Psi'(x+1) + 1/x^2
        result += 1.0 / (x * x);
        x += 1.0;
    }
    // Psi'(x) ~ 1/x + 1/(2x^2) + sum B_2n / x^{2n+1}
    const double z = 1.0 / (x * x);
    result += 1.0 / x + 0.5 * z;
    double zp = z / x;
    for (int n = 1; n <= kTerms; ++n) {
        result += kB2n[n - 1] * zp;
        zp *= z;
    }
    return result;
}

double polygamma(int order, double x) {
    if (order == 0) return digamma(x);
    if (order == 1) return trigamma(x);
    throw std::invalid_argument("polygamma: only orders 0 and 1 supported");
}

}  // namespace pam
