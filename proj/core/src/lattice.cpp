#include "pamlyap/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace pam {

LogComplex eval_F_log(std::complex<double> z, double t, int n, const ModelParams& params) {
    if (z == std::complex<double>(0.0, 0.0)) throw std::invalid_argument("eval_F: z != 0 required");
    const std::complex<double> w = params.p() * z + params.q() / z;
    const double log_mag = -n * std::log(std::abs(z)) + 0.5 * t * (w.real() - 2.0);
    const double phase = -n * std::arg(z) + 0.5 * t * w.imag();
    return LogComplex::from_log(log_mag, phase);
}

std::complex<double> eval_F(std::complex<double> z, double t, int n, const ModelParams& params) {
    return eval_F_log(z, t, n, params).value();
}

}  // namespace pam
