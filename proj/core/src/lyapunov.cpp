#include "pamlyap/lyapunov.hpp"

#include <cmath>
#include <sstream>

#include "pamlyap/root_find.hpp"
#include "pamlyap/special_functions.hpp"

namespace pam {

double H_k(double z, int k, double nu) {
    if (!(z > 0.0)) throw std::invalid_argument("H_k: z > 0");
    if (k < 1) throw std::invalid_argument("H_k: k >= 1");
    if (k > 20) return H_k_gamma_form(z, k, nu);
    double log_prod = 0.0;
    for (int i = 0; i < k; ++i) log_prod += std::log(z + i);
    return 0.5 * k * (k - 3) + k * z - nu * log_prod;
}

double H_k_gamma_form(double z, int k, double nu) {
    if (!(z > 0.0)) throw std::invalid_argument("H_k: z > 0");
    return 0.5 * k * (k - 3) + k * z - nu * (std::lgamma(z + k) - std::lgamma(z));
}

double H_k_prime(double z, int k, double nu) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += 1.0 / (z + i);
    return k - nu * s;
}

ExponentResult gamma_k_onesided(int k, double nu) {
    if (k < 1) throw std::invalid_argument("gamma_k_onesided: k >= 1");
    if (!(nu > 0.0)) throw std::invalid_argument("gamma_k_onesided: nu > 0");
    auto dH = [k, nu](double z) { return H_k_prime(z, k, nu); };
    auto d2H = [k, nu](double z) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += 1.0 / ((z + i) * (z + i));
        return nu * s;
    };
    // H_k' goes from -inf at 0+ to k at infinity; grow the bracket until the
    // sign flips (cannot fail for nu > 0)
    auto [lo, hi] = grow_bracket(dH, 1e-8, 1.0, 1e8);
    RootResult root = newton_bracketed(dH, d2H, lo, hi);
    ExponentResult r;
    r.value = H_k(root.root, k, nu);
    r.critical_point = root.root;
    r.method = ExponentMethod::root_finder;
    r.residual = root.residual;
    r.bracket_lo = root.bracket_lo;
    r.bracket_hi = root.bracket_hi;
    return r;
}

double gamma1_onesided(double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("gamma1_onesided: nu > 0");
    return -1.0 + nu - nu * std::log(nu);
}

namespace {

double s_of_z(double z, const ModelParams& params) {
    const double p = params.p(), q = params.q();
    const double A = p * z - q / z + 2.0 * params.beta2();
    return (A + std::sqrt(A * A + 4.0 * p * q)) / (2.0 * p);
}

}  // namespace

double H2_general(double z, const ModelParams& params) {
    if (!(z > 0.0)) throw std::invalid_argument("H2_general: z > 0");
    const double p = params.p(), q = params.q(), d = params.drift();
    const double s = s_of_z(z, params);
    return 0.5 * (p * s + q / s - 2.0 - d * std::log(s) + p * z + q / z - 2.0 - d * std::log(z));
}

Gamma2General gamma2_general(const ModelParams& params) {
    if (!(params.beta() > 0.0)) throw std::invalid_argument("gamma2_general: beta > 0");
    Gamma2General out;
    out.gamma1 = 0.0;  // at velocity p - q, always
    if (params.one_sided()) {
        // one-sided exponents at velocity p - q = 2; Brownian scaling carries
        // general beta back to the beta = 1 theorem:
        // gamma_k(beta; nu) = k(b^2-1) - 2 k nu log(beta) + b^2 gamma_k(1; nu/b^2)
        const double b2 = params.beta2();
        const double nu = 2.0;
        ExponentResult base = gamma_k_onesided(2, nu / b2);
        out.gamma2 = base;
        out.gamma2.value = 2.0 * (b2 - 1.0) - 2.0 * nu * std::log(params.beta()) + b2 * base.value;
        return out;
    }
    if (params.q() < 1e-3) {
        throw std::invalid_argument(
            "gamma2_general: q < 1e-3 unsupported (s(z) degenerates near the one-sided limit)");
    }
    const double p = params.p(), q = params.q(), d = params.drift(), b2 = params.beta2();
    auto dH2 = [&](double z) {
        const double A = p * z - q / z + 2.0 * b2;
        const double s = s_of_z(z, params);
        const double root = std::sqrt(A * A + 4.0 * p * q);
        const double ds = (p + q / (z * z)) * s / root;
        return 0.5 * ((p - q / (s * s) - d / s) * ds + p - q / (z * z) - d / z);
    };
    auto [lo, hi] = grow_bracket(dH2, 1e-8, 1.0, 1e8);
    RootResult root = bisect(dH2, lo, hi, 1e-15);
    out.gamma2.value = H2_general(root.root, params);
    out.gamma2.critical_point = root.root;
    out.gamma2.method = ExponentMethod::root_finder;
    out.gamma2.residual = root.residual;
    out.gamma2.bracket_lo = root.bracket_lo;
    out.gamma2.bracket_hi = root.bracket_hi;
    return out;
}

ExponentResult almost_sure_replica(double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("almost_sure_replica: nu > 0");
    // minimize z - nu Psi(z): stationarity 1 - nu Psi'(z) = 0, Psi' strictly
    // decreasing from +inf to 0 on (0, inf)
    auto g = [nu](double z) { return 1.0 - nu * trigamma(z); };
    auto [lo, hi] = grow_bracket(g, 1e-6, 1.0, 1e8);
    RootResult root = bisect(g, lo, hi, 1e-15);
    ExponentResult r;
    r.value = -1.5 + root.root - nu * digamma(root.root);
    r.critical_point = root.root;
    r.method = ExponentMethod::root_finder;
    r.residual = root.residual;
    r.bracket_lo = root.bracket_lo;
    r.bracket_hi = root.bracket_hi;
    return r;
}

double she_gamma(int k) {
    if (k < 1) throw std::invalid_argument("she_gamma: k >= 1");
    const double kk = static_cast<double>(k);
    return (kk * kk * kk - kk) / 24.0;
}

IntermittencyReport intermittency_report(double parameter, int k_max, ExponentModel model) {
    if (k_max < 1 || k_max > 10) throw std::invalid_argument("intermittency_report: k_max <= 10");
    IntermittencyReport rep;
    rep.model = model;
    rep.parameter = parameter;
    auto push = [&rep](std::string label, double value) {
        rep.entries.push_back({std::move(label), value, 0.0, false});
    };
    switch (model) {
        case ExponentModel::onesided: {
            push("gamma_tilde_1", almost_sure_replica(parameter).value);
            push("gamma_1", gamma_k_onesided(1, parameter).value);
            for (int k = 2; k <= k_max; ++k) {
                std::ostringstream label;
                label << "gamma_" << k << "/" << k;
                push(label.str(), gamma_k_onesided(k, parameter).value / k);
            }
            break;
        }
        case ExponentModel::symmetric: {
            // general p = q has exponents only up to k = 2
            ModelParams params(1.0, 1.0, parameter);
            Gamma2General g2 = gamma2_general(params);
            push("gamma_1", g2.gamma1);
            push("gamma_2/2", g2.gamma2.value / 2.0);
            break;
        }
        case ExponentModel::she: {
            for (int k = 1; k <= k_max; ++k) {
                std::ostringstream label;
                label << "gamma_" << k << "/" << k;
                push(label.str(), she_gamma(k) / k);
            }
            break;
        }
    }
    rep.all_strict = true;
    for (std::size_t i = 0; i + 1 < rep.entries.size(); ++i) {
        rep.entries[i].margin_to_next = rep.entries[i + 1].value - rep.entries[i].value;
        rep.entries[i].strict = rep.entries[i].margin_to_next > 0.0;
        if (!rep.entries[i].strict) rep.all_strict = false;
    }
    if (!rep.entries.empty()) {
        rep.entries.back().margin_to_next = 0.0;
        rep.entries.back().strict = true;
    }
    return rep;
}

GrowthFit growth_rate_fit(const std::function<double(double)>& log_moment,
                          std::span<const double> t_grid) {
    if (t_grid.size() < 3)
        throw std::invalid_argument("growth_rate_fit: need >= 3 grid points");
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i] < t_grid[i + 1]))
            throw std::invalid_argument("growth_rate_fit: grid must increase");
    std::vector<double> logs;
    logs.reserve(t_grid.size());
    for (double t : t_grid) logs.push_back(log_moment(t));
    GrowthFit fit;
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        fit.slopes.push_back((logs[i + 1] - logs[i]) / (t_grid[i + 1] - t_grid[i]));
    fit.exponent = fit.slopes.back();
    fit.error_bar = std::abs(fit.slopes.back() - fit.slopes[fit.slopes.size() - 2]);
    return fit;
}

}  // namespace pam
