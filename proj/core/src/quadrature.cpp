#include "pamlyap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pamlyap/lattice.hpp"

namespace pam {

namespace {

double default_delta(double beta, const QuadratureOptions& opts) {
    if (opts.onesided_delta > 0.0) return opts.onesided_delta;
    return 0.1 * std::max(1.0, beta * beta);
}

// A(z) = p z - q/z; the two-point cross factor is (A(z1)-A(z2)) / (A(z1)-A(z2)-2b^2)
std::complex<double> two_point_A(const ModelParams& params, std::complex<double> z) {
    return params.p() * z - params.q() / z;
}

}  // namespace

ContourPlan ContourPlan::one_sided(double beta, int k, const QuadratureOptions& opts) {
    if (k < 1 || k > 5) throw std::invalid_argument("one_sided plan: 1 <= k <= 5");
    const double b2 = beta * beta;
    const double delta = default_delta(beta, opts);
    ContourPlan plan;
    plan.margin = delta;
    for (int j = 1; j <= k; ++j) {
        const double r = opts.onesided_r0 + (k - j) * (b2 + delta);
        // stagger grids so distinct variables never share a node angle
        plan.contours.push_back(
            Contour::circle({0.0, 0.0}, r, opts.initial_nodes, 0.31 * (j - 1)));
    }
    return plan;
}

ContourPlan ContourPlan::two_point(const ModelParams& params, const QuadratureOptions& opts) {
    const double p = params.p(), q = params.q(), b2 = params.beta2();
    if (params.one_sided()) {
        // unit-circle prescription degenerates as q -> 0; eq. (1.6)-style nesting applies
        ContourPlan plan = one_sided(params.beta(), 2, opts);
        return plan;
    }
    // z2-poles solve p w^2 - (p z1 - q/z1 - 2 b^2) w - q = 0; every root must
    // clear 1.25 r2 for every z1 on the unit circle
    double r2 = 0.5;
    constexpr int kProbe = 2048;
    while (true) {
        double min_root = std::numeric_limits<double>::infinity();
        std::complex<double> worst_z1, worst_root;
        for (int j = 0; j < kProbe; ++j) {
            const double th = 2.0 * std::numbers::pi * j / kProbe;
            const std::complex<double> z1 = std::polar(1.0, th);
            const std::complex<double> b = two_point_A(params, z1) - 2.0 * b2;
            const std::complex<double> disc = std::sqrt(b * b + 4.0 * p * q);
            for (const auto& root : {(b + disc) / (2.0 * p), (b - disc) / (2.0 * p)}) {
                const double m = std::abs(root);
                if (m < min_root) {
                    min_root = m;
                    worst_z1 = z1;
                    worst_root = root;
                }
            }
        }
        if (min_root > 1.25 * r2) {
            ContourPlan plan;
            plan.margin = min_root - r2;
            plan.contours.push_back(Contour::circle({0.0, 0.0}, 1.0, opts.initial_nodes));
            plan.contours.push_back(Contour::circle({0.0, 0.0}, r2, opts.initial_nodes, 0.5));
            return plan;
        }
        r2 *= 0.5;
        if (r2 < 1e-3) {
            std::ostringstream os;
            os << "pole separation failure: z2-pole " << worst_root << " at z1 " << worst_z1
               << " (|pole| " << min_root << ") blocks every admissible r2";
            throw ComputationError(os.str());
        }
    }
}

ContourPlan ContourPlan::she(double beta, int k, double t, const QuadratureOptions& opts) {
    if (k < 1 || k > 4) throw std::invalid_argument("she plan: 1 <= k <= 4");
    if (!(t > 0.0)) throw std::invalid_argument("she plan: t > 0 required");
    const double b2 = beta * beta;
    ContourPlan plan;
    double alpha_max = 0.0;
    for (int j = 1; j <= k; ++j) alpha_max = std::max(alpha_max, (k - j) * 1.25 + 0.5);
    const double Y =
        std::sqrt(2.0 * (std::log(1.0 / opts.tail_tol) + t * alpha_max * alpha_max) / t);
    plan.margin = 0.25 * b2;  // consecutive abscissa gaps are 1.25 b^2 vs the b^2 shift
    for (int j = 1; j <= k; ++j) {
        const double alpha = (k - j) * 1.25 + 0.5;
        plan.contours.push_back(Contour::vertical_line(b2 * alpha, Y, std::max(64, opts.initial_nodes)));
    }
    return plan;
}

namespace {

MomentResult run_onesided_like(const ContourPlan& plan, double beta2, double t,
                               std::span<const int> n, double rel_tol, int init_nodes,
                               int cap, std::vector<double>* conv_log) {
    const ModelParams onesided_params(2.0, 0.0, std::sqrt(beta2));
    auto axis = [&](int a, std::complex<double> z) {
        // F^{2,0}_{t,n_a}(z) / z
        LogComplex f = eval_F_log(z, t, n[static_cast<std::size_t>(a)], onesided_params);
        return f / LogComplex::from(z);
    };
    auto cross = [beta2](std::complex<double> za, std::complex<double> zb) {
        const std::complex<double> d = za - zb;
        return d / (d - beta2);
    };
    auto out = detail::converge(plan.contours, axis, cross, rel_tol, init_nodes, cap, conv_log);
    MomentResult r;
    r.value = out.value;
    r.method = Method::quadrature;
    r.error_estimate = out.error_estimate;
    return r;
}

}  // namespace

MomentResult first_moment_q(const ModelParams& params, double t, int n,
                            const QuadratureOptions& opts) {
    if (t < 0.0) throw std::invalid_argument("first_moment_q: t >= 0");
    const double tol = opts.rel_tol > 0 ? opts.rel_tol : 1e-12;
    const int cap = opts.max_nodes > 0 ? opts.max_nodes : (1 << 20);
    std::vector<Contour> cs{Contour::circle({0.0, 0.0}, 1.0, opts.initial_nodes)};
    auto axis = [&](int, std::complex<double> z) {
        return eval_F_log(z, t, n, params) / LogComplex::from(z);
    };
    auto cross = [](std::complex<double>, std::complex<double>) {
        return std::complex<double>{1.0, 0.0};
    };
    auto out = detail::converge(cs, axis, cross, tol, opts.initial_nodes, cap,
                                opts.convergence_log);
    return {out.value, Method::quadrature, out.error_estimate};
}

MomentResult second_moment_q(const ModelParams& params, double t, const OrderedPair& n,
                             const QuadratureOptions& opts) {
    return two_point_formula(params, t, n.n1, n.n2, opts);
}

MomentResult two_point_formula(const ModelParams& params, double t, int n1, int n2,
                               const QuadratureOptions& opts) {
    if (t < 0.0) throw std::invalid_argument("second_moment_q: t >= 0");
    if (params.beta() == 0.0) {
        // noise-free factorization: cross factor -> 1
        MomentResult a = first_moment_q(params, t, n1, opts);
        MomentResult b = first_moment_q(params, t, n2, opts);
        return {a.value * b.value, Method::quadrature, a.error_estimate + b.error_estimate};
    }
    const double tol = opts.rel_tol > 0 ? opts.rel_tol : 1e-10;
    const int cap = opts.max_nodes > 0 ? opts.max_nodes : (1 << 20);
    ContourPlan plan = ContourPlan::two_point(params, opts);
    const int nn[2] = {n1, n2};
    if (params.one_sided()) {
        return run_onesided_like(plan, params.beta2(), t, std::span<const int>(nn, 2), tol,
                                 opts.initial_nodes, cap, opts.convergence_log);
    }
    const double b2 = params.beta2();
    auto axis = [&](int a, std::complex<double> z) {
        return eval_F_log(z, t, nn[a], params) / LogComplex::from(z);
    };
    auto cross = [&params, b2](std::complex<double> za, std::complex<double> zb) {
        const std::complex<double> d = two_point_A(params, za) - two_point_A(params, zb);
        return d / (d - 2.0 * b2);
    };
    auto out = detail::converge(plan.contours, axis, cross, tol, opts.initial_nodes, cap,
                                opts.convergence_log);
    return {out.value, Method::quadrature, out.error_estimate};
}

MomentResult onesided_moment_q(double beta, double t, const OrderedTuple& n,
                               const QuadratureOptions& opts) {
    return onesided_formula(beta, t, n.entries(), opts);
}

MomentResult onesided_formula(double beta, double t, std::span<const int> n,
                              const QuadratureOptions& opts) {
    if (!(beta > 0.0)) throw std::invalid_argument("onesided_moment_q: beta > 0");
    if (t < 0.0) throw std::invalid_argument("onesided_moment_q: t >= 0");
    const int k = static_cast<int>(n.size());
    if (k > 5) throw std::invalid_argument("onesided_moment_q: k <= 5 (cost grows as N^k)");
    const double tol = opts.rel_tol > 0 ? opts.rel_tol : (k <= 2 ? 1e-10 : 1e-8);
    const int cap = opts.max_nodes > 0 ? opts.max_nodes : (k <= 2 ? (1 << 20) : (1 << 12));
    ContourPlan plan = ContourPlan::one_sided(beta, k, opts);
    return run_onesided_like(plan, beta * beta, t, n, tol, opts.initial_nodes, cap,
                             opts.convergence_log);
}

MomentResult she_moment_q(double t, std::span<const double> x, double beta,
                          const QuadratureOptions& opts) {
    const int k = static_cast<int>(x.size());
    if (k < 1 || k > 4) throw std::invalid_argument("she_moment_q: 1 <= k <= 4");
    for (int i = 0; i + 1 < k; ++i)
        if (x[static_cast<std::size_t>(i)] > x[static_cast<std::size_t>(i + 1)])
            throw std::invalid_argument("she_moment_q: x must be weakly increasing");
    if (!(t > 0.0)) throw std::invalid_argument("she_moment_q: t > 0 required");
    const double tol = opts.rel_tol > 0 ? opts.rel_tol : 1e-9;
    const int cap = opts.max_nodes > 0 ? opts.max_nodes : (k <= 2 ? (1 << 16) : (1 << 12));
    ContourPlan plan = ContourPlan::she(beta, k, t, opts);
    const double b2 = beta * beta;
    auto axis = [&](int a, std::complex<double> z) {
        // exp((t/2) z^2 + x_a z) on the vertical line
        const std::complex<double> w = 0.5 * t * z * z + x[static_cast<std::size_t>(a)] * z;
        return LogComplex::from_log(w.real(), w.imag());
    };
    auto cross = [b2](std::complex<double> za, std::complex<double> zb) {
        const std::complex<double> d = za - zb;
        return d / (d - b2);
    };
    auto out = detail::converge(plan.contours, axis, cross, tol,
                                std::max(64, opts.initial_nodes), cap, opts.convergence_log);
    return {out.value, Method::quadrature, out.error_estimate};
}

}  // namespace pam
