#include "pamlyap/partition_expansion.hpp"

#include <cmath>

#include "pamlyap/lyapunov.hpp"

namespace pam {

LogFn onesided_weight(double t, double n) {
    return [t, n](std::complex<double> z) {
        const double log_mag = t * (z.real() - 1.0) - (n + 1.0) * std::log(std::abs(z));
        const double phase = t * z.imag() - (n + 1.0) * std::arg(z);
        return LogComplex::from_log(log_mag, phase);
    };
}

Contour partition_contour(double radius, int nodes) {
    if (!(radius > 0.0) || radius >= 0.5)
        throw std::invalid_argument("partition_contour: 0 < radius < 1/2 keeps the kernel pole-free");
    return Contour::circle({0.0, 0.0}, radius, nodes);
}

namespace {

// cofactor expansion; matrices stay tiny (ell(lambda) <= 6 in practice)
std::complex<double> det_small(const std::vector<std::complex<double>>& m, int n) {
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    std::complex<double> sum{0.0, 0.0};
    std::vector<std::complex<double>> minor(static_cast<std::size_t>((n - 1) * (n - 1)));
    for (int j = 0; j < n; ++j) {
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[static_cast<std::size_t>((r - 1) * (n - 1) + cc)] =
                    m[static_cast<std::size_t>(r * n + c)];
                ++cc;
            }
        }
        const std::complex<double> cof = det_small(minor, n - 1);
        const std::complex<double> term = m[static_cast<std::size_t>(j)] * cof;
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

}  // namespace

ExpansionTerm i_lambda(const LogFn& f, const Partition& lambda, const Contour& contour,
                       const QuadratureOptions& opts) {
    if (contour.kind() != Contour::Kind::circle)
        throw std::invalid_argument("i_lambda: common contour must be a circle");
    const int ell = lambda.length();
    const auto& parts = lambda.parts();
    const double tol = opts.rel_tol > 0 ? opts.rel_tol : 1e-9;
    const int cap = opts.max_nodes > 0 ? opts.max_nodes
                                       : (ell <= 2 ? (1 << 14) : (ell == 3 ? (1 << 12) : 512));

    // string product f(w) f(w+1) ... f(w+lambda_a-1) in log form
    auto axis = [&](int a, std::complex<double> w) {
        LogComplex s = LogComplex::from_log(0.0, 0.0);
        for (int step = 0; step < parts[static_cast<std::size_t>(a)]; ++step)
            s = s * f(w + static_cast<double>(step));
        return s;
    };
    // The determinant couples all variables at once, so this runs its own
    // odometer instead of ProductQuadrature's pairwise cross factor. Grids of
    // distinct variables are staggered by v/ell of a node spacing.
    LogComplex prev;
    bool have_prev = false;
    double err_est = 0.0;
    double prev_change = -1.0;
    int used_nodes = 0;
    for (int nodes = std::max(16, opts.initial_nodes / 2);; nodes *= 2) {
        if (nodes > cap)
            throw ComputationError("i_lambda: no convergence at node cap for lambda = " +
                                   lambda.to_string());
        std::vector<Contour> cs;
        for (int v = 0; v < ell; ++v)
            cs.push_back(Contour::circle(contour.center(), contour.radius(), nodes,
                                         static_cast<double>(v) / ell));
        // per-axis tables
        std::vector<std::vector<LogComplex>> fax(static_cast<std::size_t>(ell));
        std::vector<std::vector<std::complex<double>>> zs(static_cast<std::size_t>(ell));
        for (int v = 0; v < ell; ++v) {
            for (int j = 0; j < nodes; ++j) {
                const std::complex<double> w = cs[static_cast<std::size_t>(v)].node(j);
                zs[static_cast<std::size_t>(v)].push_back(w);
                fax[static_cast<std::size_t>(v)].push_back(
                    axis(v, w) * LogComplex::from(cs[static_cast<std::size_t>(v)].measure(j)));
            }
        }
        LogAccumulator acc;
        std::vector<int> idx(static_cast<std::size_t>(ell), 0);
        std::vector<std::complex<double>> w_cur(static_cast<std::size_t>(ell));
        std::vector<std::complex<double>> mat(static_cast<std::size_t>(ell * ell));
        while (true) {
            double scale = 0.0;
            std::complex<double> unit{1.0, 0.0};
            for (int v = 0; v < ell; ++v) {
                const LogComplex& fv =
                    fax[static_cast<std::size_t>(v)][static_cast<std::size_t>(idx[static_cast<std::size_t>(v)])];
                scale += fv.log_mag;
                unit *= std::polar(1.0, fv.phase);
                w_cur[static_cast<std::size_t>(v)] =
                    zs[static_cast<std::size_t>(v)][static_cast<std::size_t>(idx[static_cast<std::size_t>(v)])];
            }
            for (int i = 0; i < ell; ++i)
                for (int j = 0; j < ell; ++j)
                    mat[static_cast<std::size_t>(i * ell + j)] =
                        1.0 / (static_cast<double>(parts[static_cast<std::size_t>(i)]) +
                               w_cur[static_cast<std::size_t>(i)] - w_cur[static_cast<std::size_t>(j)]);
            acc.add(unit * det_small(mat, ell), scale);
            int d = ell - 1;
            while (d >= 0 && ++idx[static_cast<std::size_t>(d)] >= nodes) {
                idx[static_cast<std::size_t>(d)] = 0;
                --d;
            }
            if (d < 0) break;
        }
        LogComplex cur = acc.result();
        used_nodes = nodes;
        if (have_prev) {
            const double change = rel_diff(cur, prev);
            if (opts.convergence_log) opts.convergence_log->push_back(change);
            const double floor_rel =
                cur.is_zero() ? 0.0
                              : std::exp(acc.max_log_scale() +
                                         0.5 * ell * std::log(static_cast<double>(nodes)) -
                                         cur.log_mag) * 1e-16;
            const double ratio = prev_change > 0.0 ? change / prev_change : 1.0;
            const double remainder = (ratio <= 0.1) ? change * ratio : change;
            if (remainder <= tol || change <= 30.0 * floor_rel) {
                prev = cur;
                err_est = std::max(remainder, floor_rel);
                break;
            }
            prev_change = change;
        }
        prev = cur;
        have_prev = true;
    }
    const double sym = lambda.symmetry_factor();
    ExpansionTerm term{lambda, prev.scaled(std::log(sym)), sym, contour.radius(), err_est};
    (void)used_nodes;
    return term;
}

MomentResult mu_via_partitions(const LogFn& f, int k, const Contour& contour,
                               const QuadratureOptions& opts) {
    if (k < 1 || k > 5) throw std::invalid_argument("mu_via_partitions: 1 <= k <= 5");
    LogAccumulator acc;
    double err = 0.0;
    for (const Partition& lambda : enumerate_partitions(k)) {
        ExpansionTerm term = i_lambda(f, lambda, contour, opts);
        acc.add(term.value);
        err = std::max(err, term.error_estimate);
    }
    double log_kfact = 0.0;
    for (int j = 2; j <= k; ++j) log_kfact += std::log(static_cast<double>(j));
    MomentResult r;
    r.value = acc.result().scaled(log_kfact);
    r.method = Method::partition;
    r.error_estimate = err;
    return r;
}

MomentResult mu_direct_nested(const LogFn& f, int k, const QuadratureOptions& opts) {
    if (k < 1 || k > 5) throw std::invalid_argument("mu_direct_nested: 1 <= k <= 5");
    // nested circles shifted by 1: r_j = r0 + (k-j)(1 + delta)
    const double r0 = 0.5, delta = 0.6;
    std::vector<Contour> contours;
    for (int j = 1; j <= k; ++j)
        contours.push_back(Contour::circle({0.0, 0.0}, r0 + (k - j) * (1.0 + delta),
                                           opts.initial_nodes, 0.31 * (j - 1)));
    auto axis = [&](int, std::complex<double> z) { return f(z); };
    auto cross = [](std::complex<double> za, std::complex<double> zb) {
        const std::complex<double> d = za - zb;
        return d / (d - 1.0);
    };
    const double tol = opts.rel_tol > 0 ? opts.rel_tol : 1e-9;
    const int cap = opts.max_nodes > 0 ? opts.max_nodes : (k <= 2 ? (1 << 14) : (1 << 10));
    auto out = detail::converge(contours, axis, cross, tol, opts.initial_nodes, cap,
                                opts.convergence_log);
    return {out.value, Method::quadrature, out.error_estimate};
}

double gamma_lambda(const Partition& lambda, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("gamma_lambda: nu > 0");
    double sum = 0.0;
    for (int part : lambda.parts()) sum += gamma_k_onesided(part, nu).value;
    return sum;
}

}  // namespace pam
