#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "pamlyap/contour.hpp"
#include "pamlyap/log_domain.hpp"
#include "pamlyap/types.hpp"

namespace pam {

struct QuadratureOptions {
    double rel_tol = -1.0;     // -1: per-operation default
    int initial_nodes = 32;
    int max_nodes = -1;        // -1: per-operation default cap
    double tail_tol = 1e-14;   // vertical-line Gaussian truncation
    double onesided_r0 = 0.5;  // innermost nested-circle radius
    double onesided_delta = -1.0;  // nesting margin; -1: 0.1 * max(1, beta^2)
    // |I_2N - I_N| relative change per doubling, appended if non-null
    std::vector<double>* convergence_log = nullptr;
};

// Per-variable contours for a nested-contour integral, outermost first.
struct ContourPlan {
    std::vector<Contour> contours;
    double margin = 0.0;  // guaranteed pole distance of the cross-factor denominators

    // circles r_j = r0 + (k-j)(b^2 + delta), j = 1..k: r_a > r_b + b^2 for a < b
    static ContourPlan one_sided(double beta, int k, const QuadratureOptions& opts = {});
    // z1 on the unit circle; r2 halved from 1/2 until every z2-pole of the
    // two-point integrand clears 1.25 * r2 (floor 1e-3, then failure)
    static ContourPlan two_point(const ModelParams& params, const QuadratureOptions& opts = {});
    // vertical lines at b^2 alpha_j, alpha_j = (k-j) 1.25 + 1/2, half-height from tail_tol
    static ContourPlan she(double beta, int k, double t, const QuadratureOptions& opts = {});
};

// E[Z(t,n)] by trapezoid quadrature of F^{p,q}_{t,n} on the unit circle.
MomentResult first_moment_q(const ModelParams& params, double t, int n,
                            const QuadratureOptions& opts = {});

// Two-point moment by iterated quadrature of the cross-factor integrand;
// n1 >= n2, either sign. beta = 0 factorizes into first moments.
MomentResult second_moment_q(const ModelParams& params, double t, const OrderedPair& n,
                             const QuadratureOptions& opts = {});

// The two-point integrand evaluated as written, n1 attached to the outer
// (unit-circle) variable and n2 to the inner one, for arbitrary integers.
// The moment interpretation needs n1 >= n2; the off-cone values are what the
// boundary relation T_beta u = 0 is about.
MomentResult two_point_formula(const ModelParams& params, double t, int n1, int n2,
                               const QuadratureOptions& opts = {});

// k-point one-sided ((p,q) = (2,0)) moment on nested circles, k <= 5.
MomentResult onesided_moment_q(double beta, double t, const OrderedTuple& n,
                               const QuadratureOptions& opts = {});

// Nested-circle integrand as written for arbitrary integer tuples (slot i
// bound to contour i); off-cone values feed the one-sided boundary check.
MomentResult onesided_formula(double beta, double t, std::span<const int> n,
                              const QuadratureOptions& opts = {});

// Continuum (SHE) k-point moment on truncated vertical lines;
// x weakly increasing, k <= 4.
MomentResult she_moment_q(double t, std::span<const double> x, double beta,
                          const QuadratureOptions& opts = {});

namespace detail {

// log-domain trapezoid quadrature over a product of contours:
//   sum over nodes of  prod_a axis(a, z_a) * prod_{a<b} cross(z_a, z_b) * measures.
// axis returns a LogComplex (log scale + phase); cross is an O(1) linear factor.
// Accumulation order is lexicographic in the node multi-index.
template <typename AxisFn, typename CrossFn>
struct ProductQuadrature {
    std::span<const Contour> contours;
    const AxisFn& axis;
    const CrossFn& cross;

    LogComplex run(double* max_scale_out = nullptr) const {
        const int k = static_cast<int>(contours.size());
        // per-axis tables: node, log scale, unit factor e^{i phase}
        std::vector<std::vector<double>> scales(static_cast<std::size_t>(k));
        std::vector<std::vector<std::complex<double>>> units(static_cast<std::size_t>(k));
        std::vector<std::vector<std::complex<double>>> nodes(static_cast<std::size_t>(k));
        for (int a = 0; a < k; ++a) {
            const auto& c = contours[static_cast<std::size_t>(a)];
            const auto n = static_cast<std::size_t>(c.node_count());
            scales[static_cast<std::size_t>(a)].reserve(n);
            units[static_cast<std::size_t>(a)].reserve(n);
            nodes[static_cast<std::size_t>(a)].reserve(n);
            for (int j = 0; j < c.node_count(); ++j) {
                const std::complex<double> z = c.node(j);
                const LogComplex f = axis(a, z) * LogComplex::from(c.measure(j));
                nodes[static_cast<std::size_t>(a)].push_back(z);
                scales[static_cast<std::size_t>(a)].push_back(f.log_mag);
                units[static_cast<std::size_t>(a)].push_back(std::polar(1.0, f.phase));
            }
        }
        LogAccumulator acc;
        // depth-first odometer; cross_stack carries both the pairwise cross
        // factors and the per-axis unit phases
        std::vector<int> idx(static_cast<std::size_t>(k), 0);
        std::vector<std::complex<double>> cross_stack(static_cast<std::size_t>(k), {1.0, 0.0});
        std::vector<double> scale_stack(static_cast<std::size_t>(k), 0.0);
        std::vector<std::complex<double>> zs(static_cast<std::size_t>(k));
        int depth = 0;
        while (true) {
            if (depth == k) {
                acc.add(cross_stack[static_cast<std::size_t>(k - 1)],
                        scale_stack[static_cast<std::size_t>(k - 1)]);
                --depth;
                if (k == 0) break;
                ++idx[static_cast<std::size_t>(depth)];
            }
            while (depth >= 0 &&
                   idx[static_cast<std::size_t>(depth)] >=
                       contours[static_cast<std::size_t>(depth)].node_count()) {
                idx[static_cast<std::size_t>(depth)] = 0;
                --depth;
                if (depth >= 0) ++idx[static_cast<std::size_t>(depth)];
            }
            if (depth < 0) break;
            const auto d = static_cast<std::size_t>(depth);
            const auto j = static_cast<std::size_t>(idx[d]);
            zs[d] = nodes[d][j];
            std::complex<double> cr = units[d][j];
            for (int b = 0; b < depth; ++b)
                cr *= cross(zs[static_cast<std::size_t>(b)], zs[d]);
            if (depth == 0) {
                cross_stack[0] = cr;
                scale_stack[0] = scales[0][j];
            } else {
                cross_stack[d] = cross_stack[d - 1] * cr;
                scale_stack[d] = scale_stack[d - 1] + scales[d][j];
            }
            ++depth;
        }
        if (max_scale_out) *max_scale_out = acc.max_log_scale();
        return acc.result();
    }
};

struct ConvergedValue {
    LogComplex value;
    double error_estimate;  // relative: extrapolated remainder plus roundoff floor
    int nodes_per_axis;
};

// Node-doubling driver. Stops when the relative change drops below rel_tol,
// when the extrapolated remainder does (clean geometric decay lets one
// doubling be saved), or when the change reaches the roundoff floor
// exp(max_scale - log|I|) * eps (cancellation plateau). Throws at the cap.
template <typename AxisFn, typename CrossFn>
ConvergedValue converge(std::vector<Contour> contours, const AxisFn& axis, const CrossFn& cross,
                        double rel_tol, int initial_nodes, int max_nodes,
                        std::vector<double>* convergence_log) {
    auto with_nodes = [&](int n) {
        std::vector<Contour> cs;
        cs.reserve(contours.size());
        for (const auto& c : contours) cs.push_back(c.with_nodes(n));
        return cs;
    };
    int n = initial_nodes;
    auto cur_contours = with_nodes(n);
    double max_scale = 0.0;
    ProductQuadrature<AxisFn, CrossFn> q0{cur_contours, axis, cross};
    LogComplex prev = q0.run(&max_scale);
    double prev_change = -1.0;
    while (true) {
        n *= 2;
        if (n > max_nodes)
            throw ComputationError(
                "quadrature did not converge at node cap " + std::to_string(max_nodes) +
                "; last iterates log|I| = " + std::to_string(prev.log_mag));
        cur_contours = with_nodes(n);
        ProductQuadrature<AxisFn, CrossFn> q{cur_contours, axis, cross};
        LogComplex cur = q.run(&max_scale);
        const double change = rel_diff(cur, prev);
        if (convergence_log) convergence_log->push_back(change);
        const double k_axes = static_cast<double>(contours.size());
        const double floor_rel =
            cur.is_zero() ? 0.0
                          : std::exp(max_scale + 0.5 * k_axes * std::log(static_cast<double>(n)) -
                                     cur.log_mag) * 1e-16;
        // remainder of the finer grid, extrapolated from the measured decay
        const double ratio = prev_change > 0.0 ? change / prev_change : 1.0;
        const double remainder = (ratio <= 0.1) ? change * ratio : change;
        if (remainder <= rel_tol || change <= 30.0 * floor_rel)
            return {cur, std::max(remainder, floor_rel), n};
        prev = cur;
        prev_change = change;
    }
}

}  // namespace detail

}  // namespace pam
