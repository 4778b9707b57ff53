#include "pamlyap/validation.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "pamlyap/contour.hpp"
#include "pamlyap/figure2.hpp"
#include "pamlyap/lyapunov.hpp"
#include "pamlyap/montecarlo.hpp"
#include "pamlyap/oracle.hpp"
#include "pamlyap/partition_expansion.hpp"
#include "pamlyap/quadrature.hpp"

namespace pam {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Worst {
    double value = 0.0;
    std::string where;
    void update(double v, const std::string& w) {
        if (v > value) {
            value = v;
            where = w;
        }
    }
};

CriterionResult criterion_1() {
    // second_moment_q vs ode_moment, p=q=1, relative <= 1e-8
    CriterionResult r{1, "route equivalence, two-sided k=2 (quadrature vs ODE)"};
    Worst worst;
    const std::pair<int, int> pairs[] = {{0, 0}, {1, 0}, {2, -1}, {3, 1}};
    for (double beta : {0.5, 1.0, 2.0}) {
        ModelParams params(1.0, 1.0, beta);
        for (double t : {0.5, 1.0, 2.0}) {
            MomentField field = ode_moment_field(params, 2, t, 3);
            for (auto [n1, n2] : pairs) {
                MomentResult quad = second_moment_q(params, t, {n1, n2});
                const int idx[2] = {n1, n2};
                const double ode = field.value(idx);
                const double rel = std::abs(quad.linear() - ode) / std::abs(ode);
                std::ostringstream w;
                w << "beta=" << beta << " t=" << t << " n=(" << n1 << "," << n2 << ")";
                worst.update(rel, w.str());
            }
        }
    }
    r.passed = worst.value <= 1e-8;
    r.detail = "max rel " + fmt(worst.value) + " (<= 1e-8) at " + worst.where;
    return r;
}

CriterionResult criterion_2() {
    CriterionResult r{2, "route equivalence, one-sided k=3 (quadrature vs ODE)"};
    Worst worst;
    const std::vector<std::vector<int>> tuples = {{0, 0, 0}, {1, 1, 0}, {2, 1, 0}};
    ModelParams params(2.0, 0.0, 1.0);
    for (double t : {0.5, 1.0}) {
        MomentField field = ode_moment_field(params, 3, t, 2);
        for (const auto& n : tuples) {
            MomentResult quad = onesided_moment_q(1.0, t, OrderedTuple(n));
            const double ode = field.value(n);
            const double rel = std::abs(quad.linear() - ode) / std::abs(ode);
            std::ostringstream w;
            w << "t=" << t << " n=(" << n[0] << "," << n[1] << "," << n[2] << ")";
            worst.update(rel, w.str());
        }
    }
    r.passed = worst.value <= 1e-6;
    r.detail = "max rel " + fmt(worst.value) + " (<= 1e-6) at " + worst.where;
    return r;
}

CriterionResult criterion_3() {
    CriterionResult r{3, "partition-expansion identity (mu_k = k! sum I_lambda)"};
    Worst worst;
    Contour contour = partition_contour(0.3, 32);
    for (int k = 1; k <= 4; ++k) {
        for (double t : {0.5, 1.0}) {
            for (int m : {0, 1, 2}) {
                LogFn f = onesided_weight(t, static_cast<double>(m));
                MomentResult via = mu_via_partitions(f, k, contour);
                MomentResult direct = mu_direct_nested(f, k);
                const double rel = rel_diff(via.value, direct.value);
                std::ostringstream w;
                w << "k=" << k << " t=" << t << " m=" << m;
                worst.update(rel, w.str());
            }
        }
    }
    r.passed = worst.value <= 1e-8;
    r.detail = "max rel " + fmt(worst.value) + " (<= 1e-8) at " + worst.where;
    return r;
}

CriterionResult criterion_4() {
    CriterionResult r{4, "delta-data recovery at t -> 0"};
    Worst worst;
    const double t = 1e-8;
    auto is_origin = [](std::span<const int> n) {
        for (int x : n)
            if (x != 0) return false;
        return true;
    };
    // one-sided tuples, k <= 3, entries in {0,1,2}
    for (int k = 1; k <= 3; ++k) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur(static_cast<std::size_t>(k));
        auto rec = [&](auto&& self, int pos, int max_entry) -> void {
            if (pos == k) {
                tuples.push_back(cur);
                return;
            }
            for (int v = max_entry; v >= 0; --v) {
                cur[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1, v);
            }
        };
        rec(rec, 0, 2);
        for (const auto& n : tuples) {
            MomentResult q = onesided_moment_q(1.0, t, OrderedTuple(n));
            const double target = is_origin(n) ? 1.0 : 0.0;
            const double err = std::abs(q.linear() - target);
            std::ostringstream w;
            w << "one-sided k=" << k << " n=(";
            for (std::size_t i = 0; i < n.size(); ++i) w << (i ? "," : "") << n[i];
            w << ")";
            worst.update(err, w.str());
        }
    }
    // two-sided pairs, p=q=1
    ModelParams params(1.0, 1.0, 1.0);
    for (int n1 = 0; n1 <= 2; ++n1)
        for (int n2 = 0; n2 <= n1; ++n2) {
            MomentResult q = second_moment_q(params, t, {n1, n2});
            const double target = (n1 == 0 && n2 == 0) ? 1.0 : 0.0;
            std::ostringstream w;
            w << "two-sided n=(" << n1 << "," << n2 << ")";
            worst.update(std::abs(q.linear() - target), w.str());
        }
    r.passed = worst.value <= 1e-6;
    r.detail = "max |err| " + fmt(worst.value) + " (<= 1e-6) at " + worst.where;
    return r;
}

CriterionResult criterion_5() {
    CriterionResult r{5, "closed-form exponents"};
    Worst worst;
    bool pass = true;
    std::ostringstream detail;
    // (a) gamma2_general vs the stated closed form 2(sqrt(4+b^4)-2)
    {
        Worst w2;
        for (double beta : {0.25, 0.5, 1.0, 2.0}) {
            const double got = gamma2_general(ModelParams(1.0, 1.0, beta)).gamma2.value;
            const double stated = 2.0 * (std::sqrt(4.0 + std::pow(beta, 4)) - 2.0);
            w2.update(std::abs(got - stated), "beta=" + fmt(beta));
        }
        const bool ok = w2.value <= 1e-12;
        pass = pass && ok;
        detail << (ok ? "[pass]" : "[FAIL]") << " gamma2_general vs 2(sqrt(4+b^4)-2): max |diff| "
               << fmt(w2.value) << " (<= 1e-12)";
        if (!ok) {
            // measured growth and the solver both give H2(z0) = sqrt(4+b^4)-2;
            // the stated target is exactly twice that (see the solver check below)
            Worst wh;
            for (double beta : {0.25, 0.5, 1.0, 2.0}) {
                const double got = gamma2_general(ModelParams(1.0, 1.0, beta)).gamma2.value;
                const double half = std::sqrt(4.0 + std::pow(beta, 4)) - 2.0;
                wh.update(std::abs(got - half), "beta=" + fmt(beta));
            }
            detail << "; note: |gamma2_general - (sqrt(4+b^4)-2)| max " << fmt(wh.value);
        }
        worst.update(w2.value, "gamma2_general");
    }
    // (b) one-sided gamma_2 closed form
    {
        Worst w2;
        for (double nu : {0.1, 0.5, 1.0, 2.0, 10.0}) {
            const double got = gamma_k_onesided(2, nu).value;
            const double s = std::sqrt(1.0 + nu * nu);
            const double stated = -2.0 + nu + s - nu * std::log(0.5 * nu * (nu + s));
            w2.update(std::abs(got - stated), "nu=" + fmt(nu));
        }
        const bool ok = w2.value <= 1e-12;
        pass = pass && ok;
        detail << "; " << (ok ? "[pass]" : "[FAIL]")
               << " gamma_2(1;nu) closed form: max |diff| " << fmt(w2.value);
    }
    // (c) SHE exponents exact
    {
        bool ok = true;
        for (int k = 1; k <= 8; ++k) {
            const double kk = k;
            if (she_gamma(k) != (kk * kk * kk - kk) / 24.0) ok = false;
        }
        pass = pass && ok;
        detail << "; " << (ok ? "[pass]" : "[FAIL]") << " she_gamma exact k<=8";
    }
    r.passed = pass;
    r.detail = detail.str();
    return r;
}

CriterionResult criterion_6() {
    CriterionResult r{6, "growth-rate validation of the two-sided second-moment exponent"};
    ModelParams params(1.0, 1.0, 1.0);
    auto log_moment = [&](double t) {
        return second_moment_q(params, t, {0, 0}).log_magnitude();
    };
    const double grid[] = {10.0, 20.0, 40.0};
    GrowthFit fit = growth_rate_fit(log_moment, grid);
    const double target = 2.0 * (std::sqrt(5.0) - 2.0);
    const double diff = std::abs(fit.exponent - target);
    r.passed = diff <= 0.03;
    std::ostringstream detail;
    detail << "fit " << fmt(fit.exponent) << " +- " << fmt(fit.error_bar) << " vs target "
           << fmt(target) << ", |diff| " << fmt(diff) << " (<= 0.03)";
    if (!r.passed) {
        const double half_target = std::sqrt(5.0) - 2.0;
        detail << "; vs sqrt(5)-2 = " << fmt(half_target) << ": |diff| "
               << fmt(std::abs(fit.exponent - half_target))
               << " (solver gamma2 = " << fmt(gamma2_general(params).gamma2.value) << ")";
    }
    r.detail = detail.str();
    return r;
}

CriterionResult criterion_7() {
    CriterionResult r{7, "growth-rate validation of one-sided gamma_2, gamma_3 at nu=1"};
    Worst worst;
    const double grid[] = {10.0, 20.0, 40.0};
    for (int k : {2, 3}) {
        const double target = gamma_k_onesided(k, 1.0).value;
        auto log_onesided = [&](double t) {
            const int n = static_cast<int>(std::floor(t));
            OrderedTuple tuple(std::vector<int>(static_cast<std::size_t>(k), n));
            return onesided_moment_q(1.0, t, tuple).log_magnitude();
        };
        GrowthFit fit = growth_rate_fit(log_onesided, grid);
        worst.update(std::abs(fit.exponent - target),
                     "onesided k=" + std::to_string(k) + " fit " + fmt(fit.exponent) +
                         " target " + fmt(target));
        // dominant partition term lambda = (k): 1-d string integral through z0_k
        const double z0 = gamma_k_onesided(k, 1.0).critical_point;
        Contour saddle_circle = Contour::circle({0.0, 0.0}, z0, 64);
        auto log_dominant = [&](double t) {
            const double n = std::floor(t);
            ExpansionTerm term = i_lambda(onesided_weight(t, n),
                                          Partition(std::vector<int>{k}), saddle_circle);
            return term.value.log_mag;
        };
        GrowthFit fit2 = growth_rate_fit(log_dominant, grid);
        worst.update(std::abs(fit2.exponent - target),
                     "lambda=(k) k=" + std::to_string(k) + " fit " + fmt(fit2.exponent) +
                         " target " + fmt(target));
    }
    r.passed = worst.value <= 0.05;
    r.detail = "max |fit - gamma_k| " + fmt(worst.value) + " (<= 0.05) at " + worst.where;
    return r;
}

CriterionResult criterion_8() {
    CriterionResult r{8, "intermittency ordering and partition dominance"};
    Worst violation;  // most negative margin, stored as positive violation
    bool pass = true;
    std::ostringstream detail;
    double min_margin = std::numeric_limits<double>::infinity();
    for (double nu : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        IntermittencyReport rep = intermittency_report(nu, 6, ExponentModel::onesided);
        for (std::size_t i = 0; i + 1 < rep.entries.size(); ++i) {
            min_margin = std::min(min_margin, rep.entries[i].margin_to_next);
            if (!rep.entries[i].strict) {
                pass = false;
                violation.update(-rep.entries[i].margin_to_next,
                                 rep.entries[i].label + " at nu=" + fmt(nu));
            }
        }
        for (int k = 2; k <= 6; ++k) {
            const double gk = gamma_k_onesided(k, nu).value;
            for (const Partition& lambda : enumerate_partitions(k)) {
                if (lambda.length() == 1) continue;
                const double gl = gamma_lambda(lambda, nu);
                if (!(gl < gk)) {
                    pass = false;
                    violation.update(gl - gk, "lambda=" + lambda.to_string() + " nu=" + fmt(nu));
                } else {
                    min_margin = std::min(min_margin, gk - gl);
                }
            }
        }
    }
    r.passed = pass;
    detail << "all orderings strict; min positive margin " << fmt(min_margin);
    if (!pass) detail << "; worst violation " << fmt(violation.value) << " at " << violation.where;
    r.detail = detail.str();
    return r;
}

CriterionResult criterion_9() {
    CriterionResult r{9, "Monte Carlo consistency (field SDE and pinned walk)"};
    ModelParams params(1.0, 1.0, 1.0);
    const double t = 1.0;
    const double reference = second_moment_q(params, t, {0, 0}).linear();
    SimConfig cfg;
    cfg.replicas = 100000;
    cfg.seed = 2013;
    const int n[2] = {0, 0};
    McEstimate mc = mc_moment(params, t, n, cfg);
    PinnedWalkResult pw = pinned_walk_second_moment(params, t, 0, cfg);
    const double mc_sigmas = std::abs(mc.mean - reference) / mc.std_error;
    const double pw_sigmas = std::abs(pw.moment.mean - reference) / pw.moment.std_error;
    r.passed = mc_sigmas <= 3.0 && pw_sigmas <= 3.0 && mc.clipped == 0;
    std::ostringstream detail;
    detail << "mc " << fmt(mc.mean) << " +- " << fmt(mc.std_error) << " (" << fmt(mc_sigmas)
           << " SE), pinned-walk " << fmt(pw.moment.mean) << " +- " << fmt(pw.moment.std_error)
           << " (" << fmt(pw_sigmas) << " SE) vs quadrature " << fmt(reference)
           << "; clips " << mc.clipped;
    r.detail = detail.str();
    return r;
}

CriterionResult criterion_10() {
    CriterionResult r{10, "SHE spot checks (heat kernel and residue reduction)"};
    Worst worst;
    bool pass = true;
    for (double t : {0.5, 1.0, 2.0}) {
        const double x[] = {0.0};
        MomentResult q = she_moment_q(t, x, 1.0);
        const double kernel = 1.0 / std::sqrt(2.0 * std::numbers::pi * t);
        const double rel = std::abs(q.linear() - kernel) / kernel;
        worst.update(rel, "k=1 t=" + fmt(t));
        if (rel > 1e-8) pass = false;
    }
    {
        const double x[] = {0.0, 0.0};
        MomentResult q = she_moment_q(1.0, x, 1.0);
        const double oracle = she_moment_k2_residue_oracle(1.0, 1.0);
        const double rel = std::abs(q.linear() - oracle) / std::abs(oracle);
        worst.update(rel, "k=2 t=1");
        if (rel > 1e-6) pass = false;
    }
    r.passed = pass;
    r.detail = "max rel " + fmt(worst.value) + " (k=1 <= 1e-8, k=2 <= 1e-6) at " + worst.where;
    return r;
}

CriterionResult criterion_11() {
    CriterionResult r{11, "figure-2 reproduction (ordering, normalization, determinism)"};
    Figure2Data data = compute_figure2(0.05, 5.0, 100, 5);
    bool pass = true;
    std::string where;
    for (std::size_t i = 0; i < data.nu.size(); ++i) {
        double prev = data.gamma_tilde_norm[i];
        if (!(prev < 0.0)) {
            pass = false;
            where = "gamma_tilde >= 0 at nu=" + fmt(data.nu[i]);
            break;
        }
        double last = 0.0;  // gamma_1 normalized
        if (!(prev < last)) {
            pass = false;
            where = "ordering at nu=" + fmt(data.nu[i]);
            break;
        }
        for (const auto& curve : data.gamma_over_k_norm) {
            if (!(curve[i] > last)) {
                pass = false;
                where = "curve ordering at nu=" + fmt(data.nu[i]);
                break;
            }
            last = curve[i];
        }
        if (!pass) break;
    }
    const std::string csv_a = figure2_csv(data);
    const std::string csv_b = figure2_csv(compute_figure2(0.05, 5.0, 100, 5));
    if (csv_a != csv_b) {
        pass = false;
        where = "CSV not byte-deterministic";
    }
    r.passed = pass;
    r.detail = pass ? "curves ordered at all 100 grid points; CSV byte-identical across runs"
                    : where;
    return r;
}

}  // namespace

double she_moment_k2_residue_oracle(double t, double beta) {
    // upward vertical line through b^2/2; residue of the cross factor at
    // z1 = z2 + b^2 is b^2, leaving one 1-d integral plus the coincident
    // double integral
    const double b2 = beta * beta;
    const double a = 0.5 * b2;
    const double Y = std::sqrt(2.0 * (std::log(1e16) + t * 8.0) / t);
    const int N = 4001;
    const double dy = 2.0 * Y / (N - 1);
    std::vector<std::complex<double>> z(N);
    std::vector<double> w(N, 1.0);
    w[0] = w[static_cast<std::size_t>(N - 1)] = 0.5;
    for (int j = 0; j < N; ++j) z[static_cast<std::size_t>(j)] = {a, -Y + dy * j};
    std::complex<double> residue_term{0.0, 0.0};
    for (int j = 0; j < N; ++j) {
        const auto zj = z[static_cast<std::size_t>(j)];
        residue_term += w[static_cast<std::size_t>(j)] * b2 *
                        std::exp(0.5 * t * ((zj + b2) * (zj + b2) + zj * zj));
    }
    residue_term *= dy / (2.0 * std::numbers::pi);
    std::complex<double> dbl{0.0, 0.0};
    for (int i = 0; i < N; ++i) {
        const auto zi = z[static_cast<std::size_t>(i)];
        const std::complex<double> ei = std::exp(0.5 * t * zi * zi);
        std::complex<double> row{0.0, 0.0};
        for (int j = 0; j < N; ++j) {
            const auto zj = z[static_cast<std::size_t>(j)];
            const std::complex<double> d = zi - zj;
            row += w[static_cast<std::size_t>(j)] * d / (d - b2) * std::exp(0.5 * t * zj * zj);
        }
        dbl += w[static_cast<std::size_t>(i)] * ei * row;
    }
    dbl *= (dy / (2.0 * std::numbers::pi)) * (dy / (2.0 * std::numbers::pi));
    return (dbl + residue_term).real();
}

std::vector<CriterionResult> run_acceptance(Suite suite, std::ostream* progress) {
    using Fn = CriterionResult (*)();
    struct Entry {
        int id;
        const char* name;
        Fn fn;
        bool quick;
    };
    const Entry entries[] = {
        {1, "route equivalence, two-sided k=2", criterion_1, true},
        {2, "route equivalence, one-sided k=3", criterion_2, false},
        {3, "partition-expansion identity", criterion_3, false},
        {4, "delta-data recovery", criterion_4, true},
        {5, "closed-form exponents", criterion_5, true},
        {6, "growth fit, two-sided gamma_2", criterion_6, false},
        {7, "growth fit, one-sided gamma_2/gamma_3", criterion_7, false},
        {8, "intermittency ordering", criterion_8, true},
        {9, "Monte Carlo consistency", criterion_9, false},
        {10, "SHE spot checks", criterion_10, true},
        {11, "figure-2 reproduction", criterion_11, true},
    };
    std::vector<CriterionResult> results;
    for (const Entry& e : entries) {
        if (suite == Suite::quick && !e.quick) continue;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = e.fn();
        } catch (const std::exception& ex) {
            res.id = e.id;
            res.name = e.name;
            res.passed = false;
            res.detail = std::string("exception: ") + ex.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (progress) {
            (*progress) << "[" << (res.passed ? "PASS" : "FAIL") << "] criterion " << res.id
                        << ": " << res.name << " -- " << res.detail << " ["
                        << fmt(res.seconds) << "s]\n"
                        << std::flush;
        }
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace pam
