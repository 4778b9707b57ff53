// Command-line surface for the moment and Lyapunov-exponent calculators:
// compute moments by any route, emit exponent tables, reproduce the exponent
// figure as CSV + SVG, and run the cross-validation suites.
//
// Exit codes: 0 success, 1 computation failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pamlyap/figure2.hpp"
#include "pamlyap/lyapunov.hpp"
#include "pamlyap/montecarlo.hpp"
#include "pamlyap/oracle.hpp"
#include "pamlyap/partition_expansion.hpp"
#include "pamlyap/quadrature.hpp"
#include "pamlyap/validation.hpp"

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<int> parse_tuple(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw CLI::ValidationError("--n", "empty tuple");
    return out;
}

std::string join_tuple(const std::vector<int>& n) {
    std::ostringstream os;
    for (std::size_t i = 0; i < n.size(); ++i) os << (i ? ";" : "") << n[i];
    return os.str();
}

std::filesystem::path output_dir() {
    if (const char* env = std::getenv("PAMLYAP_OUT")) return env;
    return ".";
}

struct MomentRow {
    std::string route;
    pam::LogComplex value;
    double error_estimate;
};

int cmd_moment(double p, double q, double beta, double t, const std::vector<int>& n,
               const std::vector<std::string>& routes, std::uint64_t seed, int replicas,
               const std::string& out_path) {
    pam::ModelParams params(p, q, beta);
    const int k = static_cast<int>(n.size());
    for (int i = 0; i + 1 < k; ++i)
        if (n[static_cast<std::size_t>(i)] < n[static_cast<std::size_t>(i + 1)])
            throw std::invalid_argument("--n must be weakly decreasing");
    if ((params.one_sided() || k > 2) && n.back() < 0)
        throw std::invalid_argument("--n entries must be >= 0 for this model");
    std::vector<MomentRow> rows;
    for (const std::string& route : routes) {
        if (route == "quadrature") {
            pam::MomentResult r;
            if (params.one_sided() && k >= 1) {
                r = pam::onesided_moment_q(beta, t, pam::OrderedTuple(n));
            } else if (k == 1) {
                r = pam::first_moment_q(params, t, n[0]);
            } else if (k == 2) {
                r = pam::second_moment_q(params, t, {n[0], n[1]});
            } else {
                throw std::invalid_argument("quadrature route: k <= 2 for general (p,q)");
            }
            rows.push_back({route, r.value, r.error_estimate});
        } else if (route == "ode") {
            pam::MomentResult r = pam::ode_moment(params, std::span<const int>(n), t);
            rows.push_back({route, r.value, r.error_estimate});
        } else if (route == "partition") {
            if (!params.one_sided() || beta != 1.0)
                throw std::invalid_argument("partition route: (p,q)=(2,0), beta=1 only");
            bool uniform = true;
            for (int x : n) uniform = uniform && x == n[0];
            if (!uniform)
                throw std::invalid_argument("partition route: equal entries n=(m,...,m) only");
            pam::MomentResult r = pam::mu_via_partitions(
                pam::onesided_weight(t, n[0]), k, pam::partition_contour());
            rows.push_back({route, r.value, r.error_estimate});
        } else if (route == "mc") {
            pam::SimConfig cfg;
            cfg.seed = seed;
            cfg.replicas = replicas;
            pam::McEstimate e = pam::mc_moment(params, t, std::span<const int>(n), cfg);
            rows.push_back({route, pam::LogComplex::from({e.mean, 0.0}),
                            e.std_error / std::abs(e.mean)});
        } else {
            throw CLI::ValidationError("--route", "unknown route '" + route + "'");
        }
    }
    std::ostringstream os;
    os << "p,q,beta,t,n,route,log_value,value,error_estimate\n";
    for (const MomentRow& row : rows) {
        const double linear = row.value.real_part();
        os << fmt(p) << ',' << fmt(q) << ',' << fmt(beta) << ',' << fmt(t) << ','
           << join_tuple(n) << ',' << row.route << ',' << fmt(row.value.log_mag) << ','
           << (std::isfinite(linear) ? fmt(linear) : "inf") << ','
           << fmt(row.error_estimate) << "\n";
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            os << "# rel_diff " << rows[i].route << " vs " << rows[j].route << " = "
               << fmt(pam::rel_diff(rows[i].value, rows[j].value)) << "\n";
    std::cout << os.str();
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << os.str();
    }
    return 0;
}

int cmd_lyapunov(const std::string& model, double nu, double beta, int kmax, bool report) {
    std::ostringstream os;
    if (model == "onesided") {
        os << "model,nu,quantity,value,critical_point,residual\n";
        pam::ExponentResult gt = pam::almost_sure_replica(nu);
        os << "onesided," << fmt(nu) << ",gamma_tilde_1," << fmt(gt.value) << ','
           << fmt(gt.critical_point) << ',' << fmt(gt.residual) << "\n";
        for (int k = 1; k <= kmax; ++k) {
            pam::ExponentResult g = pam::gamma_k_onesided(k, nu);
            os << "onesided," << fmt(nu) << ",gamma_" << k << ',' << fmt(g.value) << ','
               << fmt(g.critical_point) << ',' << fmt(g.residual) << "\n";
        }
    } else if (model == "symmetric") {
        pam::Gamma2General g = pam::gamma2_general(pam::ModelParams(1.0, 1.0, beta));
        os << "model,beta,quantity,value,critical_point,residual\n";
        os << "symmetric," << fmt(beta) << ",gamma_1," << fmt(g.gamma1) << ",,\n";
        os << "symmetric," << fmt(beta) << ",gamma_2," << fmt(g.gamma2.value) << ','
           << fmt(g.gamma2.critical_point) << ',' << fmt(g.gamma2.residual) << "\n";
    } else if (model == "she") {
        os << "model,quantity,value\n";
        for (int k = 1; k <= kmax; ++k)
            os << "she,gamma_" << k << ',' << fmt(pam::she_gamma(k)) << "\n";
    } else {
        throw CLI::ValidationError("--model", "one of: onesided, symmetric, she");
    }
    if (report) {
        pam::ExponentModel m = model == "onesided" ? pam::ExponentModel::onesided
                               : model == "she"    ? pam::ExponentModel::she
                                                   : pam::ExponentModel::symmetric;
        pam::IntermittencyReport rep =
            pam::intermittency_report(model == "symmetric" ? beta : nu, kmax, m);
        os << "# intermittency report (" << (rep.all_strict ? "all strict" : "VIOLATED") << ")\n";
        os << "label,value,margin_to_next,strict\n";
        for (const auto& e : rep.entries)
            os << e.label << ',' << fmt(e.value) << ',' << fmt(e.margin_to_next) << ','
               << (e.strict ? "yes" : "NO") << "\n";
    }
    std::cout << os.str();
    return 0;
}

int cmd_figure2(double nu_min, double nu_max, int points, int kmax,
                std::string csv_path, std::string svg_path) {
    pam::Figure2Data data = pam::compute_figure2(nu_min, nu_max, points, kmax);
    const auto dir = output_dir();
    if (csv_path.empty()) csv_path = (dir / "figure2.csv").string();
    if (svg_path.empty()) svg_path = (dir / "figure2.svg").string();
    {
        std::ofstream f(csv_path);
        if (!f) throw std::runtime_error("cannot write " + csv_path);
        f << pam::figure2_csv(data);
    }
    {
        std::ofstream f(svg_path);
        if (!f) throw std::runtime_error("cannot write " + svg_path);
        f << pam::figure2_svg(data);
    }
    std::cout << "wrote " << csv_path << " and " << svg_path << "\n";
    return 0;
}

int cmd_validate(const std::string& suite) {
    pam::Suite s;
    if (suite == "quick")
        s = pam::Suite::quick;
    else if (suite == "full")
        s = pam::Suite::full;
    else
        throw CLI::ValidationError("--suite", "one of: quick, full");
    auto results = pam::run_acceptance(s, &std::cout);
    int failures = 0;
    for (const auto& r : results)
        if (!r.passed) ++failures;
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << " (" << results.size() << " run)\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment and Lyapunov-exponent calculator for the lattice parabolic Anderson model"};
    app.set_config("--config", "", "flat key=value config file; flags override");
    app.require_subcommand(1);

    // moment
    double p = 1.0, q = 1.0, beta = 1.0, t = 1.0;
    std::string n_str = "0";
    std::vector<std::string> routes{"quadrature"};
    std::uint64_t seed = 2013;
    int replicas = 100000;
    std::string out_path;
    auto* moment = app.add_subcommand("moment", "joint moment E[prod Z(t,n_i)] by selected routes");
    moment->add_option("--p", p, "jump rate to n-1 (p+q=2)");
    moment->add_option("--q", q, "jump rate to n+1");
    moment->add_option("--beta", beta, "noise strength");
    moment->add_option("--t", t, "time");
    moment->add_option("--n", n_str, "tuple n1,n2,... (weakly decreasing)");
    moment->add_option("--route", routes, "quadrature|ode|mc|partition (repeat or comma-separate)")
        ->delimiter(',');
    moment->add_option("--seed", seed, "mc seed");
    moment->add_option("--replicas", replicas, "mc replicas");
    moment->add_option("--out", out_path, "also write the CSV here");

    // lyapunov
    std::string model = "onesided";
    double nu = 1.0;
    int kmax = 5;
    bool report = false;
    auto* lyap = app.add_subcommand("lyapunov", "exponent tables and intermittency report");
    lyap->add_option("--model", model, "onesided|symmetric|she");
    lyap->add_option("--nu", nu, "velocity (onesided)");
    lyap->add_option("--beta", beta, "noise strength (symmetric)");
    lyap->add_option("--kmax", kmax, "highest moment order");
    lyap->add_flag("--report", report, "append the intermittency ordering report");

    // figure2
    double nu_min = 0.05, nu_max = 5.0;
    int points = 100;
    int fig_kmax = 5;
    std::string csv_path, svg_path;
    auto* fig = app.add_subcommand("figure2", "normalized exponent curves vs velocity (CSV + SVG)");
    fig->add_option("--nu-min", nu_min, "grid start (> 0)");
    fig->add_option("--nu-max", nu_max, "grid end (<= 5)");
    fig->add_option("--points", points, "grid points");
    fig->add_option("--kmax", fig_kmax, "highest moment order (<= 8)");
    fig->add_option("--csv", csv_path, "CSV output path (default $PAMLYAP_OUT/figure2.csv)");
    fig->add_option("--svg", svg_path, "SVG output path (default $PAMLYAP_OUT/figure2.svg)");

    // validate
    std::string suite = "quick";
    auto* val = app.add_subcommand("validate", "run the cross-validation suite");
    val->add_option("--suite", suite, "quick|full");

    CLI11_PARSE(app, argc, argv);

    try {
        if (moment->parsed()) return cmd_moment(p, q, beta, t, parse_tuple(n_str), routes, seed,
                                                replicas, out_path);
        if (lyap->parsed()) return cmd_lyapunov(model, nu, beta, kmax, report);
        if (fig->parsed()) return cmd_figure2(nu_min, nu_max, points, fig_kmax, csv_path, svg_path);
        if (val->parsed()) return cmd_validate(suite);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
