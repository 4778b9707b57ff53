#include "pamlyap/figure2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "pamlyap/lyapunov.hpp"

namespace pam {

namespace {
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

Figure2Data compute_figure2(double nu_lo, double nu_hi, int points, int k_max) {
    if (!(nu_lo > 0.0) || !(nu_hi > nu_lo) || nu_hi > 5.0)
        throw std::invalid_argument("figure2: nu grid must lie in (0, 5]");
    if (k_max < 2 || k_max > 8) throw std::invalid_argument("figure2: 2 <= k_max <= 8");
    if (points < 2) throw std::invalid_argument("figure2: >= 2 grid points");
    Figure2Data data;
    data.k_max = k_max;
    data.gamma_over_k_norm.resize(static_cast<std::size_t>(k_max - 1));
    for (int i = 0; i < points; ++i) {
        const double nu = nu_lo + (nu_hi - nu_lo) * i / (points - 1);
        const double g1 = gamma1_onesided(nu);
        data.nu.push_back(nu);
        data.gamma_tilde_norm.push_back(almost_sure_replica(nu).value - g1);
        for (int k = 2; k <= k_max; ++k)
            data.gamma_over_k_norm[static_cast<std::size_t>(k - 2)].push_back(
                gamma_k_onesided(k, nu).value / k - g1);
    }
    return data;
}

std::string figure2_csv(const Figure2Data& data) {
    std::ostringstream os;
    os << "nu,gamma_tilde_norm,gamma_1_norm";
    for (int k = 2; k <= data.k_max; ++k) os << ",gamma_" << k << "_over_" << k << "_norm";
    os << "\n";
    for (std::size_t i = 0; i < data.nu.size(); ++i) {
        os << fmt(data.nu[i]) << ',' << fmt(data.gamma_tilde_norm[i]) << ",0";
        for (int k = 2; k <= data.k_max; ++k)
            os << ',' << fmt(data.gamma_over_k_norm[static_cast<std::size_t>(k - 2)][i]);
        os << "\n";
    }
    return os.str();
}

namespace {
const char* kPalette[12] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
};
}

std::string figure2_svg(const Figure2Data& data) {
    const double W = 800, H = 600;
    const double ml = 70, mr = 20, mt = 20, mb = 50;  // margins
    const double pw = W - ml - mr, ph = H - mt - mb;

    double ymin = 0.0, ymax = 0.0;
    for (double v : data.gamma_tilde_norm) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
    }
    for (const auto& curve : data.gamma_over_k_norm)
        for (double v : curve) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    const double xmin = data.nu.front(), xmax = data.nu.back();

    auto X = [&](double x) { return ml + pw * (x - xmin) / (xmax - xmin); };
    auto Y = [&](double y) { return mt + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
    os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    // axes
    os << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\"" << fmt(ml + pw)
       << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml)
       << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {  // ticks
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        os << "<line x1=\"" << fmt(X(xv)) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\""
           << fmt(X(xv)) << "\" y2=\"" << fmt(mt + ph + 5) << "\" stroke=\"black\"/>\n";
        char xl[32], yl[32];
        std::snprintf(xl, sizeof xl, "%.2f", xv);
        std::snprintf(yl, sizeof yl, "%.2f", yv);
        os << "<text x=\"" << fmt(X(xv)) << "\" y=\"" << fmt(mt + ph + 18)
           << "\" font-size=\"11\" text-anchor=\"middle\">" << xl << "</text>\n";
        os << "<line x1=\"" << fmt(ml - 5) << "\" y1=\"" << fmt(Y(yv)) << "\" x2=\"" << fmt(ml)
           << "\" y2=\"" << fmt(Y(yv)) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(Y(yv) + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << yl << "</text>\n";
    }
    os << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(H - 10)
       << "\" font-size=\"13\" text-anchor=\"middle\">nu</text>\n";
    os << "<text x=\"15\" y=\"" << fmt(mt + ph / 2)
       << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
       << fmt(mt + ph / 2) << ")\">normalized exponent</text>\n";

    auto polyline = [&](const std::vector<double>& ys, const char* color) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < data.nu.size(); ++i) {
            if (i) os << ' ';
            os << fmt(X(data.nu[i])) << ',' << fmt(Y(ys[i]));
        }
        os << "\"/>\n";
    };
    polyline(data.gamma_tilde_norm, kPalette[0]);
    std::vector<double> zeros(data.nu.size(), 0.0);
    polyline(zeros, kPalette[1]);
    for (int k = 2; k <= data.k_max; ++k)
        polyline(data.gamma_over_k_norm[static_cast<std::size_t>(k - 2)],
                 kPalette[static_cast<std::size_t>(k) % 12]);

    double ly = mt + 14;
    auto legend = [&](const std::string& label, const char* color) {
        os << "<line x1=\"" << fmt(ml + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\""
           << fmt(ml + 38) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << fmt(ml + 44) << "\" y=\"" << fmt(ly + 4)
           << "\" font-size=\"12\">" << label << "</text>\n";
        ly += 16;
    };
    legend("gamma_tilde_1 (a.s.)", kPalette[0]);
    legend("gamma_1 (= 0)", kPalette[1]);
    for (int k = 2; k <= data.k_max; ++k) {
        std::ostringstream lab;
        lab << "gamma_" << k << "/" << k;
        legend(lab.str(), kPalette[static_cast<std::size_t>(k) % 12]);
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace pam
