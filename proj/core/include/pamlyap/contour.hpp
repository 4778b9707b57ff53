#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>

#include "pamlyap/types.hpp"

namespace pam {

// A discretized integration contour: circle (trapezoid in angle, spectrally
// accurate for integrands analytic in an annulus) or truncated vertical line.
// node(j) and measure(j) are set up so that
//   (1/(2 pi i)) oint f(z) dz  ~=  sum_j f(node(j)) * measure(j).
class Contour {
public:
    enum class Kind { circle, vertical_line };

    static Contour circle(std::complex<double> center, double radius, int node_count,
                          double angle_offset = 0.0) {
        check_nodes(node_count);
        Contour c;
        c.kind_ = Kind::circle;
        c.center_ = center;
        c.radius_ = radius;
        c.n_ = node_count;
        c.angle_offset_ = angle_offset;
        return c;
    }

    static Contour vertical_line(double abscissa, double half_height, int node_count) {
        check_nodes(node_count);
        Contour c;
        c.kind_ = Kind::vertical_line;
        c.abscissa_ = abscissa;
        c.half_height_ = half_height;
        c.n_ = node_count;
        return c;
    }

    Kind kind() const { return kind_; }
    int node_count() const { return n_; }
    double radius() const { return radius_; }
    double abscissa() const { return abscissa_; }
    double half_height() const { return half_height_; }
    std::complex<double> center() const { return center_; }

    std::complex<double> node(int j) const {
        if (kind_ == Kind::circle) {
            const double th = angle(j);
            return center_ + std::polar(radius_, th);
        }
        return {abscissa_, y(j)};
    }

    std::complex<double> measure(int j) const {
        using std::numbers::pi;
        if (kind_ == Kind::circle) {
            // dz = i r e^{i th} dth, dth = 2pi/N; divided by 2 pi i
            return std::polar(radius_, angle(j)) / static_cast<double>(n_);
        }
        // dz = i dy; (1/(2 pi i)) i dy = dy/(2 pi); trapezoid halves the ends
        const double dy = 2.0 * half_height_ / (n_ - 1);
        const double w = (j == 0 || j == n_ - 1) ? 0.5 : 1.0;
        return {w * dy / (2.0 * pi), 0.0};
    }

    Contour with_nodes(int node_count) const {
        Contour c = *this;
        check_nodes(node_count);
        c.n_ = node_count;
        return c;
    }

private:
    static void check_nodes(int n) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("Contour: node count must be even and >= 8");
    }
    double angle(int j) const {
        return 2.0 * std::numbers::pi * (j + angle_offset_) / n_;
    }
    double y(int j) const {
        return -half_height_ + 2.0 * half_height_ * j / (n_ - 1);
    }

    Kind kind_ = Kind::circle;
    std::complex<double> center_{0.0, 0.0};
    double radius_ = 1.0;
    double abscissa_ = 0.0;
    double half_height_ = 1.0;
    double angle_offset_ = 0.0;
    int n_ = 8;
};

}  // namespace pam
