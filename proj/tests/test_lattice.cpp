#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "pamlyap/lattice.hpp"

using namespace pam;

TEST_SUITE("lattice") {

TEST_CASE("delta kills constants and matches the stencil") {
    ModelParams pq(1.3, 0.7, 1.0);
    SequenceWindow<double> ones(-3, std::vector<double>(7, 1.0));
    for (int n = -2; n <= 2; ++n) CHECK(apply_delta(ones, n, pq) == doctest::Approx(0.0));

    SequenceWindow<double> spike(-1, {0.0, 1.0, 0.0});
    CHECK(apply_delta(spike, 0, ModelParams(1, 1, 0)) == doctest::Approx(-2.0));
}

TEST_CASE("delta is linear and reproduces coefficients on basis sequences") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int width = 3; width <= 7; ++width) {
        const double p = u(gen);
        ModelParams params(p, 2.0 - p, 1.0);
        const int lo = -width / 2;
        for (int basis = 0; basis < width; ++basis) {
            std::vector<double> e(static_cast<std::size_t>(width), 0.0);
            e[static_cast<std::size_t>(basis)] = 1.0;
            SequenceWindow<double> f(lo, e);
            for (int n = lo; n < lo + width; ++n) {
                double expect = 0.0;
                const int site = lo + basis;
                if (site == n - 1) expect += params.p();
                if (site == n + 1) expect += params.q();
                if (site == n) expect -= 2.0;
                CHECK(apply_delta(f, n, params) == doctest::Approx(expect).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("F at z=1 is 1; t=0 leaves the power") {
    ModelParams pq(0.4, 1.6, 2.0);
    CHECK(std::abs(eval_F({1.0, 0.0}, 3.7, 5, pq) - 1.0) < 1e-14);
    CHECK(std::abs(eval_F({2.0, 0.0}, 0.0, 1, pq) - 0.5) < 1e-15);
    CHECK_THROWS_AS(eval_F({0.0, 0.0}, 1.0, 0, pq), std::invalid_argument);
}

TEST_CASE("one-sided F reduces to z^-n e^{t(z-1)}") {
    ModelParams onesided(2.0, 0.0, 1.0);
    const std::complex<double> z{0.6, 0.3};
    const double t = 1.7;
    const int n = 2;
    const std::complex<double> expect = std::pow(z, -n) * std::exp(t * (z - 1.0));
    CHECK(std::abs(eval_F(z, t, n, onesided) - expect) < 1e-14 * std::abs(expect));
}

TEST_CASE("F solves the one-site ODE dF/dt = (1/2) Delta F") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> up(0.0, 2.0);
    std::uniform_real_distribution<double> ur(0.3, 2.0);
    std::uniform_real_distribution<double> uth(-3.0, 3.0);
    std::uniform_int_distribution<int> un(-3, 3);
    std::uniform_real_distribution<double> ut(0.1, 2.0);
    const double h = 1e-5;
    for (int trial = 0; trial < 20; ++trial) {
        const double p = up(gen);
        ModelParams params(p, 2.0 - p, 1.0);
        const std::complex<double> z = std::polar(ur(gen), uth(gen));
        const double t = ut(gen);
        const int n = un(gen);
        const std::complex<double> dF_dt =
            (eval_F(z, t + h, n, params) - eval_F(z, t - h, n, params)) / (2.0 * h);
        auto F_at = [&](int m) { return eval_F(z, t, m, params); };
        const std::complex<double> rhs = 0.5 * apply_delta_fn(F_at, n, params);
        CHECK(std::abs(dF_dt - rhs) <= 1e-6 * std::abs(rhs));
    }
}

TEST_CASE("log form agrees with the direct form where the latter is finite") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> ur(0.2, 3.0);
    std::uniform_real_distribution<double> uth(-3.1, 3.1);
    ModelParams params(1.0, 1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::complex<double> z = std::polar(ur(gen), uth(gen));
        const std::complex<double> direct = eval_F(z, 2.5, 3, params);
        const std::complex<double> via_log = eval_F_log(z, 2.5, 3, params).value();
        CHECK(std::abs(via_log - direct) <= 1e-12 * std::abs(direct));
    }
    // far beyond double range the log form stays finite
    LogComplex big = eval_F_log({30.0, 0.0}, 60.0, 0, params);
    CHECK(big.log_mag > 700.0);
    CHECK(std::isfinite(big.log_mag));
}

}  // TEST_SUITE
