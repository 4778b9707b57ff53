#include <doctest.h>

#include <cmath>
#include <random>

#include "pamlyap/oracle.hpp"
#include "pamlyap/quadrature.hpp"

using namespace pam;

TEST_SUITE("oracle") {

TEST_CASE("one-sided k=1 is the Poisson density") {
    ModelParams params(2.0, 0.0, 1.0);
    for (double t : {0.5, 1.0, 5.0}) {
        MomentField f = ode_moment_field(params, 1, t, 25, {1e-11, -1});
        for (int n = 0; n <= 25; ++n) {
            const double poisson = std::exp(-t + n * std::log(t) - std::lgamma(n + 1.0));
            const int idx[1] = {n};
            CHECK(f.value(idx) == doctest::Approx(poisson).epsilon(1e-9));
        }
    }
    // beta never enters k=1
    MomentField noisy = ode_moment_field(ModelParams(2.0, 0.0, 3.0), 1, 1.0, 0, {1e-11, 40});
    const int origin[1] = {0};
    CHECK(noisy.value(origin) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("symmetric k=1 is the Bessel heat kernel and conserves mass") {
    ModelParams params(1.0, 1.0, 0.7);
    const double t = 2.0;
    MomentField f = ode_moment_field(params, 1, t, 5);
    for (int n = -5; n <= 5; ++n) {
        const double expect = std::exp(-t) * std::cyl_bessel_i(std::abs(n), t);
        const int idx[1] = {n};
        CHECK(f.value(idx) == doctest::Approx(expect).epsilon(1e-9));
    }
    double mass = 0.0;
    for (double v : f.raw()) mass += v;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero interaction factorizes at k=2") {
    ModelParams params(1.2, 0.8, 0.0);
    const double t = 1.0;
    MomentField f2 = ode_moment_field(params, 2, t, 3);
    MomentField f1 = ode_moment_field(params, 1, t, 3);
    for (int n1 : {-2, 0, 3})
        for (int n2 : {-1, 0, 2}) {
            const int idx2[2] = {n1, n2};
            const int a[1] = {n1}, b[1] = {n2};
            CHECK(f2.value(idx2) ==
                  doctest::Approx(f1.value(a) * f1.value(b)).epsilon(1e-9));
        }
}

TEST_CASE("permutation symmetry of the integrated field") {
    ModelParams params(1.0, 1.0, 1.0);
    MomentField f = ode_moment_field(params, 2, 1.0, 4);
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> un(f.n_min(), f.n_max());
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int a = un(gen), b = un(gen);
        const int ab[2] = {a, b}, ba[2] = {b, a};
        worst = std::max(worst, std::abs(f.value(ab) - f.value(ba)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("frozen regression constants, p=q=1, beta=1, t=1") {
    // frozen after two independent integrations at tol <= 1e-10 agreed to 1e-8
    ModelParams params(1.0, 1.0, 1.0);
    const int n00[2] = {0, 0}, n10[2] = {1, 0};
    CHECK(ode_moment(params, n00, 1.0).linear() ==
          doctest::Approx(0.5273664790149962).epsilon(1e-8));
    CHECK(ode_moment(params, n10, 1.0).linear() ==
          doctest::Approx(0.16153390863740477).epsilon(1e-8));
}

TEST_CASE("one-sided origin moments are geometric Brownian closed forms") {
    // site 0 evolves autonomously: E[Z(t,0)^k] = exp(k(k-1) b^2 t/2 - k t)
    for (double beta : {0.5, 1.0}) {
        ModelParams params(2.0, 0.0, beta);
        for (int k = 2; k <= 3; ++k) {
            const double t = 0.7;
            MomentField f = ode_moment_field(params, k, t, 0);
            std::vector<int> origin(static_cast<std::size_t>(k), 0);
            const double expect = std::exp(0.5 * k * (k - 1) * beta * beta * t - k * t);
            CHECK(f.value(origin) == doctest::Approx(expect).epsilon(1e-8));
        }
    }
}

TEST_CASE("frozen one-sided k=3 regression values at t=0.5") {
    ModelParams params(2.0, 0.0, 1.0);
    MomentField f = ode_moment_field(params, 3, 0.5, 2);
    const int a[3] = {1, 1, 0}, b[3] = {2, 1, 0};
    CHECK(f.value(a) == doctest::Approx(0.13212055882856152).epsilon(1e-8));
    CHECK(f.value(b) == doctest::Approx(0.0268698398515517).epsilon(1e-8));
}

TEST_CASE("self-consistency under window doubling and tolerance halving") {
    ModelParams params(1.0, 1.0, 1.0);
    const int n[2] = {1, 0};
    const double base = ode_moment(params, n, 1.0, {1e-10, 26}).linear();
    const double finer = ode_moment(params, n, 1.0, {5e-11, 52}).linear();
    CHECK(std::abs(base - finer) <= 10.0 * 1e-10);
}

TEST_CASE("truncation certificate rejects too-small windows") {
    ModelParams params(1.0, 1.0, 1.0);
    const int n[1] = {0};
    CHECK_THROWS_WITH_AS(ode_moment(params, n, 4.0, {1e-10, 3}).linear(),
                         doctest::Contains("window too small"), ComputationError);
}

TEST_CASE("preconditions") {
    ModelParams general(1.0, 1.0, 1.0);
    CHECK_THROWS_AS(ode_moment_field(general, 3, 1.0, 0), std::invalid_argument);
    ModelParams onesided(2.0, 0.0, 1.0);
    CHECK_NOTHROW(ode_moment_field(onesided, 3, 0.2, 0));
}

TEST_CASE("two-point boundary relation holds for the contour formula") {
    // T_beta reads one layer off the ordered cone, where the formula's values
    // are not the symmetric extension; sample the integrand as written
    ModelParams params(1.0, 1.0, 1.0);
    const double t = 1.0;
    MomentSampler u = [&](std::span<const int> n) {
        return two_point_formula(params, t, n[0], n[1]).linear();
    };
    const double res = boundary_residual_two_point(u, params, -2, 2);
    CHECK(res <= 1e-6);
}

TEST_CASE("beta=0 boundary operator telescopes on the product field") {
    ModelParams params(1.4, 0.6, 0.0);
    const double t = 1.0;
    MomentField f1 = ode_moment_field(params, 1, t, 4);
    MomentSampler u = [&](std::span<const int> n) {
        const int a[1] = {n[0]}, b[1] = {n[1]};
        return f1.value(a) * f1.value(b);
    };
    CHECK(boundary_residual_two_point(u, params, -2, 2) <= 1e-10);
}

TEST_CASE("one-sided boundary relation at k=3") {
    ModelParams params(2.0, 0.0, 1.0);
    const double t = 0.5;
    MomentSampler u = [&](std::span<const int> n) {
        return onesided_formula(1.0, t, n).linear();
    };
    std::vector<std::vector<int>> diagonals = {{0, 0, 0}, {1, 1, 0}, {2, 2, 1}, {1, 1, 1}};
    const double res =
        boundary_residual_onesided(u, params, std::span<const std::vector<int>>(diagonals));
    CHECK(res <= 1e-6);
}

}  // TEST_SUITE
