#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "pamlyap/special_functions.hpp"

using namespace pam;

TEST_SUITE("special_functions") {

namespace {
// Euler-Mascheroni by Euler-Maclaurin-corrected harmonic sum; error O(N^-4).
double euler_gamma_oracle() {
    const int N = 1000000;
    double h = 0.0;
    for (int k = 1; k <= N; ++k) h += 1.0 / k;
    const double n = N;
    return h - std::log(n) - 0.5 / n + 1.0 / (12.0 * n * n);
}
// Basel sum with tail correction; error O(N^-7).
double basel_oracle() {
    const int N = 200000;
    double s = 0.0;
    for (int k = 1; k <= N; ++k) s += 1.0 / (static_cast<double>(k) * k);
    const double n = N;
    return s + 1.0 / n - 0.5 / (n * n) + 1.0 / (6.0 * n * n * n);
}
}  // namespace

TEST_CASE("digamma at 1 equals minus Euler-Mascheroni") {
    CHECK(std::abs(digamma(1.0) + euler_gamma_oracle()) < 1e-12);
}

TEST_CASE("trigamma at 1 equals the Basel sum") {
    CHECK(std::abs(trigamma(1.0) - basel_oracle()) < 1e-12);
}

TEST_CASE("recurrence identities hold to 1e-12") {
    for (double x : {0.1, 0.5, 1.0, 2.7, 10.0}) {
        CHECK(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) < 1e-12);
        CHECK(std::abs(trigamma(x + 1.0) - trigamma(x) + 1.0 / (x * x)) < 1e-12);
    }
}

TEST_CASE("half-integer and large-argument values") {
    // Psi(1/2) = -gamma - 2 log 2
    CHECK(std::abs(digamma(0.5) + euler_gamma_oracle() + 2.0 * std::log(2.0)) < 1e-12);
    // Psi'(1/2) = pi^2 / 2
    CHECK(std::abs(trigamma(0.5) - 3.0 * basel_oracle()) < 1e-11);
    // asymptotic regime consistency across the shift boundary
    CHECK(std::abs(digamma(11.9) - (digamma(12.9) - 1.0 / 11.9)) < 1e-13);
}

TEST_CASE("polygamma dispatch and domain") {
    CHECK(polygamma(0, 2.0) == digamma(2.0));
    CHECK(polygamma(1, 2.0) == trigamma(2.0));
    CHECK_THROWS_AS(polygamma(2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(digamma(0.0), std::invalid_argument);
    CHECK_THROWS_AS(trigamma(-1.0), std::invalid_argument);
}

}  // TEST_SUITE
