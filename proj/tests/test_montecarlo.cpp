#include <doctest.h>

#include <cmath>

#include "pamlyap/montecarlo.hpp"
#include "pamlyap/oracle.hpp"
#include "pamlyap/quadrature.hpp"

using namespace pam;

TEST_SUITE("montecarlo") {

TEST_CASE("counter rng is deterministic and counter-sensitive") {
    CounterRng a(42), b(42), c(43);
    CHECK(a.uniform(0, 0, 0) == b.uniform(0, 0, 0));
    CHECK(a.normal(3, 1, 17) == b.normal(3, 1, 17));
    CHECK(a.uniform(0, 0, 0) != c.uniform(0, 0, 0));
    CHECK(a.uniform(0, 0, 0) != a.uniform(0, 0, 1));
    CHECK(a.uniform(0, 0, 0) != a.uniform(1, 0, 0));
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u = a.uniform(7, 2, i);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
    // crude moments of the normal stream
    double sum = 0.0, sum2 = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
        const double x = a.normal(0, 5, static_cast<std::uint64_t>(i));
        sum += x;
        sum2 += x * x;
    }
    CHECK(std::abs(sum / N) < 0.03);
    CHECK(std::abs(sum2 / N - 1.0) < 0.05);
}

TEST_CASE("seed determinism of the field simulation") {
    ModelParams params(1.0, 1.0, 1.0);
    SimConfig cfg;
    cfg.replicas = 1;
    FieldSnapshot a = simulate_replica(params, 0.5, cfg, 7);
    FieldSnapshot b = simulate_replica(params, 0.5, cfg, 7);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
    FieldSnapshot c = simulate_replica(params, 0.5, cfg, 8);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] != c.values[i]) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("beta=0 is deterministic heat flow matching the quadrature") {
    ModelParams params(1.0, 1.0, 0.0);
    SimConfig cfg;
    cfg.dt = 0.002;
    FieldSnapshot snap = simulate_replica(params, 1.0, cfg, 0);
    for (int n : {-2, 0, 1, 3}) {
        const double expect = first_moment_q(params, 1.0, n).linear();
        CHECK(snap.value(n) == doctest::Approx(expect).epsilon(0.01));  // O(dt)
    }
}

TEST_CASE("ito scheme: replica mean of Z is beta-free, one-sided closed form") {
    // E[Z(1,0)] = e^{-1} for (2,0) regardless of beta
    ModelParams params(2.0, 0.0, 1.0);
    SimConfig cfg;
    cfg.replicas = 100000;
    cfg.seed = 99;
    double sum = 0.0, sum2 = 0.0;
    std::uint64_t clips = 0;
    for (int r = 0; r < cfg.replicas; ++r) {
        const double z = simulate_replica(params, 1.0, cfg, r, &clips).value(0);
        sum += z;
        sum2 += z * z;
    }
    const double mean = sum / cfg.replicas;
    const double se =
        std::sqrt((sum2 - sum * sum / cfg.replicas) / (cfg.replicas - 1.0) / cfg.replicas);
    CHECK(std::abs(mean - std::exp(-1.0)) <= 3.0 * se);
    CHECK(clips == 0);  // positivity guard silent at the default dt
}

TEST_CASE("mc k=2 moment agrees with quadrature within 3 SE") {
    ModelParams params(1.0, 1.0, 1.0);
    SimConfig cfg;
    cfg.replicas = 20000;
    cfg.seed = 4;
    const int n[2] = {1, 0};
    McEstimate est = mc_moment(params, 1.0, n, cfg);
    const double reference = second_moment_q(params, 1.0, {1, 0}).linear();
    CHECK(std::abs(est.mean - reference) <= 3.0 * est.std_error);
    CHECK(est.clipped == 0);
}

TEST_CASE("dt refinement moves the k=2 estimate by less than one SE") {
    ModelParams params(1.0, 1.0, 1.0);
    SimConfig coarse;
    coarse.replicas = 100000;
    coarse.seed = 12;
    SimConfig fine = coarse;
    fine.dt = 0.005;
    const int n[2] = {0, 0};
    McEstimate a = mc_moment(params, 1.0, n, coarse);
    McEstimate b = mc_moment(params, 1.0, n, fine);
    CHECK(std::abs(a.mean - b.mean) <= a.std_error);
}

TEST_CASE("strang splitting scheme agrees and never clips") {
    ModelParams params(1.0, 1.0, 1.0);
    SimConfig cfg;
    cfg.replicas = 20000;
    cfg.seed = 31;
    cfg.scheme = Scheme::exact_exponential;
    const int n[2] = {0, 0};
    McEstimate est = mc_moment(params, 1.0, n, cfg);
    const double reference = second_moment_q(params, 1.0, {0, 0}).linear();
    CHECK(std::abs(est.mean - reference) <= 3.0 * est.std_error);
    CHECK(est.clipped == 0);
}

TEST_CASE("mc rejects k > 3 and degenerate samples") {
    ModelParams params(1.0, 1.0, 1.0);
    SimConfig cfg;
    cfg.replicas = 100;
    const int n4[4] = {0, 0, 0, 0};
    CHECK_THROWS_AS(mc_moment(params, 1.0, n4, cfg), std::invalid_argument);
    const int far[1] = {40};  // unreachable at t = 0.05 with L from the window rule
    SimConfig tiny;
    tiny.replicas = 50;
    CHECK_THROWS_AS(mc_moment(params, 0.05, far, tiny), ComputationError);
    SimConfig bad;
    bad.dt = 0.5;
    CHECK_THROWS_AS(mc_moment(params, 1.0, n4, bad), std::invalid_argument);
}

TEST_CASE("pinned walk: beta=0 difference statistics match the semigroup") {
    // difference walk is the rate-1-each-way symmetric walk; its semigroup is
    // computed independently by the oracle integrator and in closed Bessel form
    ModelParams params(1.4, 0.6, 0.0);
    SimConfig cfg;
    cfg.replicas = 200000;
    cfg.seed = 8;
    const double t = 1.0;
    MomentField semigroup = ode_moment_field(ModelParams(1.0, 1.0, 0.0), 1, 2.0 * t, 0);
    for (int m : {0, 1, -2}) {
        PinnedWalkResult pw = pinned_walk_second_moment(params, t, m, cfg);
        const int idx[1] = {m};
        const double expect = semigroup.value(idx);  // rate-2 walk at t = rate-1 at 2t
        CHECK(std::abs(pw.difference_prob.mean - expect) <= 3.0 * pw.difference_prob.std_error);
        const double bessel = std::exp(-2.0 * t) * std::cyl_bessel_i(std::abs(m), 2.0 * t);
        CHECK(expect == doctest::Approx(bessel).epsilon(1e-9));
    }
}

TEST_CASE("pinned walk reproduces the second moment within 3 SE") {
    ModelParams params(1.0, 1.0, 1.0);
    SimConfig cfg;
    cfg.replicas = 200000;
    cfg.seed = 5;
    for (int m : {0, 1}) {
        PinnedWalkResult pw = pinned_walk_second_moment(params, 1.0, m, cfg);
        const double reference = second_moment_q(params, 1.0, {m, 0}).linear();
        CHECK(std::abs(pw.moment.mean - reference) <= 3.0 * pw.moment.std_error);
    }
}

TEST_CASE("pinned walk is seed-deterministic") {
    ModelParams params(1.0, 1.0, 1.0);
    SimConfig cfg;
    cfg.replicas = 5000;
    cfg.seed = 77;
    PinnedWalkResult a = pinned_walk_second_moment(params, 1.0, 0, cfg);
    PinnedWalkResult b = pinned_walk_second_moment(params, 1.0, 0, cfg);
    CHECK(a.moment.mean == b.moment.mean);
    CHECK(a.moment.std_error == b.moment.std_error);
}

}  // TEST_SUITE
