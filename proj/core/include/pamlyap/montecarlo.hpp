#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pamlyap/types.hpp"

namespace pam {

// Philox4x32-10 counter-based generator: the stream is a pure function of
// (key, counter), so replicas are reproducible and embarrassingly parallel
// with no stream coordination.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key);
};

// Draws keyed by (seed) with counter (replica, stream, index); one call per
// draw site, deterministic across platforms and thread schedules.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    // uniform in (0, 1), 53-bit
    double uniform(std::uint64_t replica, std::uint32_t stream, std::uint64_t index) const;
    // standard normal via Box-Muller on one counter block
    double normal(std::uint64_t replica, std::uint32_t stream, std::uint64_t index) const;

private:
    std::uint64_t seed_;
};

enum class Scheme { euler_maruyama, exact_exponential };

struct SimConfig {
    double dt = -1.0;          // -1: 0.01 / max(1, beta^2)
    int window_halfwidth = -1; // -1: oracle window rule
    int replicas = 100;
    std::uint64_t seed = 2013;
    Scheme scheme = Scheme::euler_maruyama;
};

struct FieldSnapshot {
    double t = 0.0;
    int n_min = 0;
    std::vector<double> values;  // Z(t, n), n = n_min .. n_min + size - 1

    double value(int n) const {
        const int i = n - n_min;
        if (i < 0 || i >= static_cast<int>(values.size())) return 0.0;
        return values[static_cast<std::size_t>(i)];
    }
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // jackknife (= s/sqrt(R) for a plain mean)
    int replicas = 0;
    std::uint64_t clipped = 0;  // positivity-guard activations across the run
};

// One replica of the lattice SDE from delta data, Ito interpretation:
// Z <- Z + dt (1/2) Delta Z + beta Z sqrt(dt) xi, positivity clip counted.
FieldSnapshot simulate_replica(const ModelParams& params, double t, const SimConfig& cfg,
                               std::uint64_t replica, std::uint64_t* clip_counter = nullptr);

// All replicas (intended for small replica counts; mc_moment streams instead).
std::vector<FieldSnapshot> simulate_pam(const ModelParams& params, double t,
                                        const SimConfig& cfg);

// Monte Carlo joint moment E[prod Z(t, n_i)], k <= 3 (heavier moments have
// heavy-tailed estimators under intermittency and are refused).
McEstimate mc_moment(const ModelParams& params, double t, std::span<const int> n,
                     const SimConfig& cfg);

struct PinnedWalkResult {
    McEstimate moment;           // E[Z(t,m) Z(t,0)]: pair-endpoint indicator
    McEstimate difference_prob;  // E[1{pi1(t)-pi2(t)=m} e^{b^2 L_0}]; at beta=0
                                 // this is the difference-walk transition probability
};

// Second moment through the random-walk representation: two walks with
// generator (1/2) Delta^{q,p} simulated exactly by exponential clocks; the
// local time of pi1 - pi2 at 0 is accumulated exactly between events and
// weighted by exp(beta^2 L_0).
PinnedWalkResult pinned_walk_second_moment(const ModelParams& params, double t, int m,
                                           const SimConfig& cfg);

}  // namespace pam
