#include "pamlyap/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pamlyap/oracle.hpp"

namespace pam {

namespace {
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::array<std::uint32_t, 4> out{
        static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
        static_cast<std::uint32_t>(p1),
        static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
        static_cast<std::uint32_t>(p0),
    };
    ctr = out;
    key[0] += kWeyl0;
    key[1] += kWeyl1;
}
}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) philox_round(ctr, key);
    return ctr;
}

namespace {
std::array<std::uint64_t, 2> draw_u64_pair(std::uint64_t seed, std::uint64_t replica,
                                           std::uint32_t stream, std::uint64_t index) {
    Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                        static_cast<std::uint32_t>(seed >> 32)};
    Philox4x32::Counter ctr{static_cast<std::uint32_t>(index),
                            static_cast<std::uint32_t>(index >> 32),
                            static_cast<std::uint32_t>(replica) ^ stream,
                            static_cast<std::uint32_t>(replica >> 32)};
    const auto out = Philox4x32::generate(ctr, key);
    return {(static_cast<std::uint64_t>(out[0]) << 32) | out[1],
            (static_cast<std::uint64_t>(out[2]) << 32) | out[3]};
}

inline double u64_to_unit(std::uint64_t u) {
    // (0, 1), 53-bit mantissa, never exactly 0 or 1
    return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
}
}  // namespace

double CounterRng::uniform(std::uint64_t replica, std::uint32_t stream,
                           std::uint64_t index) const {
    return u64_to_unit(draw_u64_pair(seed_, replica, stream, index)[0]);
}

double CounterRng::normal(std::uint64_t replica, std::uint32_t stream,
                          std::uint64_t index) const {
    const auto [a, b] = draw_u64_pair(seed_, replica, stream, index);
    const double u1 = u64_to_unit(a);
    const double u2 = u64_to_unit(b);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

void validate_config(const ModelParams& params, const SimConfig& cfg, double dt) {
    const double dt_max = 0.01 / std::max(1.0, params.beta2());
    if (dt > dt_max * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "SimConfig: dt " << dt << " exceeds stability bound " << dt_max;
        throw std::invalid_argument(os.str());
    }
    if (cfg.replicas < 1) throw std::invalid_argument("SimConfig: replicas >= 1");
}

}  // namespace

FieldSnapshot simulate_replica(const ModelParams& params, double t, const SimConfig& cfg,
                               std::uint64_t replica, std::uint64_t* clip_counter) {
    const double dt_target = cfg.dt > 0 ? cfg.dt : 0.01 / std::max(1.0, params.beta2());
    validate_config(params, cfg, dt_target);
    const int L = cfg.window_halfwidth > 0 ? cfg.window_halfwidth
                                           : default_window_halfwidth(params, t, 0);
    const int W = 2 * L + 1;
    const int steps = std::max(1, static_cast<int>(std::ceil(t / dt_target)));
    const double dt = t / steps;
    const double sqrt_dt = std::sqrt(dt);
    const double p = params.p(), q = params.q(), beta = params.beta();

    CounterRng rng(cfg.seed);
    std::vector<double> z(static_cast<std::size_t>(W), 0.0);
    std::vector<double> znew(static_cast<std::size_t>(W), 0.0);
    z[static_cast<std::size_t>(L)] = 1.0;  // delta at n = 0
    std::uint64_t clips = 0;

    const bool strang = cfg.scheme == Scheme::exact_exponential;
    for (int step = 0; step < steps; ++step) {
        auto half_laplacian = [&](double h) {
            for (int i = 0; i < W; ++i) {
                const double left = i > 0 ? z[static_cast<std::size_t>(i - 1)] : 0.0;
                const double right = i + 1 < W ? z[static_cast<std::size_t>(i + 1)] : 0.0;
                znew[static_cast<std::size_t>(i)] =
                    z[static_cast<std::size_t>(i)] +
                    h * 0.5 * (p * left + q * right - 2.0 * z[static_cast<std::size_t>(i)]);
            }
            z.swap(znew);
        };
        if (strang) {
            // Laplacian half-step, exact geometric noise factor, half-step
            half_laplacian(0.5 * dt);
            for (int i = 0; i < W; ++i) {
                const std::uint64_t index =
                    static_cast<std::uint64_t>(step) * static_cast<std::uint64_t>(W) +
                    static_cast<std::uint64_t>(i);
                const double xi = rng.normal(replica, 1u, index);
                z[static_cast<std::size_t>(i)] *=
                    std::exp(beta * sqrt_dt * xi - 0.5 * beta * beta * dt);
            }
            half_laplacian(0.5 * dt);
        } else {
            for (int i = 0; i < W; ++i) {
                const double left = i > 0 ? z[static_cast<std::size_t>(i - 1)] : 0.0;
                const double right = i + 1 < W ? z[static_cast<std::size_t>(i + 1)] : 0.0;
                const double zi = z[static_cast<std::size_t>(i)];
                const std::uint64_t index =
                    static_cast<std::uint64_t>(step) * static_cast<std::uint64_t>(W) +
                    static_cast<std::uint64_t>(i);
                const double xi = rng.normal(replica, 0u, index);
                double v = zi + dt * 0.5 * (p * left + q * right - 2.0 * zi) +
                           beta * zi * sqrt_dt * xi;
                if (v < 0.0) {
                    v = 0.0;
                    ++clips;
                }
                znew[static_cast<std::size_t>(i)] = v;
            }
            z.swap(znew);
        }
    }
    if (clip_counter) *clip_counter += clips;

    FieldSnapshot snap;
    snap.t = t;
    snap.n_min = -L;
    snap.values = std::move(z);
    return snap;
}

std::vector<FieldSnapshot> simulate_pam(const ModelParams& params, double t,
                                        const SimConfig& cfg) {
    std::vector<FieldSnapshot> out;
    out.reserve(static_cast<std::size_t>(cfg.replicas));
    std::uint64_t clips = 0;
    const double dt_target = cfg.dt > 0 ? cfg.dt : 0.01 / std::max(1.0, params.beta2());
    for (int r = 0; r < cfg.replicas; ++r)
        out.push_back(simulate_replica(params, t, cfg, static_cast<std::uint64_t>(r), &clips));
    const int L = cfg.window_halfwidth > 0 ? cfg.window_halfwidth
                                           : default_window_halfwidth(params, t, 0);
    const double site_steps = static_cast<double>(cfg.replicas) * (2.0 * L + 1.0) *
                              std::ceil(t / dt_target);
    if (static_cast<double>(clips) > 1e-4 * site_steps) {
        std::ostringstream os;
        os << "simulate_pam: clip fraction " << static_cast<double>(clips) / site_steps
           << " > 1e-4; dt too large, try dt = " << dt_target / 4.0;
        throw ComputationError(os.str());
    }
    return out;
}

namespace {

McEstimate finalize(double sum, double sum_sq, int R, std::uint64_t clips) {
    McEstimate e;
    e.replicas = R;
    e.clipped = clips;
    e.mean = sum / R;
    const double var = std::max(0.0, (sum_sq - sum * sum / R) / (R - 1.0));
    e.std_error = std::sqrt(var / R);
    return e;
}

}  // namespace

McEstimate mc_moment(const ModelParams& params, double t, std::span<const int> n,
                     const SimConfig& cfg) {
    const int k = static_cast<int>(n.size());
    if (k < 1 || k > 3)
        throw std::invalid_argument(
            "mc_moment: k <= 3 (higher moments have heavy-tailed estimators under "
            "intermittency)");
    double sum = 0.0, sum_sq = 0.0;
    std::uint64_t clips = 0;
    bool any_nonzero = false;
    const double dt_target = cfg.dt > 0 ? cfg.dt : 0.01 / std::max(1.0, params.beta2());
    for (int r = 0; r < cfg.replicas; ++r) {
        FieldSnapshot snap = simulate_replica(params, t, cfg, static_cast<std::uint64_t>(r), &clips);
        double prod = 1.0;
        for (int i = 0; i < k; ++i) prod *= snap.value(n[static_cast<std::size_t>(i)]);
        if (prod != 0.0) any_nonzero = true;
        sum += prod;
        sum_sq += prod * prod;
    }
    if (!any_nonzero)
        throw ComputationError("mc_moment: degenerate sample (all-zero products)");
    const int L = cfg.window_halfwidth > 0 ? cfg.window_halfwidth
                                           : default_window_halfwidth(params, t, 0);
    const double site_steps = static_cast<double>(cfg.replicas) * (2.0 * L + 1.0) *
                              std::ceil(t / dt_target);
    if (static_cast<double>(clips) > 1e-4 * site_steps)
        throw ComputationError("mc_moment: clip fraction > 1e-4; dt too large");
    return finalize(sum, sum_sq, cfg.replicas, clips);
}

PinnedWalkResult pinned_walk_second_moment(const ModelParams& params, double t, int m,
                                           const SimConfig& cfg) {
    if (cfg.replicas < 2) throw std::invalid_argument("pinned_walk: replicas >= 2");
    const double p = params.p(), q = params.q(), b2 = params.beta2();
    CounterRng rng(cfg.seed);
    double mom_sum = 0.0, mom_sq = 0.0;
    double diff_sum = 0.0, diff_sq = 0.0;
    for (int r = 0; r < cfg.replicas; ++r) {
        // two independent walks, each generator (1/2)Delta^{q,p}: jump n-1 at
        // rate q/2, n+1 at rate p/2, per-walk rate (p+q)/2 = 1, combined 2
        int pi1 = 0, pi2 = 0;
        double clock = 0.0;
        double local_time = 0.0;
        std::uint64_t event = 0;
        while (true) {
            const double u_exp = rng.uniform(static_cast<std::uint64_t>(r), 10u, event);
            const double hold = -std::log(u_exp) / 2.0;
            if (clock + hold >= t) {
                if (pi1 == pi2) local_time += t - clock;
                break;
            }
            if (pi1 == pi2) local_time += hold;
            clock += hold;
            const double u_pick = rng.uniform(static_cast<std::uint64_t>(r), 11u, event);
            const double u_dir = rng.uniform(static_cast<std::uint64_t>(r), 12u, event);
            int& walker = (u_pick < 0.5) ? pi1 : pi2;
            walker += (u_dir < q / 2.0) ? -1 : +1;
            ++event;
        }
        const double weight = std::exp(b2 * local_time);
        const double mom = (pi1 == m && pi2 == 0) ? weight : 0.0;
        const double dif = (pi1 - pi2 == m) ? weight : 0.0;
        mom_sum += mom;
        mom_sq += mom * mom;
        diff_sum += dif;
        diff_sq += dif * dif;
    }
    if (mom_sum == 0.0)
        throw ComputationError("pinned_walk: degenerate sample (no replica hit the endpoint)");
    PinnedWalkResult out;
    out.moment = finalize(mom_sum, mom_sq, cfg.replicas, 0);
    out.difference_prob = finalize(diff_sum, diff_sq, cfg.replicas, 0);
    return out;
}

}  // namespace pam
