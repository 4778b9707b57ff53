#include "pamlyap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace pam {

MomentField::MomentField(int k, int n_min, int n_max, double t)
    : k_(k), n_min_(n_min), n_max_(n_max), t_(t) {
    if (k < 1 || k > 4) throw std::invalid_argument("MomentField: 1 <= k <= 4");
    if (n_max <= n_min) throw std::invalid_argument("MomentField: empty window");
    std::size_t sz = 1;
    for (int i = 0; i < k; ++i) sz *= static_cast<std::size_t>(width());
    values_.assign(sz, 0.0);
}

std::size_t MomentField::index(std::span<const int> n) const {
    std::size_t flat = 0;
    for (int i = 0; i < k_; ++i) {
        const int c = n[static_cast<std::size_t>(i)];
        if (c < n_min_ || c > n_max_) throw std::out_of_range("MomentField: index outside window");
        flat = flat * static_cast<std::size_t>(width()) + static_cast<std::size_t>(c - n_min_);
    }
    return flat;
}

void MomentField::coords(std::size_t flat, std::span<int> out) const {
    for (int i = k_ - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] =
            n_min_ + static_cast<int>(flat % static_cast<std::size_t>(width()));
        flat /= static_cast<std::size_t>(width());
    }
}

double MomentField::value(std::span<const int> n) const { return values_[index(n)]; }
double& MomentField::at(std::span<const int> n) { return values_[index(n)]; }

int default_window_halfwidth(const ModelParams& params, double t, int max_abs_n) {
    const double spread = 2.0 * (params.p() + params.q() + params.beta2()) * t;
    return static_cast<int>(std::ceil(spread + 10.0 * std::sqrt(t) + 10.0 + max_abs_n));
}

namespace {

// Matrix-free application of H over the dense window array.
class Hamiltonian {
public:
    Hamiltonian(const ModelParams& params, const MomentField& proto)
        : p_(params.p()), q_(params.q()), b2_(params.beta2()),
          one_sided_(params.one_sided()), k_(proto.k()), w_(proto.width()),
          n_min_(proto.n_min()), size_(proto.size()) {
        strides_.resize(static_cast<std::size_t>(k_));
        std::size_t s = 1;
        for (int i = k_ - 1; i >= 0; --i) {
            strides_[static_cast<std::size_t>(i)] = s;
            s *= static_cast<std::size_t>(w_);
        }
        // precompute the pairwise-coincidence count per cell (the b^2 diagonal)
        diag_.assign(size_, 0.0f);
        std::vector<int> c(static_cast<std::size_t>(k_));
        for (std::size_t flat = 0; flat < size_; ++flat) {
            decode(flat, c);
            int pairs = 0;
            for (int a = 0; a < k_; ++a)
                for (int b = a + 1; b < k_; ++b)
                    if (c[static_cast<std::size_t>(a)] == c[static_cast<std::size_t>(b)]) ++pairs;
            diag_[flat] = static_cast<float>(pairs);
        }
        if (one_sided_) {
            pinned_.assign(size_, 0);
            for (std::size_t flat = 0; flat < size_; ++flat) {
                decode(flat, c);
                for (int a = 0; a < k_; ++a)
                    if (c[static_cast<std::size_t>(a)] == n_min_) pinned_[flat] = 1;
            }
        }
    }

    void apply(const std::vector<double>& v, std::vector<double>& dv) const {
        const double diag_coeff = -0.5 * (p_ + q_) * k_;
        for (std::size_t i = 0; i < size_; ++i)
            dv[i] = (diag_coeff + b2_ * diag_[i]) * v[i];
        // neighbor terms axis by axis: +p/2 from c_i - 1, +q/2 from c_i + 1
        for (int ax = 0; ax < k_; ++ax) {
            const std::size_t st = strides_[static_cast<std::size_t>(ax)];
            const std::size_t block = st * static_cast<std::size_t>(w_);
            for (std::size_t base = 0; base < size_; base += block) {
                for (std::size_t off = 0; off < st; ++off) {
                    std::size_t idx = base + off;
                    for (int c = 0; c < w_; ++c, idx += st) {
                        if (p_ != 0.0 && c > 0) dv[idx] += 0.5 * p_ * v[idx - st];
                        if (q_ != 0.0 && c + 1 < w_) dv[idx] += 0.5 * q_ * v[idx + st];
                    }
                }
            }
        }
        if (one_sided_)
            for (std::size_t i = 0; i < size_; ++i)
                if (pinned_[i]) dv[i] = 0.0;
    }

private:
    void decode(std::size_t flat, std::vector<int>& c) const {
        for (int i = k_ - 1; i >= 0; --i) {
            c[static_cast<std::size_t>(i)] = n_min_ + static_cast<int>(flat % static_cast<std::size_t>(w_));
            flat /= static_cast<std::size_t>(w_);
        }
    }

    double p_, q_, b2_;
    bool one_sided_;
    int k_, w_, n_min_;
    std::size_t size_;
    std::vector<std::size_t> strides_;
    std::vector<float> diag_;
    std::vector<std::uint8_t> pinned_;
};

// Dormand-Prince 5(4) embedded pair with PI step control.
void integrate_rk45(const Hamiltonian& H, std::vector<double>& y, double t_end, double tol) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const std::size_t n = y.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);
    double t = 0.0;
    double h = std::min(0.01, t_end);
    H.apply(y, k1);  // FSAL seed
    int rejected_in_a_row = 0;
    while (t < t_end) {
        h = std::min(h, t_end - t);
        auto stage = [&](std::vector<double>& k, auto... terms) {
            // tmp = y + h * (sum of coeff * stage)
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                ((acc += terms.first * (*terms.second)[i]), ...);
                tmp[i] = y[i] + h * acc;
            }
            H.apply(tmp, k);
        };
        stage(k2, std::pair{a21, &k1});
        stage(k3, std::pair{a31, &k1}, std::pair{a32, &k2});
        stage(k4, std::pair{a41, &k1}, std::pair{a42, &k2}, std::pair{a43, &k3});
        stage(k5, std::pair{a51, &k1}, std::pair{a52, &k2}, std::pair{a53, &k3},
              std::pair{a54, &k4});
        stage(k6, std::pair{a61, &k1}, std::pair{a62, &k2}, std::pair{a63, &k3},
              std::pair{a64, &k4}, std::pair{a65, &k5});
        // 5th-order solution (also the 7th stage input, FSAL)
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        H.apply(tmp, k7);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = tol + tol * std::max(std::abs(y[i]), std::abs(tmp[i]));
            err = std::max(err, std::abs(ei) / sc);
        }
        if (err <= 1.0) {
            t += h;
            y.swap(tmp);
            k1.swap(k7);
            rejected_in_a_row = 0;
        } else if (++rejected_in_a_row > 60) {
            throw ComputationError("ode_moment: integrator failed to reach tolerance");
        }
        const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (h < 1e-12) throw ComputationError("ode_moment: step size underflow");
    }
}

void check_truncation(const MomentField& f, double tol) {
    const auto& v = f.raw();
    double interior_max = 0.0;
    double shell_total = 0.0;
    std::vector<int> c(static_cast<std::size_t>(f.k()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        f.coords(i, c);
        bool on_shell = false;
        for (int a = 0; a < f.k(); ++a) {
            const int x = c[static_cast<std::size_t>(a)];
            if (x == f.n_max() || (x == f.n_min() && f.n_min() < -1)) on_shell = true;
        }
        if (on_shell)
            shell_total += std::abs(v[i]);
        else
            interior_max = std::max(interior_max, std::abs(v[i]));
    }
    if (shell_total >= tol * interior_max) {
        std::ostringstream os;
        os << "ode_moment: window too small (boundary mass " << shell_total
           << " vs interior max " << interior_max << "); suggested halfwidth "
           << static_cast<int>(std::ceil(1.5 * (f.n_max() + 1)));
        throw ComputationError(os.str());
    }
}

}  // namespace

MomentField ode_moment_field(const ModelParams& params, int k, double t,
                             int max_abs_n, const OdeOptions& opts) {
    if (k < 1) throw std::invalid_argument("ode_moment: k >= 1");
    if (params.one_sided()) {
        if (k > 4) throw std::invalid_argument("ode_moment: k <= 4 for (p,q)=(2,0)");
    } else if (k > 2) {
        throw std::invalid_argument("ode_moment: k <= 2 for general (p,q)");
    }
    const int L = opts.window_halfwidth > 0 ? opts.window_halfwidth
                                            : default_window_halfwidth(params, t, max_abs_n);
    const int n_min = params.one_sided() ? -1 : -L;
    MomentField field(k, n_min, L, t);
    std::vector<int> origin(static_cast<std::size_t>(k), 0);
    field.at(origin) = 1.0;
    if (t > 0.0) {
        Hamiltonian H(params, field);
        integrate_rk45(H, field.raw(), t, opts.tol);
    }
    check_truncation(field, std::max(opts.tol, 1e-12));
    return field;
}

MomentResult ode_moment(const ModelParams& params, std::span<const int> n, double t,
                        const OdeOptions& opts) {
    int max_abs = 0;
    for (int x : n) max_abs = std::max(max_abs, std::abs(x));
    MomentField f = ode_moment_field(params, static_cast<int>(n.size()), t, max_abs, opts);
    MomentResult r;
    r.value = LogComplex::from({f.value(n), 0.0});
    r.method = Method::ode;
    r.error_estimate = opts.tol * 10.0;
    return r;
}

MomentResult ode_moment(const ModelParams& params, const OrderedTuple& n, double t,
                        const OdeOptions& opts) {
    return ode_moment(params, std::span<const int>(n.entries()), t, opts);
}

MomentResult ode_moment(const ModelParams& params, const OrderedPair& n, double t,
                        const OdeOptions& opts) {
    const int arr[2] = {n.n1, n.n2};
    return ode_moment(params, std::span<const int>(arr, 2), t, opts);
}

double boundary_residual_two_point(const MomentSampler& u, const ModelParams& params,
                                   int lo, int hi) {
    const double p = params.p(), q = params.q(), b2 = params.beta2();
    double max_res = 0.0, max_u = 0.0;
    auto U = [&](int a, int b) {
        const int n[2] = {a, b};
        const double v = u(std::span<const int>(n, 2));
        max_u = std::max(max_u, std::abs(v));
        return v;
    };
    for (int n = lo; n <= hi; ++n) {
        const double r = b2 * U(n, n) + 0.5 * p * U(n, n - 1) + 0.5 * q * U(n + 1, n) -
                         0.5 * p * U(n - 1, n) - 0.5 * q * U(n, n + 1);
        max_res = std::max(max_res, std::abs(r));
    }
    return max_res / max_u;
}

double boundary_residual_onesided(const MomentSampler& u, const ModelParams& params,
                                  std::span<const std::vector<int>> diagonal_tuples) {
    if (!params.one_sided())
        throw std::invalid_argument("boundary_residual_onesided: requires (p,q)=(2,0)");
    const double b2 = params.beta2();
    double max_res = 0.0, max_u = 0.0;
    auto U = [&](const std::vector<int>& n) {
        const double v = u(std::span<const int>(n));
        max_u = std::max(max_u, std::abs(v));
        return v;
    };
    for (const auto& n : diagonal_tuples) {
        const int k = static_cast<int>(n.size());
        for (int i = 0; i + 1 < k; ++i) {
            if (n[static_cast<std::size_t>(i)] != n[static_cast<std::size_t>(i + 1)]) continue;
            // [Delta^{2,0}]_i f = 2(f at n_i - 1) - 2 f; the -2f parts cancel in
            // the difference, leaving 2(u(.., n_i - 1, ..) - u(.., n_{i+1} - 1, ..))
            std::vector<int> na = n, nb = n;
            na[static_cast<std::size_t>(i)] -= 1;
            nb[static_cast<std::size_t>(i + 1)] -= 1;
            const double r = 2.0 * (U(na) - U(nb)) - 2.0 * b2 * U(n);
            max_res = std::max(max_res, std::abs(r));
        }
    }
    return max_res / max_u;
}

}  // namespace pam
