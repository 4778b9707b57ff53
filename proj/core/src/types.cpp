#include "pamlyap/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pam {

ModelParams::ModelParams(double p, double q, double beta) : p_(p), q_(q), beta_(beta) {
    if (!(p >= 0.0) || !(q >= 0.0)) throw std::invalid_argument("ModelParams: p, q must be >= 0");
    if (std::abs(p + q - 2.0) > 1e-12)
        throw std::invalid_argument("ModelParams: p + q = 2 required");
    if (!(beta >= 0.0)) throw std::invalid_argument("ModelParams: beta >= 0 required");
    q_ = 2.0 - p_;  // make the constraint exact after the tolerance check
}

OrderedTuple::OrderedTuple(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("OrderedTuple: k >= 1 required");
    for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
        if (entries_[i] < entries_[i + 1])
            throw std::invalid_argument("OrderedTuple: entries must be weakly decreasing");
    if (entries_.back() < 0) throw std::invalid_argument("OrderedTuple: entries must be >= 0");
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("Partition: at least one part");
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
        if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
            throw std::invalid_argument("Partition: parts must be descending");
    }
}

int Partition::weight() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::vector<int> Partition::multiplicities() const {
    std::vector<int> m(static_cast<std::size_t>(parts_.front()), 0);
    for (int part : parts_) m[static_cast<std::size_t>(part - 1)] += 1;
    return m;
}

double Partition::symmetry_factor() const {
    double f = 1.0;
    for (int m : multiplicities())
        for (int j = 2; j <= m; ++j) f /= j;
    return f;
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    os << ')';
    return os.str();
}

namespace {
void extend(std::vector<Partition>& out, std::vector<int>& stack, int remaining, int max_part) {
    if (remaining == 0) {
        out.emplace_back(stack);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        stack.push_back(part);
        extend(out, stack, remaining - part, part);
        stack.pop_back();
    }
}
}  // namespace

std::vector<Partition> enumerate_partitions(int k) {
    if (k < 1 || k > 12) throw std::invalid_argument("enumerate_partitions: 1 <= k <= 12");
    std::vector<Partition> out;
    std::vector<int> stack;
    extend(out, stack, k, k);
    return out;
}

const char* method_name(Method m) {
    switch (m) {
        case Method::quadrature: return "quadrature";
        case Method::ode: return "ode";
        case Method::partition: return "partition";
        case Method::montecarlo: return "mc";
        case Method::closed_form: return "closed-form";
    }
    return "?";
}

}  // namespace pam
