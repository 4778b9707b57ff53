#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pamlyap/log_domain.hpp"

namespace pam {

// Numerical failure (non-convergence, pole separation, window too small, ...).
// Precondition violations throw std::invalid_argument instead.
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

// Jump rates p (to n-1) and q (to n+1) with p+q=2, noise strength beta >= 0.
// Drift velocity of the first moment is p-q.
class ModelParams {
public:
    ModelParams(double p, double q, double beta);

    double p() const { return p_; }
    double q() const { return q_; }
    double beta() const { return beta_; }
    double beta2() const { return beta_ * beta_; }
    double drift() const { return p_ - q_; }
    bool one_sided() const { return q_ == 0.0; }

private:
    double p_;
    double q_;
    double beta_;
};

// Point of the one-sided index cone W^k_{>=0}: n1 >= n2 >= ... >= nk >= 0.
class OrderedTuple {
public:
    explicit OrderedTuple(std::vector<int> entries);
    OrderedTuple(std::initializer_list<int> entries)
        : OrderedTuple(std::vector<int>(entries)) {}

    int k() const { return static_cast<int>(entries_.size()); }
    const std::vector<int>& entries() const { return entries_; }
    int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

private:
    std::vector<int> entries_;
};

// Two-sided pair n1 >= n2, entries of arbitrary sign (two-point formula domain).
struct OrderedPair {
    int n1;
    int n2;
    OrderedPair(int a, int b) : n1(a), n2(b) {
        if (a < b) throw std::invalid_argument("OrderedPair requires n1 >= n2");
    }
};

// Integer partition lambda |- k, parts descending.
class Partition {
public:
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts)
        : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int weight() const;
    // multiplicity m_i = #{parts == i}, i from 1 to max part
    std::vector<int> multiplicities() const;
    // 1/(m_1! m_2! ...)
    double symmetry_factor() const;
    std::string to_string() const;

private:
    std::vector<int> parts_;
};

// All partitions of k, each exactly once, reverse-lexicographic ((k) first).
// Desk scale: 1 <= k <= 12.
std::vector<Partition> enumerate_partitions(int k);

enum class Method { quadrature, ode, partition, montecarlo, closed_form };

const char* method_name(Method m);

// Moment value carried in log-magnitude + phase form; the linear value
// is a convenience that may overflow to inf.
struct MomentResult {
    LogComplex value;
    Method method = Method::quadrature;
    double error_estimate = 0.0;  // relative, from the convergence loop

    double linear() const { return value.real_part(); }
    double log_magnitude() const { return value.log_mag; }
};

}  // namespace pam
