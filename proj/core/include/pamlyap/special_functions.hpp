#pragma once

namespace pam {

// Digamma Psi(x) = [log Gamma]'(x) for x > 0, abs error <= 1e-12.
// Recurrence shift to x >= 12, then the Bernoulli asymptotic series.
double digamma(double x);

// Trigamma Psi'(x) for x > 0, same scheme and accuracy.
double trigamma(double x);

// order 0 -> digamma, order 1 -> trigamma; other orders rejected.
double polygamma(int order, double x);

}  // namespace pam
