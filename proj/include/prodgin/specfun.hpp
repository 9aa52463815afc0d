#pragma once

#include <cstdint>

namespace prodgin::specfun {

// Accuracy targets shared by the iterative kernels below. The defaults are
// what the rest of the project assumes; tighter values are allowed.
struct Accuracy {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    void validate() const;  // throws std::domain_error on nonsense values
};

// log Gamma(z) for z > 0. Stirling series above 10, upward recurrence below.
double log_gamma(double z);

// psi(z) = Gamma'(z)/Gamma(z) for z > 0.
double digamma(double z);

// psi^(order)(z) for order in {1,2,3}, z > 0.
double polygamma(int order, double z);

double norm_pdf(double x);
double norm_cdf(double x);

// log Phi(x), stable over the whole real line (asymptotic branch deep left).
double log_norm_cdf(double x);

// 1 - Phi(t) without cancellation; relative accuracy holds far into the tail.
double mills_upper_tail(double t);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a).
// Supported for a in (0, 1e7], x >= 0.
double reg_gamma_q(double a, double x);

// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double reg_gamma_p(double a, double x);

// log(x^a e^{-x} / Gamma(a)), evaluated without the catastrophic cancellation
// of the three naive terms (each can reach ~1e8 while the result is O(1)).
double log_gamma_term(double a, double x);

}  // namespace prodgin::specfun
