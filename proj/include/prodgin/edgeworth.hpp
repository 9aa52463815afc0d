#pragma once

#include <cstdint>

#include "prodgin/scaling.hpp"

namespace prodgin::edgeworth {

// Cumulant data of log S with S ~ Gamma(j, 1).
struct LogGammaCumulants {
    std::int64_t j = 1;
    double mu = 0.0;      // psi(j)
    double sigma2 = 0.0;  // psi'(j)
    double gamma1 = 0.0;  // skewness correction psi''(j) / (6 psi'(j)^{3/2})
    double gamma2 = 0.0;  // kurtosis correction psi'''(j) / (24 psi'(j)^2)
};

LogGammaCumulants cumulants(std::int64_t j);

// E[S^lambda] = Gamma(j + lambda)/Gamma(j); test helper for the MGF identity.
double log_gamma_mgf(std::int64_t j, double lambda);

// One tail probability c_n(m, x) = P(log Y_{n-m} > threshold), with the
// threshold k psi(n) + (a_n + b_n x)/sqrt(alpha_n) derived at construction.
struct CnQuery {
    scaling::Ensemble e;
    std::int64_t m = 0;
    double x = 0.0;
    double threshold = 0.0;

    static CnQuery make(const scaling::Ensemble& e, std::int64_t m, double x);
};

// Approximation result; `clipped` reports whether the [0,1] clip fired.
struct CnApprox {
    double value = 0.0;
    bool clipped = false;
};

struct EdgeworthCdf {
    double value = 0.0;
    bool clipped = false;
    bool outside_stated_range = false;  // |x_n| > n^{1/6}; computed anyway
};

// One-term Edgeworth expansion of the standardized sum of k i.i.d. copies of
// log S with S ~ Gamma(j, 1): Phi(x) + gamma1(j) (1 - x^2) phi(x) / sqrt(k).
// The denominator normalizes by sqrt(k Var log S), i.e. sqrt(k psi'(j)).
EdgeworthCdf edgeworth_cdf(std::int64_t j, std::int64_t k, double x_n);

// Exact value at k = 1: c_n(m, x) = Q(n - m, e^threshold).
double exact_cn_k1(const CnQuery& q);

// Tail asymptotic phi(u)/u for the alpha -> infinity regime; requires
// u_n(m, x) >= 1.5.
CnApprox approx_cn_infinite(const CnQuery& q);

// Finite-alpha expansion 1 - Phi(v) - phi(v)(q1/n + (alpha_n - alpha) q2).
CnApprox approx_cn_finite(const CnQuery& q, const scaling::RegimeDecl& decl);

// alpha -> 0 expansion for m = 0: 1 - Phi(x) - (sqrt(alpha_n) - x/(4n)) phi(x).
CnApprox approx_cn_zero(const CnQuery& q);

// Leading log-CDF expression for the alpha -> infinity regime,
//   -exp(-x - (x - l2)^2 / (2 log(alpha_n + e))) / (1 + (x - l2)/log(alpha_n + e))^2
// with l2 = log(sqrt(2 pi) log(alpha_n + e^{1/sqrt(2 pi)})). Requires
// alpha_n >= 10.
double log_cdf_approx_infinite(double x, const scaling::Ensemble& e);

}  // namespace prodgin::edgeworth
