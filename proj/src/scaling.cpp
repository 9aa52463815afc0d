#include "prodgin/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include "prodgin/specfun.hpp"
#include "prodgin/util.hpp"

namespace prodgin::scaling {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

double w_fn(double t) { return 2.0 * t * std::log(t); }

}  // namespace

Ensemble::Ensemble(std::int64_t n_, std::int64_t k_) : n(n_), k(k_) {
    require(n >= 1 && k >= 1, "Ensemble: n and k must be >= 1");
}

RegimeDecl RegimeDecl::zero(double beta) {
    RegimeDecl d;
    d.kind = RegimeKind::AlphaZero;
    d.beta = beta;
    d.validate();
    return d;
}

RegimeDecl RegimeDecl::finite(double alpha, double eta) {
    RegimeDecl d;
    d.kind = RegimeKind::AlphaFinite;
    d.alpha = alpha;
    d.eta = eta;
    d.validate();
    return d;
}

RegimeDecl RegimeDecl::infinite() {
    RegimeDecl d;
    d.kind = RegimeKind::AlphaInfinite;
    return d;
}

void RegimeDecl::validate() const {
    switch (kind) {
        case RegimeKind::AlphaZero:
            require(beta.has_value(), "RegimeDecl: AlphaZero requires beta");
            require(!alpha.has_value() && !eta.has_value(),
                    "RegimeDecl: alpha/eta are AlphaFinite-only");
            require(*beta >= 0.0, "RegimeDecl: beta must be >= 0 (may be +inf)");
            break;
        case RegimeKind::AlphaFinite:
            require(alpha.has_value() && eta.has_value(),
                    "RegimeDecl: AlphaFinite requires alpha and eta");
            require(std::isfinite(*alpha) && *alpha > 0.0,
                    "RegimeDecl: alpha must be finite and positive");
            require(!beta.has_value(), "RegimeDecl: beta is AlphaZero-only");
            break;
        case RegimeKind::AlphaInfinite:
            require(!alpha.has_value() && !beta.has_value() && !eta.has_value(),
                    "RegimeDecl: AlphaInfinite takes no parameters");
            break;
    }
}

double a_coef(double alpha) {
    const double e1 = constants::e_pow_inv_sqrt_2pi;
    return std::sqrt(std::log(alpha + 1.0)) -
           std::log(constants::sqrt_2pi * std::log(alpha + e1)) /
               std::sqrt(std::log(alpha + M_E));
}

double b_coef(double alpha) { return 1.0 / std::sqrt(std::log(alpha + M_E)); }

// First Taylor coefficient of a_n in alpha_n: c1 = a'(alpha). The three terms
// mirror the displayed definition; the signs of the last two are those of the
// actual derivative (a_n = a + c1 (alpha_n - alpha) + O((alpha_n - alpha)^2)).
double c1_coef(double alpha) {
    const double e1 = constants::e_pow_inv_sqrt_2pi;
    const double sqrt_log_ae = std::sqrt(std::log(alpha + M_E));
    const double numer = std::log(constants::sqrt_2pi * std::log(alpha + e1));
    return std::sqrt(std::log(alpha + 1.0)) / w_fn(alpha + 1.0) -
           2.0 / (w_fn(alpha + e1) * sqrt_log_ae) +
           numer / (w_fn(alpha + M_E) * sqrt_log_ae);
}

double c2_coef(double alpha) {
    const double l = std::log(alpha + M_E);
    return 1.0 / (2.0 * (alpha + M_E) * l * std::sqrt(l));
}

ScalingConstants constants_for(const Ensemble& e, const RegimeDecl& decl) {
    decl.validate();
    ScalingConstants sc;
    sc.alpha_n = e.alpha_n();
    sc.a_n = a_coef(sc.alpha_n);
    sc.b_n = b_coef(sc.alpha_n);
    sc.centering = static_cast<double>(e.k) * specfun::digamma(static_cast<double>(e.n));
    sc.regime = decl;
    switch (decl.kind) {
        case RegimeKind::AlphaZero:
            sc.a = 0.0;
            sc.b = 1.0;
            break;
        case RegimeKind::AlphaFinite:
            sc.a = a_coef(*decl.alpha);
            sc.b = b_coef(*decl.alpha);
            sc.c1 = c1_coef(*decl.alpha);
            sc.c2 = c2_coef(*decl.alpha);
            break;
        case RegimeKind::AlphaInfinite:
            break;  // a, b, c1, c2 not applicable
    }
    return sc;
}

double u_n(std::int64_t m, double x, const ScalingConstants& sc) {
    require(m >= 0, "u_n: m must be >= 0");
    return static_cast<double>(m) / std::sqrt(sc.alpha_n) + sc.a_n + sc.b_n * x;
}

double v_alpha(std::int64_t m, double x, const ScalingConstants& sc) {
    require(m >= 0, "v_alpha: m must be >= 0");
    require(sc.regime.kind == RegimeKind::AlphaFinite, "v_alpha: requires AlphaFinite regime");
    return static_cast<double>(m) / std::sqrt(*sc.regime.alpha) + *sc.a + *sc.b * x;
}

double v_n(std::int64_t m, double x, const Ensemble& e, const ScalingConstants& sc) {
    require(m >= 0 && m <= e.n - 1, "v_n: requires 0 <= m <= n-1");
    const double n = static_cast<double>(e.n);
    const double k = static_cast<double>(e.k);
    const double j = n - static_cast<double>(m);
    const double trigamma_j = specfun::polygamma(1, j);
    const double mean_gap = k * (specfun::digamma(n) - specfun::digamma(j));
    return mean_gap / std::sqrt(k * trigamma_j) + (sc.a_n + sc.b_n * x) / std::sqrt(n * trigamma_j);
}

double q1(std::int64_t m, double x, const ScalingConstants& sc) {
    const double v = v_alpha(m, x, sc);
    const double alpha = *sc.regime.alpha;
    const double sqrt_alpha = std::sqrt(alpha);
    const double md = static_cast<double>(m);
    return (2.0 * alpha * (v * v - 1.0) - 3.0 * sqrt_alpha * (2.0 * md + 1.0) * v +
            6.0 * md * (md + 1.0)) /
           (12.0 * sqrt_alpha);
}

double q2(std::int64_t m, double x, const ScalingConstants& sc) {
    require(m >= 0, "q2: m must be >= 0");
    require(sc.regime.kind == RegimeKind::AlphaFinite, "q2: requires AlphaFinite regime");
    const double alpha = *sc.regime.alpha;
    return *sc.c1 - *sc.c2 * x - static_cast<double>(m) / (2.0 * alpha * std::sqrt(alpha));
}

double rescale_max(double raw_max_log_sq, const Ensemble& e, const ScalingConstants& sc) {
    require(std::isfinite(raw_max_log_sq), "rescale_max: input must be finite");
    (void)e;
    return (std::sqrt(sc.alpha_n) * (raw_max_log_sq - sc.centering) - sc.a_n) / sc.b_n;
}

double unscale(double x, const Ensemble& e, const ScalingConstants& sc) {
    (void)e;
    return sc.centering + (sc.a_n + sc.b_n * x) / std::sqrt(sc.alpha_n);
}

}  // namespace prodgin::scaling
