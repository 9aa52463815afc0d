#include "prodgin/edgeworth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prodgin/specfun.hpp"
#include "prodgin/util.hpp"

namespace prodgin::edgeworth {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

CnApprox clip01(double v) {
    CnApprox out;
    out.value = std::clamp(v, 0.0, 1.0);
    out.clipped = out.value != v;
    return out;
}

}  // namespace

LogGammaCumulants cumulants(std::int64_t j) {
    require(j >= 1, "cumulants: j must be >= 1");
    LogGammaCumulants c;
    c.j = j;
    const double jd = static_cast<double>(j);
    c.mu = specfun::digamma(jd);
    c.sigma2 = specfun::polygamma(1, jd);
    const double psi2 = specfun::polygamma(2, jd);
    const double psi3 = specfun::polygamma(3, jd);
    c.gamma1 = psi2 / (6.0 * c.sigma2 * std::sqrt(c.sigma2));
    c.gamma2 = psi3 / (24.0 * c.sigma2 * c.sigma2);
    return c;
}

double log_gamma_mgf(std::int64_t j, double lambda) {
    require(j >= 1, "log_gamma_mgf: j must be >= 1");
    const double jd = static_cast<double>(j);
    require(jd + lambda > 0.0, "log_gamma_mgf: j + lambda must be positive");
    return std::exp(specfun::log_gamma(jd + lambda) - specfun::log_gamma(jd));
}

CnQuery CnQuery::make(const scaling::Ensemble& e, std::int64_t m, double x) {
    require(m >= 0 && m <= e.n - 1, "CnQuery: requires 0 <= m <= n-1");
    require(std::isfinite(x), "CnQuery: x must be finite");
    CnQuery q;
    q.e = e;
    q.m = m;
    q.x = x;
    const double alpha_n = e.alpha_n();
    const double s = scaling::a_coef(alpha_n) + scaling::b_coef(alpha_n) * x;
    q.threshold = static_cast<double>(e.k) * specfun::digamma(static_cast<double>(e.n)) +
                  s / std::sqrt(alpha_n);
    return q;
}

EdgeworthCdf edgeworth_cdf(std::int64_t j, std::int64_t k, double x_n) {
    require(j >= 1, "edgeworth_cdf: j must be >= 1");
    require(k >= 2, "edgeworth_cdf: k must be >= 2");
    require(std::isfinite(x_n), "edgeworth_cdf: x_n must be finite");
    const LogGammaCumulants c = cumulants(j);
    const double raw = specfun::norm_cdf(x_n) +
                       c.gamma1 * (1.0 - x_n * x_n) * specfun::norm_pdf(x_n) /
                           std::sqrt(static_cast<double>(k));
    EdgeworthCdf out;
    out.value = std::clamp(raw, 0.0, 1.0);
    out.clipped = out.value != raw;
    out.outside_stated_range = std::fabs(x_n) > std::pow(static_cast<double>(j), 1.0 / 6.0);
    return out;
}

double exact_cn_k1(const CnQuery& q) {
    require(q.e.k == 1, "exact_cn_k1: requires k = 1");
    const double j = static_cast<double>(q.e.n - q.m);
    return specfun::reg_gamma_q(j, std::exp(q.threshold));
}

CnApprox approx_cn_infinite(const CnQuery& q) {
    const double alpha_n = q.e.alpha_n();
    const double u = static_cast<double>(q.m) / std::sqrt(alpha_n) + scaling::a_coef(alpha_n) +
                     scaling::b_coef(alpha_n) * q.x;
    require(u >= 1.5, "approx_cn_infinite: requires u_n(m, x) >= 1.5");
    return clip01(specfun::norm_pdf(u) / u);
}

CnApprox approx_cn_finite(const CnQuery& q, const scaling::RegimeDecl& decl) {
    require(decl.kind == scaling::RegimeKind::AlphaFinite,
            "approx_cn_finite: requires AlphaFinite regime");
    const scaling::ScalingConstants sc = scaling::constants_for(q.e, decl);
    const double v = scaling::v_alpha(q.m, q.x, sc);
    const double correction = scaling::q1(q.m, q.x, sc) / static_cast<double>(q.e.n) +
                              (sc.alpha_n - *decl.alpha) * scaling::q2(q.m, q.x, sc);
    return clip01(specfun::mills_upper_tail(v) - specfun::norm_pdf(v) * correction);
}

CnApprox approx_cn_zero(const CnQuery& q) {
    require(q.m == 0, "approx_cn_zero: requires m = 0");
    const double alpha_n = q.e.alpha_n();
    const double n = static_cast<double>(q.e.n);
    return clip01(specfun::mills_upper_tail(q.x) -
                  (std::sqrt(alpha_n) - q.x / (4.0 * n)) * specfun::norm_pdf(q.x));
}

double log_cdf_approx_infinite(double x, const scaling::Ensemble& e) {
    const double alpha_n = e.alpha_n();
    require(alpha_n >= 10.0, "log_cdf_approx_infinite: requires alpha_n >= 10");
    require(std::isfinite(x), "log_cdf_approx_infinite: x must be finite");
    const double big_l = std::log(alpha_n + M_E);
    const double l2 = std::log(constants::sqrt_2pi *
                               std::log(alpha_n + constants::e_pow_inv_sqrt_2pi));
    const double d = (x - l2) / big_l;
    const double denom = (1.0 + d) * (1.0 + d);
    return -std::exp(-x - 0.5 * (x - l2) * (x - l2) / big_l) / denom;
}

}  // namespace prodgin::edgeworth
