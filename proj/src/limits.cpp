#include "prodgin/limits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "prodgin/detail/numeric.hpp"
#include "prodgin/scaling.hpp"
#include "prodgin/specfun.hpp"
#include "prodgin/tailbounds.hpp"
#include "prodgin/util.hpp"

namespace prodgin::limits {

namespace {

constexpr double kTailTarget = 1e-14;

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

struct PhiAlphaParams {
    double alpha;
    double gamma;  // sqrt(alpha): 1/gamma is the spacing of v_alpha in m
    double a;
    double b;
};

PhiAlphaParams phi_alpha_params(double alpha) {
    require(std::isfinite(alpha) && alpha > 0.0, "phi_alpha: alpha must be positive");
    return {alpha, std::sqrt(alpha), scaling::a_coef(alpha), scaling::b_coef(alpha)};
}

// Upper bound on sum_{m >= M} -log Phi(v(m)). For v >= 2 each summand is at
// most 1.03 * (1 - Phi(v)) <= 1.03 * phi(v)/v, so the geometric summation
// bound with c = 1/2 applies.
double log_product_tail_bound(const PhiAlphaParams& p, double s0, std::int64_t M) {
    auto g = tailbounds::geometric_tail_sum(M, 0.0, 0.5, p.gamma, s0, 1.0);
    return 1.03 * constants::inv_sqrt_2pi * g.bound;
}

// Smallest M (>= the s >= 2 threshold) whose dropped tail certifies below
// kTailTarget. Deterministic; independent of the later summation.
std::int64_t certified_terms(const PhiAlphaParams& p, double s0) {
    const std::int64_t m_floor =
        std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(p.gamma * (2.0 - s0))));
    std::int64_t hi = std::max<std::int64_t>(
        m_floor, static_cast<std::int64_t>(std::ceil(p.gamma * (std::max(0.0, -s0) + 9.0))));
    while (log_product_tail_bound(p, s0, hi) > kTailTarget) {
        hi += std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(2.0 * p.gamma)));
    }
    std::int64_t lo = m_floor;
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (log_product_tail_bound(p, s0, mid) <= kTailTarget)
            hi = mid;
        else
            lo = mid + 1;
    }
    return hi;
}

}  // namespace

LimitLaw LimitLaw::std_normal() { return LimitLaw{LawKind::StdNormal, 0.0}; }
LimitLaw LimitLaw::gumbel() { return LimitLaw{LawKind::Gumbel, 0.0}; }
LimitLaw LimitLaw::phi_alpha(double alpha) {
    require(std::isfinite(alpha) && alpha > 0.0, "LimitLaw: PhiAlpha requires alpha > 0");
    return LimitLaw{LawKind::PhiAlpha, alpha};
}

std::string LimitLaw::name() const {
    switch (kind) {
        case LawKind::StdNormal: return "std_normal";
        case LawKind::Gumbel: return "gumbel";
        case LawKind::PhiAlpha: return "phi_alpha(" + std::to_string(alpha) + ")";
    }
    return "?";
}

LogCdfResult log_cdf_phi_alpha(double alpha, double x) {
    require(std::isfinite(x), "log_cdf_phi_alpha: x must be finite");
    const PhiAlphaParams p = phi_alpha_params(alpha);
    const double s0 = p.a + p.b * x;
    const std::int64_t terms = certified_terms(p, s0);
    KahanSum sum;
    for (std::int64_t m = 0; m < terms; ++m) {
        sum.add(specfun::log_norm_cdf(static_cast<double>(m) / p.gamma + s0));
    }
    LogCdfResult out;
    out.log_value = sum.value();
    out.cert.terms_used = terms;
    out.cert.tail_bound = log_product_tail_bound(p, s0, terms);
    return out;
}

CdfResult cdf(const LimitLaw& law, double x) {
    require(std::isfinite(x), "cdf: x must be finite");
    CdfResult out;
    switch (law.kind) {
        case LawKind::StdNormal:
            out.value = specfun::norm_cdf(x);
            return out;
        case LawKind::Gumbel:
            out.value = std::exp(-std::exp(-x));
            return out;
        case LawKind::PhiAlpha: {
            const LogCdfResult lr = log_cdf_phi_alpha(law.alpha, x);
            out.value = std::exp(lr.log_value);
            out.cert = lr.cert;
            return out;
        }
    }
    throw std::domain_error("cdf: unknown law");
}

CdfResult log_density_phi_alpha(double alpha, double x) {
    require(std::isfinite(x), "log_density_phi_alpha: x must be finite");
    const PhiAlphaParams p = phi_alpha_params(alpha);
    const double s0 = p.a + p.b * x;
    const std::int64_t terms = certified_terms(p, s0);
    KahanSum sum;
    for (std::int64_t m = 0; m < terms; ++m) {
        const double v = static_cast<double>(m) / p.gamma + s0;
        const double log_hazard =
            -0.5 * v * v - constants::log_sqrt_2pi - specfun::log_norm_cdf(v);
        sum.add(std::exp(log_hazard));
    }
    // Dropped tail: sum phi(v) <= phi(s)(1 + gamma/s) at the cut, and
    // phi/Phi <= 1.03 phi for v >= 2.
    const double s_cut = static_cast<double>(terms) / p.gamma + s0;
    const double tail = 1.03 * specfun::norm_pdf(s_cut) * (1.0 + p.gamma / s_cut);
    CdfResult out;
    out.value = p.b * sum.value();
    out.cert.terms_used = terms;
    out.cert.tail_bound = p.b * tail;
    return out;
}

SupDistance sup_distance(const LimitLaw& a, const LimitLaw& b, const GridPolicy& grid,
                         unsigned threads) {
    auto g = [&](double x) { return std::fabs(cdf(a, x).value - cdf(b, x).value); };
    const detail::ScanResult r = detail::scan_sup(g, grid, threads);
    return SupDistance{r.value, r.argmax};
}

}  // namespace prodgin::limits
