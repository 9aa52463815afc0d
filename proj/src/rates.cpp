#include "prodgin/rates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "prodgin/detail/numeric.hpp"
#include "prodgin/limits.hpp"
#include "prodgin/specfun.hpp"
#include "prodgin/util.hpp"

namespace prodgin::rates {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

// ScalingConstants carrier for evaluating q1/q2 at the limit constants
// (a, b, alpha), per the Phi_alpha convention.
scaling::ScalingConstants limit_constants(double alpha) {
    scaling::Ensemble unit(1, 1);
    return scaling::constants_for(unit, scaling::RegimeDecl::finite(alpha, 0.0));
}

double hazard(double v) {
    // phi(v)/Phi(v)
    return std::exp(-0.5 * v * v - constants::log_sqrt_2pi - specfun::log_norm_cdf(v));
}

}  // namespace

std::string RateReport::to_json() const {
    nlohmann::json j;
    switch (regime.kind) {
        case scaling::RegimeKind::AlphaZero: j["regime"] = "zero"; break;
        case scaling::RegimeKind::AlphaFinite: j["regime"] = "finite"; break;
        case scaling::RegimeKind::AlphaInfinite: j["regime"] = "infinite"; break;
    }
    if (regime.alpha) j["alpha"] = *regime.alpha;
    if (regime.beta) j["beta"] = *regime.beta;
    if (regime.eta) j["eta"] = *regime.eta;
    j["metric"] = metric == RateMetric::BerryEsseen ? "berry_esseen" : "w1";
    j["theoretical"] = theoretical;
    for (const auto& [k, v] : components) j["components"][k] = v;
    return j.dump(2);
}

double gaussian_weighted_sup(double h1, double h2) {
    require(h1 >= 0.0 && h2 >= 0.0 && std::isfinite(h1) && std::isfinite(h2),
            "gaussian_weighted_sup: h1, h2 must be finite and nonnegative");
    require(h1 > 0.0 || h2 > 0.0, "gaussian_weighted_sup: h1 and h2 cannot both be zero");
    const double r = std::sqrt(h1 * h1 + 4.0 * h2 * h2);
    return (h1 + r) / (2.0 * constants::sqrt_2pi) * std::exp(h1 / (h1 + r) - 0.5);
}

SeriesValue finite_alpha_series(double alpha, double coef1, double coef2, double x, double tol) {
    require(std::isfinite(alpha) && alpha > 0.0, "finite_alpha_series: alpha must be positive");
    require(tol > 0.0, "finite_alpha_series: tol must be positive");
    const scaling::ScalingConstants sc = limit_constants(alpha);
    const double sqrt_alpha = std::sqrt(alpha);
    const double s = *sc.a + *sc.b * x;

    // |coef1 q1 + coef2 q2| <= p2 v^2 + p1 |v| + p0 from the rewriting
    // q1 = A v^2 - B v + C with A = sqrt(alpha)/6, B = (sqrt(alpha) s - 1/2)/2,
    // C = sqrt(alpha) s^2/2 - s/2 - sqrt(alpha)/6, and
    // q2 = c1 - c2 x - (v - s)/(2 alpha).
    const double A = sqrt_alpha / 6.0;
    const double B = 0.5 * (sqrt_alpha * s - 0.5);
    const double C = 0.5 * sqrt_alpha * s * s - 0.5 * s - sqrt_alpha / 6.0;
    const double p2 = std::fabs(coef1) * A;
    const double p1 = std::fabs(coef1) * std::fabs(B) + std::fabs(coef2) / (2.0 * alpha);
    const double p0 =
        std::fabs(coef1) * std::fabs(C) +
        std::fabs(coef2) * (std::fabs(*sc.c1) + std::fabs(*sc.c2 * x) + std::fabs(s) / (2.0 * alpha));

    KahanSum sum;
    SeriesValue out;
    for (std::int64_t m = 0;; ++m) {
        const double v = static_cast<double>(m) / sqrt_alpha + s;
        if (v >= 2.0) {
            // Dropped tail: 1.03 sum_{m' >= m} P(v') phi(v') with
            // sum <= P(v) phi(v) + gamma * int_v^inf P(t) phi(t) dt, doubled.
            const double mills = specfun::mills_upper_tail(v);
            const double pdf = specfun::norm_pdf(v);
            const double integral = p2 * (v * pdf + mills) + p1 * pdf + p0 * mills;
            const double bound =
                2.0 * 1.03 * ((p2 * v * v + p1 * v + p0) * pdf + sqrt_alpha * integral);
            if (bound <= tol) {
                out.tail_bound = bound;
                break;
            }
        }
        const double term = (coef1 * scaling::q1(m, x, sc) + coef2 * scaling::q2(m, x, sc)) *
                            hazard(v);
        sum.add(term);
        out.terms = m + 1;
        if (m > 100000000) throw NumericalFailure("finite_alpha_series: did not truncate");
    }
    out.value = sum.value();
    return out;
}

FiniteSup finite_alpha_sup(double alpha, double coef1, double coef2, const GridPolicy& grid,
                           unsigned threads) {
    grid.validate();
    std::int64_t max_terms = 0;
    std::mutex terms_mutex;
    auto f = [&](double x) {
        const SeriesValue sv = finite_alpha_series(alpha, coef1, coef2, x, grid.m_truncation_tol);
        {
            std::lock_guard<std::mutex> lock(terms_mutex);
            max_terms = std::max(max_terms, sv.terms);
        }
        const double w = limits::cdf(limits::LimitLaw::phi_alpha(alpha), x).value;
        return w * std::fabs(sv.value);
    };
    const detail::ScanResult r = detail::scan_sup(f, grid, threads);
    FiniteSup out;
    out.value = r.value;
    out.argmax = r.argmax;
    out.max_terms = max_terms;
    return out;
}

namespace {

void fill_zero_bullets(const scaling::Ensemble& e, const scaling::RegimeDecl& decl,
                       RateReport& rep) {
    const double n = static_cast<double>(e.n);
    const double beta = *decl.beta;
    rep.components["beta"] = beta;
    const double sqrt2pie = std::sqrt(2.0 * M_PI * M_E);
    double bullet;
    if (std::isinf(beta)) {
        bullet = std::sqrt(e.alpha_n()) / constants::sqrt_2pi;
        rep.components["bullet"] = 3.0;  // beta = +inf branch
    } else if (beta > 0.0) {
        const double sb = std::sqrt(beta);
        bullet = (2.0 * sb + std::sqrt(4.0 * beta + 1.0)) / (4.0 * sqrt2pie * n) *
                 std::exp(2.0 * sb / (std::sqrt(4.0 * beta + 1.0) + 2.0 * sb));
        rep.components["bullet"] = 2.0;
    } else {
        bullet = 1.0 / (4.0 * sqrt2pie * n);
        rep.components["bullet"] = 1.0;
    }
    rep.components["bullet_value"] = bullet;
}

}  // namespace

RateReport be_rate(const scaling::Ensemble& e, const scaling::RegimeDecl& decl,
                   const GridPolicy& grid, unsigned threads) {
    decl.validate();
    grid.validate();
    RateReport rep;
    rep.regime = decl;
    rep.metric = RateMetric::BerryEsseen;
    const double n = static_cast<double>(e.n);
    const double alpha_n = e.alpha_n();
    switch (decl.kind) {
        case scaling::RegimeKind::AlphaZero: {
            const double h1 = std::sqrt(alpha_n);
            const double h2 = 1.0 / (4.0 * n);
            rep.theoretical = gaussian_weighted_sup(h1, h2);
            const double r = std::sqrt(h1 * h1 + 4.0 * h2 * h2);
            rep.components["sup_value"] = rep.theoretical;
            rep.components["sup_argmax"] = (h1 - r) / (2.0 * h2);
            rep.components["alpha_n"] = alpha_n;
            fill_zero_bullets(e, decl, rep);
            return rep;
        }
        case scaling::RegimeKind::AlphaFinite: {
            const double alpha = *decl.alpha;
            const double eta = *decl.eta;
            const double drift = alpha_n - alpha;
            const FiniteSup sup = finite_alpha_sup(alpha, 1.0 / n, drift, grid, threads);
            rep.theoretical = sup.value;
            rep.components["sup_value"] = sup.value;
            rep.components["sup_argmax"] = sup.argmax;
            rep.components["series_terms_used"] = static_cast<double>(sup.max_terms);
            rep.components["eta"] = eta;
            rep.components["alpha_n"] = alpha_n;
            rep.components["alpha_n_minus_alpha"] = drift;
            // Informational: the Theorem bullet the declared eta selects.
            if (std::isinf(eta)) {
                const FiniteSup s2 = finite_alpha_sup(alpha, 0.0, 1.0, grid, threads);
                rep.components["bullet_value"] = std::fabs(drift) * s2.value;
            } else if (eta != 0.0) {
                const FiniteSup s2 = finite_alpha_sup(alpha, 1.0 / n, eta / n, grid, threads);
                rep.components["bullet_value"] = s2.value;
            } else {
                const FiniteSup s2 = finite_alpha_sup(alpha, 1.0 / n, 0.0, grid, threads);
                rep.components["bullet_value"] = s2.value;
            }
            return rep;
        }
        case scaling::RegimeKind::AlphaInfinite: {
            require(alpha_n >= 10.0, "be_rate: AlphaInfinite requires alpha_n >= 10");
            const double la = std::log(alpha_n);
            rep.theoretical = std::log(la) * std::log(la) / (2.0 * M_E * la);
            rep.components["alpha_n"] = alpha_n;
            rep.components["log_alpha_n"] = la;
            rep.components["loglog_alpha_n"] = std::log(la);
            return rep;
        }
    }
    throw std::domain_error("be_rate: unknown regime");
}

RateReport w1_rate(const scaling::Ensemble& e, const scaling::RegimeDecl& decl,
                   const GridPolicy& grid, unsigned threads) {
    decl.validate();
    grid.validate();
    RateReport rep;
    rep.regime = decl;
    rep.metric = RateMetric::W1;
    const double n = static_cast<double>(e.n);
    const double alpha_n = e.alpha_n();
    switch (decl.kind) {
        case scaling::RegimeKind::AlphaZero: {
            const double c = 4.0 * n * std::sqrt(alpha_n);
            rep.theoretical = std::sqrt(alpha_n) * (2.0 * specfun::norm_cdf(c) - 1.0) +
                              specfun::norm_pdf(c) / (2.0 * n);
            rep.components["fold_point"] = c;
            rep.components["alpha_n"] = alpha_n;
            fill_zero_bullets(e, decl, rep);
            return rep;
        }
        case scaling::RegimeKind::AlphaFinite: {
            const double alpha = *decl.alpha;
            const double drift = alpha_n - alpha;
            std::int64_t max_terms = 0;
            auto f = [&](double x) {
                const SeriesValue sv =
                    finite_alpha_series(alpha, 1.0 / n, drift, x, grid.m_truncation_tol);
                max_terms = std::max(max_terms, sv.terms);
                const double w = limits::cdf(limits::LimitLaw::phi_alpha(alpha), x).value;
                return w * std::fabs(sv.value);
            };
            const detail::SimpsonResult sr =
                detail::adaptive_simpson(f, grid.x_lo, grid.x_hi, 1e-8);
            rep.theoretical = sr.value;
            rep.components["integrand_evals"] = static_cast<double>(sr.evals);
            rep.components["series_terms_used"] = static_cast<double>(max_terms);
            rep.components["endpoint_lo"] = f(grid.x_lo);
            rep.components["endpoint_hi"] = f(grid.x_hi);
            rep.components["eta"] = *decl.eta;
            rep.components["alpha_n_minus_alpha"] = drift;
            return rep;
        }
        case scaling::RegimeKind::AlphaInfinite: {
            require(alpha_n >= 10.0, "w1_rate: AlphaInfinite requires alpha_n >= 10");
            const double la = std::log(alpha_n);
            rep.theoretical = std::log(la) * std::log(la) / (2.0 * la);
            rep.components["alpha_n"] = alpha_n;
            return rep;
        }
    }
    throw std::domain_error("w1_rate: unknown regime");
}

Remark4Bounds remark4_upper_bounds(double alpha) {
    require(std::isfinite(alpha) && alpha > 0.0, "remark4_upper_bounds: alpha must be positive");
    Remark4Bounds out;
    const double sa = std::sqrt(alpha);
    out.bound_q1 = 4.0 / 3.0 * (alpha + sa + 1.0);
    const double c1 = scaling::c1_coef(alpha);
    const double c2 = scaling::c2_coef(alpha);
    const double b = scaling::b_coef(alpha);
    out.bound_q2 = 2.0 / (M_E * std::log(2.0)) * (c1 + c2 * (alpha - 1.0) / b + 1.0 / alpha) *
                   (1.0 + sa);
    return out;
}

double transition_rate(double alpha, TransitionSide side) {
    require(std::isfinite(alpha) && alpha > 0.0, "transition_rate: alpha must be positive");
    if (side == TransitionSide::ToNormal) {
        require(alpha <= 0.01, "transition_rate: ToNormal requires alpha <= 0.01");
        return std::sqrt(alpha / (2.0 * M_PI));
    }
    require(alpha >= 100.0, "transition_rate: ToGumbel requires alpha >= 100");
    const double la = std::log(alpha);
    return std::log(la) * std::log(la) / (2.0 * M_E * la);
}

}  // namespace prodgin::rates
