#include "prodgin/tailbounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prodgin::tailbounds {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

ChernoffBound chernoff_cn(std::int64_t m, double x, const scaling::ScalingConstants& sc) {
    require(m >= 0, "chernoff_cn: m must be >= 0");
    require(std::isfinite(x), "chernoff_cn: x must be finite");
    ChernoffBound out;
    out.m = m;
    out.x = x;
    const double s = sc.a_n + sc.b_n * x;
    if (m >= 1) {
        const double md = static_cast<double>(m);
        out.branch = ChernoffBranch::PositiveM;
        out.bound = clip01(std::exp(-md * md / (16.0 * sc.alpha_n) -
                                    md * s / (4.0 * std::sqrt(sc.alpha_n))));
        return out;
    }
    require(x > 0.0, "chernoff_cn: the m = 0 upper bound requires x > 0");
    out.branch = ChernoffBranch::MZeroUpper;
    out.bound = clip01(std::exp(-0.25 * s * s));
    return out;
}

double chernoff_lower_cn0(double x, const scaling::ScalingConstants& sc) {
    require(std::isfinite(x), "chernoff_lower_cn0: x must be finite");
    const double s = sc.a_n + sc.b_n * x;
    require(s < 0.0, "chernoff_lower_cn0: requires a_n + b_n x < 0");
    return clip01(std::exp(-s * s / 3.0));
}

// The lemma's two displays hold asymptotically; as a usable certificate we
// return the sum of both closed forms with their cushions, which dominates
// the exact sum for every (c, gamma, s) with s >= 2:
//   sum_{m >= L} g(s(m)) <= g(s(L)) + gamma * int_{s(L)}^inf g
//                        <= e^{-c s^2}/s + gamma e^{-c s^2}/(2 c s^2).
// A single branch with the fixed gate gamma >= 10 is not a valid upper bound
// near the gate (e.g. c = 0.7, gamma = 10, s = 10), hence the combination.
GeomTailBound geometric_tail_sum(std::int64_t L, double x, double c, double gamma, double a,
                                 double b) {
    require(L >= 0, "geometric_tail_sum: L must be >= 0");
    require(c > 0.0 && std::isfinite(c), "geometric_tail_sum: c must be positive");
    require(gamma > 0.0 && std::isfinite(gamma), "geometric_tail_sum: gamma must be positive");
    const double s = static_cast<double>(L) / gamma + a + b * x;
    require(s >= 2.0, "geometric_tail_sum: requires s(L, x) >= 2");
    const double e = std::exp(-c * s * s);
    const double large_part = 1.5 * gamma * e / (2.0 * c * s * s);
    const double bounded_part = 3.0 * e / s;
    GeomTailBound out;
    out.bound = large_part + bounded_part;
    out.regime = gamma >= 10.0 ? TailRegime::LargeGamma : TailRegime::BoundedGamma;
    return out;
}

}  // namespace prodgin::tailbounds
