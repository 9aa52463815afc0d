#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "prodgin/limits.hpp"

namespace prodgin::empirics {

struct Ecdf {
    std::vector<double> sorted_values;

    static Ecdf from_samples(std::vector<double> values);
    std::int64_t count() const { return static_cast<std::int64_t>(sorted_values.size()); }
    // F_hat(x) = #{values <= x} / count, right-continuous.
    double operator()(double x) const;
};

enum class DistanceMethod { KolmogorovVsLaw, TwoSampleKS, W1VsLaw };

struct DistanceReport {
    DistanceMethod method = DistanceMethod::KolmogorovVsLaw;
    double statistic = 0.0;
    double argmax = 0.0;
    double dkw_radius_99 = 0.0;    // one-sample methods
    double critical_1pct = 0.0;    // two-sample KS
    std::int64_t count = 0;
    std::map<std::string, double> metadata;
    std::string to_json() const;
};

using CdfFn = std::function<double(double)>;

// Exact sup over jump points of |F_hat - F|; argmax is the data point where
// the sup is attained (smallest on ties). Requires count >= 100.
DistanceReport kolmogorov_distance(const Ecdf& ecdf, const CdfFn& law_cdf);
DistanceReport kolmogorov_distance(const Ecdf& ecdf, const limits::LimitLaw& law);

// Two-sample KS over merged jump points; both counts >= 100.
DistanceReport two_sample_ks(const Ecdf& a, const Ecdf& b);

// W1 distance = int |F - G| dx by adaptive Simpson (abs tol 1e-8) over
// [bounds.first, bounds.second]; both CDFs must be within 1e-10 of {0, 1}
// outside the bounds, and the certified tail remainder must be <= 1e-8.
DistanceReport w1_distance(const CdfFn& cdf_evaluator, const limits::LimitLaw& law,
                           std::pair<double, double> bounds);

// Expands bounds symmetrically until both tails are below 1e-10.
std::pair<double, double> auto_w1_bounds(const CdfFn& f, const CdfFn& g, double x0 = 0.0);

}  // namespace prodgin::empirics
