#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "prodgin/grid.hpp"
#include "prodgin/scaling.hpp"

namespace prodgin::rates {

enum class RateMetric { BerryEsseen, W1 };

struct RateReport {
    scaling::RegimeDecl regime;
    RateMetric metric = RateMetric::BerryEsseen;
    double theoretical = 0.0;
    std::map<std::string, double> components;
    std::string to_json() const;
};

// Closed form for sup_x |h1 - h2 x| phi(x), h1, h2 >= 0, not both zero.
double gaussian_weighted_sup(double h1, double h2);

// Partial sum of sum_m (coef1 q1 + coef2 q2)(m, x) phi(v)/Phi(v) with a
// certified bound on the dropped tail.
struct SeriesValue {
    double value = 0.0;
    std::int64_t terms = 0;
    double tail_bound = 0.0;
};
SeriesValue finite_alpha_series(double alpha, double coef1, double coef2, double x, double tol);

struct FiniteSup {
    double value = 0.0;
    double argmax = 0.0;
    std::int64_t max_terms = 0;
};
// sup_x Phi_alpha(x) |series(x)| over the grid policy.
FiniteSup finite_alpha_sup(double alpha, double coef1, double coef2, const GridPolicy& grid,
                           unsigned threads = 0);

// Theoretical Berry-Esseen rate for the declared regime. "1 + o(1)" factors
// are dropped; acceptance checks carry explicit multiplicative slack instead.
RateReport be_rate(const scaling::Ensemble& e, const scaling::RegimeDecl& decl,
                   const GridPolicy& grid, unsigned threads = 0);

// Theoretical W1 rate for the declared regime.
RateReport w1_rate(const scaling::Ensemble& e, const scaling::RegimeDecl& decl,
                   const GridPolicy& grid, unsigned threads = 0);

struct Remark4Bounds {
    double bound_q1 = 0.0;
    double bound_q2 = 0.0;
};
Remark4Bounds remark4_upper_bounds(double alpha);

enum class TransitionSide { ToNormal, ToGumbel };

// Rate at which Phi_alpha approaches the normal (alpha <= 0.01) or the
// Gumbel (alpha >= 100) endpoint of the family.
double transition_rate(double alpha, TransitionSide side);

}  // namespace prodgin::rates
