#pragma once

#include <cstdint>

#include "prodgin/scaling.hpp"

namespace prodgin::tailbounds {

enum class ChernoffBranch { PositiveM, MZeroUpper, MZeroLower };

struct ChernoffBound {
    std::int64_t m = 0;
    double x = 0.0;
    double bound = 1.0;  // in [0, 1]
    ChernoffBranch branch = ChernoffBranch::PositiveM;
};

// Exponential upper bounds on c_n(m, x):
//   m >= 1:           exp(-m^2/(16 alpha_n) - m (a_n + b_n x)/(4 sqrt(alpha_n)))
//   m == 0, x > 0:    exp(-(a_n + b_n x)^2 / 4)
ChernoffBound chernoff_cn(std::int64_t m, double x, const scaling::ScalingConstants& sc);

// Lower-side bound: 1 - c_n(0, x) <= exp(-(a_n + b_n x)^2 / 3), valid when
// a_n + b_n x < 0.
double chernoff_lower_cn0(double x, const scaling::ScalingConstants& sc);

enum class TailRegime { LargeGamma, BoundedGamma };

struct GeomTailBound {
    double bound = 0.0;
    TailRegime regime = TailRegime::LargeGamma;
};

// Closed-form upper bound on sum_{m >= L} s(m)^{-1} exp(-c s(m)^2) with
// s(m) = m/gamma + a + b x. Requires s(L, x) >= 2.
GeomTailBound geometric_tail_sum(std::int64_t L, double x, double c, double gamma, double a,
                                 double b);

}  // namespace prodgin::tailbounds
