#pragma once

#include <cstdint>
#include <string>

#include "prodgin/grid.hpp"

namespace prodgin::limits {

enum class LawKind { StdNormal, Gumbel, PhiAlpha };

struct LimitLaw {
    LawKind kind = LawKind::StdNormal;
    double alpha = 0.0;  // PhiAlpha only

    static LimitLaw std_normal();
    static LimitLaw gumbel();
    static LimitLaw phi_alpha(double alpha);
    std::string name() const;
};

struct TruncationCertificate {
    std::int64_t terms_used = 1;
    double tail_bound = 0.0;
};

struct CdfResult {
    double value = 0.0;
    TruncationCertificate cert;
};

// CDF with certified truncation error. StdNormal and Gumbel are closed-form
// (tail_bound 0); PhiAlpha is a log-space truncated product whose dropped
// tail is bounded by the geometric summation bound at <= 1e-14.
CdfResult cdf(const LimitLaw& law, double x);

// log Phi_alpha(x) with the same certificate policy.
struct LogCdfResult {
    double log_value = 0.0;
    TruncationCertificate cert;
};
LogCdfResult log_cdf_phi_alpha(double alpha, double x);

// d/dx log Phi_alpha(x) = b * sum_m phi(v_m)/Phi(v_m).
CdfResult log_density_phi_alpha(double alpha, double x);

struct SupDistance {
    double value = 0.0;
    double argmax = 0.0;
};

// sup_x |F_A - F_B| by coarse scan plus golden-section refinement around the
// top three coarse local maxima. Deterministic for any thread count.
SupDistance sup_distance(const LimitLaw& a, const LimitLaw& b, const GridPolicy& grid,
                         unsigned threads = 0);

}  // namespace prodgin::limits
