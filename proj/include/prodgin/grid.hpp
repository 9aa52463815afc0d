#pragma once

#include <stdexcept>

namespace prodgin {

// Explicit numeric policy for every sup/series evaluation: a coarse x-scan,
// golden-section refinement around the best coarse maxima, and the absolute
// tolerance at which m-series truncation is certified.
struct GridPolicy {
    double x_lo = -8.0;
    double x_hi = 14.0;
    double coarse_step = 0.01;
    double refine_width = 1e-6;
    double m_truncation_tol = 1e-14;

    void validate() const {
        if (!(x_lo < x_hi)) throw std::domain_error("GridPolicy: x_lo must be < x_hi");
        if (!(coarse_step > 0.0) || !(refine_width > 0.0) || !(m_truncation_tol > 0.0))
            throw std::domain_error("GridPolicy: steps and tolerances must be positive");
    }
};

}  // namespace prodgin
