#pragma once

#include <cstdint>
#include <optional>

namespace prodgin::scaling {

// The experiment's independent variable: n x n factors, k of them.
struct Ensemble {
    std::int64_t n = 1;
    std::int64_t k = 1;
    Ensemble() = default;
    Ensemble(std::int64_t n_, std::int64_t k_);
    double alpha_n() const { return static_cast<double>(n) / static_cast<double>(k); }
};

enum class RegimeKind { AlphaZero, AlphaFinite, AlphaInfinite };

// Declared limit of the sequence (n, k_n). A single pair cannot determine a
// limit, so callers must state the regime (and beta / eta where relevant).
struct RegimeDecl {
    RegimeKind kind = RegimeKind::AlphaFinite;
    std::optional<double> alpha;  // AlphaFinite only, > 0
    std::optional<double> beta;   // AlphaZero only, in [0, +inf]
    std::optional<double> eta;    // AlphaFinite only, in [-inf, +inf]

    static RegimeDecl zero(double beta);
    static RegimeDecl finite(double alpha, double eta);
    static RegimeDecl infinite();
    void validate() const;
};

// a_n, b_n and the declared-limit constants. c1 = da/dalpha and
// c2 = -db/dalpha exist only for a finite positive limit alpha; for the other
// regimes (including alpha = 0, where c1 diverges) they are not applicable.
struct ScalingConstants {
    double alpha_n = 1.0;
    double a_n = 0.0;
    double b_n = 1.0;
    double centering = 0.0;  // k * psi(n)
    RegimeDecl regime;
    std::optional<double> a;
    std::optional<double> b;
    std::optional<double> c1;
    std::optional<double> c2;
};

// The raw coefficient maps as functions of alpha (= alpha_n or the limit).
double a_coef(double alpha);
double b_coef(double alpha);
double c1_coef(double alpha);
double c2_coef(double alpha);

ScalingConstants constants_for(const Ensemble& e, const RegimeDecl& decl);

// u_n(m, x) = m / sqrt(alpha_n) + a_n + b_n x
double u_n(std::int64_t m, double x, const ScalingConstants& sc);

// v_alpha(m, x) = m / sqrt(alpha) + a + b x   (AlphaFinite only)
double v_alpha(std::int64_t m, double x, const ScalingConstants& sc);

// v_n(m, x) via digamma / trigamma, 0 <= m <= n-1
double v_n(std::int64_t m, double x, const Ensemble& e, const ScalingConstants& sc);

// The two expansion polynomials of the finite-alpha regime.
double q1(std::int64_t m, double x, const ScalingConstants& sc);
double q2(std::int64_t m, double x, const ScalingConstants& sc);

// Maps a raw max of log|Z_j|^2 to the X_n coordinate, and back.
double rescale_max(double raw_max_log_sq, const Ensemble& e, const ScalingConstants& sc);
double unscale(double x, const Ensemble& e, const ScalingConstants& sc);

}  // namespace prodgin::scaling
