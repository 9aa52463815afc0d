#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "prodgin/scaling.hpp"
#include "prodgin/specfun.hpp"
#include "prodgin/util.hpp"

using namespace prodgin;
using namespace prodgin::scaling;

TEST_CASE("ensemble and regime validation") {
    CHECK_THROWS_AS(Ensemble(0, 1), std::domain_error);
    CHECK_THROWS_AS(Ensemble(1, 0), std::domain_error);
    CHECK(Ensemble(1000, 10).alpha_n() == doctest::Approx(100.0));
    CHECK_THROWS_AS(RegimeDecl::finite(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(RegimeDecl::finite(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(RegimeDecl::zero(-2.0), std::domain_error);
    CHECK_NOTHROW(RegimeDecl::zero(std::numeric_limits<double>::infinity()));
    CHECK_NOTHROW(RegimeDecl::infinite());
}

TEST_CASE("limit constants at the regime endpoints") {
    // alpha -> 0 limit of the displays: a = 0, b = 1
    CHECK(std::fabs(a_coef(0.0)) < 1e-14);
    CHECK(b_coef(0.0) == doctest::Approx(1.0).epsilon(1e-15));

    const auto sc0 = constants_for(Ensemble(8, 512), RegimeDecl::zero(1.0));
    CHECK(*sc0.a == 0.0);
    CHECK(*sc0.b == 1.0);
    CHECK(!sc0.c1.has_value());

    const auto sci = constants_for(Ensemble(100000, 1), RegimeDecl::infinite());
    CHECK(!sci.a.has_value());
    CHECK(!sci.c2.has_value());
    CHECK(sci.alpha_n == doctest::Approx(100000.0));

    // centering = k psi(n)
    CHECK(sc0.centering ==
          doctest::Approx(512.0 * specfun::digamma(8.0)).epsilon(1e-15));
}

TEST_CASE("c1 and c2 are the Taylor coefficients of a_n and b_n") {
    const double h = 1e-5;
    for (double alpha : {0.3, 1.0, 2.0, 7.7}) {
        const double fd_a = (a_coef(alpha + h) - a_coef(alpha - h)) / (2.0 * h);
        CHECK(c1_coef(alpha) == doctest::Approx(fd_a).epsilon(1e-6));
        const double fd_b = (b_coef(alpha + h) - b_coef(alpha - h)) / (2.0 * h);
        CHECK(c2_coef(alpha) == doctest::Approx(-fd_b).epsilon(1e-6));
    }
}

TEST_CASE("Taylor remainders decay quadratically") {
    for (double alpha : {0.5, 1.0, 3.0}) {
        const double a0 = a_coef(alpha), b0 = b_coef(alpha);
        const double c1 = c1_coef(alpha), c2 = c2_coef(alpha);
        double prev_ra = -1.0, prev_rb = -1.0;
        for (double h : {1e-2, 1e-3, 1e-4}) {
            const double ra = std::fabs(a_coef(alpha + h) - a0 - c1 * h);
            const double rb = std::fabs(b_coef(alpha + h) - b0 + c2 * h);
            if (prev_ra > 0.0) {
                // log-log slope 2 +- 0.1 per decade of h
                const double slope_a = std::log10(prev_ra / std::max(ra, 1e-300));
                const double slope_b = std::log10(prev_rb / std::max(rb, 1e-300));
                CHECK(slope_a == doctest::Approx(2.0).epsilon(0.06));
                CHECK(slope_b == doctest::Approx(2.0).epsilon(0.06));
            }
            prev_ra = ra;
            prev_rb = rb;
        }
    }
}

TEST_CASE("u_n, v_alpha arithmetic") {
    ScalingConstants sc;
    sc.alpha_n = 4.0;
    sc.a_n = 0.3;
    sc.b_n = 0.5;
    CHECK(u_n(2, 1.0, sc) == doctest::Approx(1.8).epsilon(1e-15));
    CHECK(u_n(0, 2.0, sc) == doctest::Approx(sc.a_n + sc.b_n * 2.0).epsilon(1e-15));
    for (std::int64_t m = 0; m < 10; ++m) {
        CHECK(u_n(m + 1, 0.7, sc) - u_n(m, 0.7, sc) == doctest::Approx(0.5).epsilon(1e-14));
    }

    const auto scf = constants_for(Ensemble(64, 64), RegimeDecl::finite(1.0, 0.0));
    CHECK(v_alpha(0, 0.0, scf) == doctest::Approx(*scf.a).epsilon(1e-15));
    for (std::int64_t m = 0; m < 5; ++m) {
        CHECK(v_alpha(m + 1, -0.3, scf) - v_alpha(m, -0.3, scf) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    // alpha = 1, x with a + b x = -1: v(3) = 3 - 1 = 2
    const double x_at = (-1.0 - *scf.a) / *scf.b;
    CHECK(v_alpha(3, x_at, scf) == doctest::Approx(2.0).epsilon(1e-12));
    // regime gate
    const auto sc0 = constants_for(Ensemble(8, 512), RegimeDecl::zero(1.0));
    CHECK_THROWS_AS(v_alpha(0, 0.0, sc0), std::domain_error);
}

TEST_CASE("v_n against exact digamma identities") {
    const Ensemble e(100, 100);
    const auto sc = constants_for(e, RegimeDecl::finite(1.0, 0.0));
    // m = 0: (a_n + b_n x)/sqrt(n psi'(n))
    for (double x : {-1.0, 0.0, 2.0}) {
        const double expect =
            (sc.a_n + sc.b_n * x) / std::sqrt(100.0 * specfun::polygamma(1, 100.0));
        CHECK(v_n(0, x, e, sc) == doctest::Approx(expect).epsilon(1e-14));
    }
    // m = 1 at x = 0: psi(100) - psi(99) = 1/99 exactly; psi'(99) from an
    // independent route psi'(99) = pi^2/6 - sum_{i<99} 1/i^2.
    double tail = M_PI * M_PI / 6.0;
    for (int i = 98; i >= 1; --i) tail -= 1.0 / (static_cast<double>(i) * i);
    const double expect = 100.0 * (1.0 / 99.0) / std::sqrt(100.0 * tail) +
                          sc.a_n / std::sqrt(100.0 * tail);
    CHECK(v_n(1, 0.0, e, sc) == doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(v_n(100, 0.0, e, sc), std::domain_error);
}

TEST_CASE("v_n tracks u_n within 3m/n") {
    const Ensemble e(200, 200);
    const auto sc = constants_for(e, RegimeDecl::finite(1.0, 0.0));
    for (std::int64_t m = 0; m <= 20; ++m) {
        for (double x : {-1.0, 0.0, 1.0, 3.0}) {
            const double u = u_n(m, x, sc);
            if (std::fabs(u) < 0.2) continue;  // ratio ill-conditioned near zero
            const double v = v_n(m, x, e, sc);
            CHECK(std::fabs(v / u - 1.0) <=
                  3.0 * static_cast<double>(m) / static_cast<double>(e.n) + 1e-12);
        }
    }
}

TEST_CASE("q1 and q2 closed-form spot values") {
    const auto sc = constants_for(Ensemble(64, 64), RegimeDecl::finite(1.0, 0.0));
    // q1 with v = 0, m = 0 equals -sqrt(alpha)/6
    const double x0 = -*sc.a / *sc.b;  // v_alpha(0, x0) = 0
    CHECK(q1(0, x0, sc) == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
    CHECK(q2(0, 0.0, sc) == doctest::Approx(*sc.c1).epsilon(1e-15));
    // alpha = 1, m = 1, v = 1: (0 - 9 + 12)/12 = 1/4
    const double x1 = -*sc.a / *sc.b;  // v(1, x1) = 1
    CHECK(q1(1, x1, sc) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("q1, q2 match an independent polynomial expansion") {
    // q1 = A v^2 - B v + C with A, B, C from the rewritten display
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> ua(0.2, 6.0), ux(-3.0, 5.0);
    std::uniform_int_distribution<std::int64_t> um(0, 12);
    for (int rep = 0; rep < 10; ++rep) {
        const double alpha = ua(gen);
        const double x = ux(gen);
        const std::int64_t m = um(gen);
        const auto sc = constants_for(Ensemble(10, 10), RegimeDecl::finite(alpha, 0.0));
        const double s = *sc.a + *sc.b * x;
        const double v = v_alpha(m, x, sc);
        const double A = std::sqrt(alpha) / 6.0;
        const double B = 0.5 * (std::sqrt(alpha) * s - 0.5);
        const double C = 0.5 * std::sqrt(alpha) * s * s - 0.5 * s - std::sqrt(alpha) / 6.0;
        CHECK(q1(m, x, sc) == doctest::Approx(A * v * v - B * v + C).epsilon(1e-12));
        const double q2_direct =
            c1_coef(alpha) - c2_coef(alpha) * x -
            static_cast<double>(m) / (2.0 * alpha * std::sqrt(alpha));
        CHECK(q2(m, x, sc) == doctest::Approx(q2_direct).epsilon(1e-12));
    }
}

TEST_CASE("rescale_max is affine, increasing, and invertible") {
    const Ensemble e(100, 7);
    const auto sc = constants_for(e, RegimeDecl::infinite());
    CHECK(rescale_max(sc.centering, e, sc) == doctest::Approx(-sc.a_n / sc.b_n).epsilon(1e-12));
    const double raw1 = sc.centering + (sc.a_n + sc.b_n) / std::sqrt(sc.alpha_n);
    CHECK(rescale_max(raw1, e, sc) == doctest::Approx(1.0).epsilon(1e-10));
    for (double x : {-5.0, -0.1, 0.0, 3.3, 12.0}) {
        CHECK(rescale_max(unscale(x, e, sc), e, sc) == doctest::Approx(x).epsilon(1e-12));
    }
    // strictly increasing => argmax preserved
    CHECK(rescale_max(10.0, e, sc) < rescale_max(10.5, e, sc));
}
