#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "prodgin/grid.hpp"
#include "prodgin/util.hpp"

namespace prodgin::detail {

// Golden-section maximization tracking the best point actually evaluated.
inline double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 double width, double* best_x) {
    const double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    double bx = f1 >= f2 ? x1 : x2;
    double bf = std::max(f1, f2);
    while (hi - lo > width) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        }
        const double fx = std::max(f1, f2);
        const double xx = f1 >= f2 ? x1 : x2;
        if (fx > bf || (fx == bf && xx < bx)) {
            bf = fx;
            bx = xx;
        }
    }
    *best_x = bx;
    return bf;
}

struct ScanResult {
    double value = 0.0;
    double argmax = 0.0;
};

// Coarse scan of g over the grid, then golden-section refinement around the
// three best coarse local maxima. Ties resolve to the smallest x; the result
// does not depend on the thread count.
inline ScanResult scan_sup(const std::function<double(double)>& g, const GridPolicy& grid,
                           unsigned threads) {
    grid.validate();
    const std::int64_t npts =
        static_cast<std::int64_t>(std::floor((grid.x_hi - grid.x_lo) / grid.coarse_step)) + 1;
    std::vector<double> vals(static_cast<std::size_t>(npts));
    parallel_for_index(static_cast<std::uint64_t>(npts), threads, [&](std::uint64_t i) {
        vals[i] = g(grid.x_lo + static_cast<double>(i) * grid.coarse_step);
    });

    std::vector<std::int64_t> peaks;
    for (std::int64_t i = 0; i < npts; ++i) {
        const double left = i > 0 ? vals[static_cast<std::size_t>(i - 1)] : -1.0;
        const double right = i + 1 < npts ? vals[static_cast<std::size_t>(i + 1)] : -1.0;
        if (vals[static_cast<std::size_t>(i)] >= left && vals[static_cast<std::size_t>(i)] >= right)
            peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::int64_t l, std::int64_t r) {
        if (vals[static_cast<std::size_t>(l)] != vals[static_cast<std::size_t>(r)])
            return vals[static_cast<std::size_t>(l)] > vals[static_cast<std::size_t>(r)];
        return l < r;
    });
    if (peaks.size() > 3) peaks.resize(3);

    ScanResult best;
    best.value = -1.0;
    for (std::int64_t i : peaks) {
        const double xi = grid.x_lo + static_cast<double>(i) * grid.coarse_step;
        const double lo = std::max(grid.x_lo, xi - grid.coarse_step);
        const double hi = std::min(grid.x_hi, xi + grid.coarse_step);
        double bx = xi;
        double bf = golden_section_max(g, lo, hi, grid.refine_width, &bx);
        if (vals[static_cast<std::size_t>(i)] > bf ||
            (vals[static_cast<std::size_t>(i)] == bf && xi < bx)) {
            bf = vals[static_cast<std::size_t>(i)];
            bx = xi;
        }
        if (bf > best.value || (bf == best.value && bx < best.argmax)) {
            best.value = bf;
            best.argmax = bx;
        }
    }
    if (best.value < 0.0) {
        best.value = 0.0;
        best.argmax = grid.x_lo;
    }
    return best;
}

struct SimpsonResult {
    double value = 0.0;
    std::int64_t evals = 0;
};

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth, std::int64_t* evals) {
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m));
    const double frm = f(0.5 * (m + b));
    *evals += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals);
}

// Absolute-tolerance adaptive Simpson, pre-split into unit-scale panels.
inline SimpsonResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                      double tol) {
    SimpsonResult out;
    const int panels = std::max(8, static_cast<int>(std::ceil(b - a)));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + p * h;
        const double pb = pa + h;
        const double fa = f(pa), fm = f(0.5 * (pa + pb)), fb = f(pb);
        out.evals += 3;
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        out.value +=
            adaptive_simpson_rec(f, pa, pb, fa, fm, fb, whole, tol / panels, 40, &out.evals);
    }
    return out;
}

}  // namespace prodgin::detail
