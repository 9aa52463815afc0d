#include "prodgin/ginibre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prodgin/util.hpp"

namespace prodgin::ginibre {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

double frobenius(const ComplexMatrix& m) {
    double s = 0.0;
    for (const cplx& z : m.e) s += std::norm(z);
    return std::sqrt(s);
}

// In-place Householder reduction to upper Hessenberg form.
void hessenberg(ComplexMatrix& h) {
    const std::int64_t n = h.dim;
    std::vector<cplx> u(static_cast<std::size_t>(n));
    for (std::int64_t c = 0; c + 2 < n; ++c) {
        double xnorm2 = 0.0;
        for (std::int64_t i = c + 1; i < n; ++i) xnorm2 += std::norm(h.at(i, c));
        double below2 = 0.0;
        for (std::int64_t i = c + 2; i < n; ++i) below2 += std::norm(h.at(i, c));
        if (below2 == 0.0) continue;
        const double r = std::sqrt(xnorm2);
        const cplx x0 = h.at(c + 1, c);
        const cplx beta = std::abs(x0) > 0.0 ? -(x0 / std::abs(x0)) * r : cplx(-r, 0.0);
        // u = (x - beta e1) normalized; P = I - 2 u u^*
        double vnorm2 = 0.0;
        for (std::int64_t i = c + 1; i < n; ++i) {
            u[static_cast<std::size_t>(i)] = h.at(i, c) - (i == c + 1 ? beta : cplx(0.0));
            vnorm2 += std::norm(u[static_cast<std::size_t>(i)]);
        }
        if (vnorm2 == 0.0) continue;
        const double inv = 1.0 / std::sqrt(vnorm2);
        for (std::int64_t i = c + 1; i < n; ++i) u[static_cast<std::size_t>(i)] *= inv;
        // rows: H[c+1.., :] -= 2 u (u^* H[c+1.., :])
        for (std::int64_t j = 0; j < n; ++j) {
            cplx dot(0.0);
            for (std::int64_t i = c + 1; i < n; ++i)
                dot += std::conj(u[static_cast<std::size_t>(i)]) * h.at(i, j);
            dot *= 2.0;
            for (std::int64_t i = c + 1; i < n; ++i)
                h.at(i, j) -= dot * u[static_cast<std::size_t>(i)];
        }
        // cols: H[:, c+1..] -= 2 (H[:, c+1..] u) u^*
        for (std::int64_t i = 0; i < n; ++i) {
            cplx dot(0.0);
            for (std::int64_t j = c + 1; j < n; ++j)
                dot += h.at(i, j) * u[static_cast<std::size_t>(j)];
            dot *= 2.0;
            for (std::int64_t j = c + 1; j < n; ++j)
                h.at(i, j) -= dot * std::conj(u[static_cast<std::size_t>(j)]);
        }
        h.at(c + 1, c) = beta;
        for (std::int64_t i = c + 2; i < n; ++i) h.at(i, c) = cplx(0.0);
    }
}

// Eigenvalues of [a b; c d] and the one closer to d (Wilkinson shift).
cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
    const cplx tr2 = 0.5 * (a + d);
    const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    const cplx l1 = tr2 + disc;
    const cplx l2 = tr2 - disc;
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

void qr_eigenvalues(ComplexMatrix& h, std::vector<cplx>& out) {
    const std::int64_t n = h.dim;
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = frobenius(h) * 1e-300 + 1e-300;
    std::int64_t hi = n - 1;
    std::int64_t total_iters = 0;
    const std::int64_t cap = 40 * n;
    std::int64_t stall = 0;
    std::vector<double> cs(static_cast<std::size_t>(n));
    std::vector<cplx> sn(static_cast<std::size_t>(n));

    while (hi >= 0) {
        // Deflate any negligible subdiagonal in the active trailing block.
        std::int64_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h.at(lo, lo - 1));
            if (sub <= eps * (std::abs(h.at(lo - 1, lo - 1)) + std::abs(h.at(lo, lo))) + tiny) {
                h.at(lo, lo - 1) = cplx(0.0);
                break;
            }
            --lo;
        }
        if (lo == hi) {
            out[static_cast<std::size_t>(hi)] = h.at(hi, hi);
            --hi;
            stall = 0;
            continue;
        }

        if (++total_iters > cap) {
            throw NumericalFailure("eigenvalues: QR iteration exceeded 40*dim steps");
        }
        cplx shift;
        if (stall > 0 && stall % 10 == 0) {
            // exceptional shift to break rare cycling
            shift = cplx(std::abs(h.at(hi, hi - 1)) +
                             (hi - 1 > lo ? std::abs(h.at(hi - 1, hi - 2)) : 0.0),
                         0.0);
        } else {
            shift = wilkinson_shift(h.at(hi - 1, hi - 1), h.at(hi - 1, hi), h.at(hi, hi - 1),
                                    h.at(hi, hi));
        }
        ++stall;

        for (std::int64_t i = lo; i <= hi; ++i) h.at(i, i) -= shift;
        // Forward Givens sweep annihilating the subdiagonal of rows lo..hi.
        for (std::int64_t i = lo; i < hi; ++i) {
            const cplx f = h.at(i, i);
            const cplx g = h.at(i + 1, i);
            const double fa = std::abs(f);
            const double r = std::sqrt(std::norm(f) + std::norm(g));
            double c;
            cplx s;
            if (r == 0.0) {
                c = 1.0;
                s = cplx(0.0);
            } else if (fa == 0.0) {
                c = 0.0;
                s = std::conj(g) / std::abs(g);
            } else {
                c = fa / r;
                s = (f / fa) * std::conj(g) / r;
            }
            cs[static_cast<std::size_t>(i)] = c;
            sn[static_cast<std::size_t>(i)] = s;
            for (std::int64_t j = i; j <= hi; ++j) {
                const cplx t1 = h.at(i, j);
                const cplx t2 = h.at(i + 1, j);
                h.at(i, j) = c * t1 + s * t2;
                h.at(i + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        // Multiply the rotations back on the right.
        for (std::int64_t i = lo; i < hi; ++i) {
            const double c = cs[static_cast<std::size_t>(i)];
            const cplx s = sn[static_cast<std::size_t>(i)];
            const std::int64_t top = lo;
            for (std::int64_t r2 = top; r2 <= std::min(i + 1, hi); ++r2) {
                const cplx t1 = h.at(r2, i);
                const cplx t2 = h.at(r2, i + 1);
                h.at(r2, i) = c * t1 + std::conj(s) * t2;
                h.at(r2, i + 1) = -s * t1 + c * t2;
            }
        }
        for (std::int64_t i = lo; i <= hi; ++i) h.at(i, i) += shift;
    }
}

}  // namespace

ComplexMatrix sample_ginibre(std::int64_t n, rng::RngStream& r) {
    require(n >= 1 && n <= 64, "sample_ginibre: n must be in [1, 64]");
    ComplexMatrix m(n);
    for (cplx& z : m.e) {
        const double re = r.next_normal() * M_SQRT1_2;
        const double im = r.next_normal() * M_SQRT1_2;
        z = cplx(re, im);
    }
    return m;
}

std::vector<cplx> eigenvalues(const ComplexMatrix& mat) {
    require(mat.dim >= 1 && mat.dim <= 64, "eigenvalues: dim must be in [1, 64]");
    for (const cplx& z : mat.e)
        require(std::isfinite(z.real()) && std::isfinite(z.imag()),
                "eigenvalues: entries must be finite");
    const std::int64_t n = mat.dim;
    std::vector<cplx> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = mat.at(0, 0);
        return out;
    }
    ComplexMatrix h = mat;
    hessenberg(h);
    qr_eigenvalues(h, out);

    // Backward-error sanity: the eigenvalue sum must reproduce the trace.
    cplx tr(0.0), sum(0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        tr += mat.at(i, i);
        sum += out[static_cast<std::size_t>(i)];
    }
    const double scale = frobenius(mat) + 1.0;
    if (std::abs(tr - sum) > 1e-8 * scale * static_cast<double>(n)) {
        throw NumericalFailure("eigenvalues: trace consistency check failed");
    }
    return out;
}

cplx det_lu(const ComplexMatrix& mat) {
    const std::int64_t n = mat.dim;
    ComplexMatrix a = mat;
    cplx det(1.0);
    for (std::int64_t c = 0; c < n; ++c) {
        std::int64_t piv = c;
        double best = std::abs(a.at(c, c));
        for (std::int64_t i = c + 1; i < n; ++i) {
            if (std::abs(a.at(i, c)) > best) {
                best = std::abs(a.at(i, c));
                piv = i;
            }
        }
        if (best == 0.0) return cplx(0.0);
        if (piv != c) {
            for (std::int64_t j = 0; j < n; ++j) std::swap(a.at(c, j), a.at(piv, j));
            det = -det;
        }
        det *= a.at(c, c);
        for (std::int64_t i = c + 1; i < n; ++i) {
            const cplx f = a.at(i, c) / a.at(c, c);
            for (std::int64_t j = c + 1; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
        }
    }
    return det;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.dim == b.dim, "multiply: dimension mismatch");
    const std::int64_t n = a.dim;
    ComplexMatrix out(n);
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t l = 0; l < n; ++l) {
            const cplx ail = a.at(i, l);
            if (ail == cplx(0.0)) continue;
            for (std::int64_t j = 0; j < n; ++j) out.at(i, j) += ail * b.at(l, j);
        }
    }
    return out;
}

double max_log_sq_eig(std::int64_t n, std::int64_t k, rng::RngStream& r) {
    require(n >= 1 && n <= 16, "max_log_sq_eig: n must be in [1, 16]");
    require(k >= 1 && k <= 8, "max_log_sq_eig: k must be in [1, 8]");
    ComplexMatrix prod = sample_ginibre(n, r);
    double log_scale = 0.0;
    for (std::int64_t i = 1; i < k; ++i) {
        prod = multiply(prod, sample_ginibre(n, r));
        double mx = 0.0;
        for (const cplx& z : prod.e) mx = std::max(mx, std::abs(z));
        if (mx > 0.0) {
            for (cplx& z : prod.e) z /= mx;
            log_scale += std::log(mx);
        }
    }
    const std::vector<cplx> eig = eigenvalues(prod);
    double best = -std::numeric_limits<double>::infinity();
    for (const cplx& l : eig) {
        const double v = std::log(std::norm(l));
        if (v > best) best = v;
    }
    return best + 2.0 * log_scale;
}

}  // namespace prodgin::ginibre
