#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "prodgin/philox.hpp"

namespace prodgin::ginibre {

using cplx = std::complex<double>;

struct ComplexMatrix {
    std::int64_t dim = 0;
    std::vector<cplx> e;  // row-major

    ComplexMatrix() = default;
    explicit ComplexMatrix(std::int64_t n) : dim(n), e(static_cast<std::size_t>(n * n)) {}
    cplx& at(std::int64_t i, std::int64_t j) { return e[static_cast<std::size_t>(i * dim + j)]; }
    const cplx& at(std::int64_t i, std::int64_t j) const {
        return e[static_cast<std::size_t>(i * dim + j)];
    }
};

// n x n matrix with i.i.d. standard complex Gaussian entries (real and
// imaginary parts independent N(0, 1/2), unit total variance). 1 <= n <= 64.
ComplexMatrix sample_ginibre(std::int64_t n, rng::RngStream& r);

// All eigenvalues via Householder Hessenberg reduction plus Wilkinson-shift
// QR with deflation. Throws NumericalFailure past the 40*dim iteration cap.
std::vector<cplx> eigenvalues(const ComplexMatrix& mat);

// Determinant by partial-pivot LU; the independent consistency oracle.
cplx det_lu(const ComplexMatrix& mat);

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

// max_j log |lambda_j(prod A_i)|^2 for k fresh Ginibre factors; the product
// is rescaled after each multiply and the scale re-added in log space.
// Desk-scale oracle: n <= 16, k <= 8.
double max_log_sq_eig(std::int64_t n, std::int64_t k, rng::RngStream& r);

}  // namespace prodgin::ginibre
