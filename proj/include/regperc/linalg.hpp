#pragma once

#include <cstddef>
#include <vector>

namespace regperc {

// Row-major dense matrix, just enough for covariance factorizations and
// dense eigenproblems.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    double* row(std::size_t i) { return a.data() + i * cols; }
    const double* row(std::size_t i) const { return a.data() + i * cols; }
};

// Full symmetric eigendecomposition (ascending eigenvalues). On return,
// `vectors` column j holds the unit eigenvector of eigenvalues[j].
void symmetric_eigen(const Mat& sym, std::vector<double>& eigenvalues, Mat& vectors);

// Plain Cholesky A = L L^T (lower). Throws Error(NotPSD) if not positive
// definite.
Mat cholesky(const Mat& sym);

struct PivotedCholesky {
    Mat L;                     // n x rank, lower-trapezoidal after permutation
    std::vector<int> perm;     // perm[i] = original row placed at pivot slot i
    std::size_t rank = 0;
};

// Pivoted Cholesky with stopping tolerance, for semidefinite covariances:
// A[perm,perm] ~= L L^T with rank columns. Throws Error(NotPSD) when the
// residual diagonal is more negative than the tolerance allows.
PivotedCholesky pivoted_cholesky(const Mat& sym, double tol);

} // namespace regperc
