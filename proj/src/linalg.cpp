#include "regperc/linalg.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

#include "regperc/errors.hpp"

namespace regperc {

void symmetric_eigen(const Mat& sym, std::vector<double>& eigenvalues, Mat& vectors) {
    if (sym.rows != sym.cols)
        throw Error(ErrorCode::NotSymmetric, "symmetric_eigen: matrix not square");
    const lapack_int n = static_cast<lapack_int>(sym.rows);
    vectors = sym;
    eigenvalues.assign(sym.rows, 0.0);
    lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'L', n,
                                     vectors.a.data(), n, eigenvalues.data());
    if (info != 0)
        throw Error(ErrorCode::NoConvergence,
                    "dsyevd failed with info=" + std::to_string(info));
}

Mat cholesky(const Mat& sym) {
    const lapack_int n = static_cast<lapack_int>(sym.rows);
    Mat L = sym;
    lapack_int info =
        LAPACKE_dpotrf(LAPACK_ROW_MAJOR, 'L', n, L.a.data(), n);
    if (info > 0)
        throw Error(ErrorCode::NotPSD, "covariance is not positive definite");
    if (info < 0)
        throw Error(ErrorCode::BadInput,
                    "dpotrf: bad argument " + std::to_string(-info));
    for (std::size_t i = 0; i < L.rows; ++i)
        for (std::size_t j = i + 1; j < L.cols; ++j) L(i, j) = 0.0;
    return L;
}

PivotedCholesky pivoted_cholesky(const Mat& sym, double tol) {
    const std::size_t n = sym.rows;
    Mat work = sym;
    std::vector<lapack_int> piv(n, 0);
    lapack_int rank = 0;
    lapack_int info = LAPACKE_dpstrf(LAPACK_ROW_MAJOR, 'L', static_cast<lapack_int>(n),
                                     work.a.data(), static_cast<lapack_int>(n),
                                     piv.data(), &rank, tol);
    if (info < 0)
        throw Error(ErrorCode::BadInput,
                    "dpstrf: bad argument " + std::to_string(-info));

    PivotedCholesky out;
    out.rank = static_cast<std::size_t>(rank);
    out.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.perm[i] = static_cast<int>(piv[i]) - 1;

    out.L = Mat(n, out.rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < out.rank && k <= i; ++k)
            out.L(i, k) = work(i, k);

    // The trailing diagonal must be (numerically) nonnegative, otherwise the
    // input was not a covariance.
    for (std::size_t i = out.rank; i < n; ++i) {
        double residual = sym(static_cast<std::size_t>(out.perm[i]),
                              static_cast<std::size_t>(out.perm[i]));
        for (std::size_t k = 0; k < out.rank; ++k) residual -= out.L(i, k) * out.L(i, k);
        if (residual < -100.0 * std::max(tol, 1e-14))
            throw Error(ErrorCode::NotPSD,
                        "matrix indefinite beyond factorization tolerance");
    }
    return out;
}

} // namespace regperc
