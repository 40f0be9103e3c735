#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace limitop {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Largest singular value. Full decomposition up to dimension 64, power
/// iteration on M*M beyond that (relative tolerance 1e-12, cap 1e5 steps).
double spectral_norm(const Matrix& m);

/// Smallest singular value (full decomposition; intended for small fibres).
double sigma_min(const Matrix& m);

/// All eigenvalues (ascending) of a hermitian band matrix given in LAPACK
/// lower band storage: ab[j*(kd+1) + d] = A(j+d, j) for 0 <= d <= kd.
std::vector<double> banded_hermitian_eigenvalues(int n, int kd,
                                                 std::vector<cplx> ab);

/// Eigenvalues (ascending) of the Gram matrix A*A of a banded rectangular
/// matrix. Columns 0..ncols-1; column j has entries on rows
/// j-halfwidth .. j+halfwidth, reported by `column` as coefficient of
/// row j+d for d in [-halfwidth, halfwidth]. Squared singular values of A.
std::vector<double> banded_gram_eigenvalues(
    int ncols, int halfwidth,
    const std::function<cplx(int col, int d)>& column);

/// Number of singular values of the banded rectangular matrix below
/// rank_tol * sigma_max.
int banded_small_singular_count(
    int ncols, int halfwidth,
    const std::function<cplx(int col, int d)>& column, double rank_tol);

/// Smallest singular value of the banded rectangular matrix.
double banded_sigma_min(int ncols, int halfwidth,
                        const std::function<cplx(int col, int d)>& column);

}  // namespace limitop
