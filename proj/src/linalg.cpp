#include "limitop/linalg.hpp"

#include <lapacke.h>

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "limitop/errors.hpp"

namespace limitop {

namespace {

double power_iteration_norm(const Matrix& m) {
    const Eigen::Index n = m.cols();
    Matrix gram = m.adjoint() * m;
    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(dist(rng), dist(rng));
    v.normalize();
    const long cap = 100000;
    double prev = 0.0;
    for (long it = 0; it < cap; ++it) {
        Eigen::VectorXcd w = gram * v;
        double lambda = w.norm();
        if (lambda == 0.0) return 0.0;
        v = w / lambda;
        if (it > 0 && std::abs(lambda - prev) <= 1e-12 * std::max(lambda, 1.0))
            return std::sqrt(lambda);
        prev = lambda;
    }
    throw NoConvergence(cap);
}

}  // namespace

double spectral_norm(const Matrix& m) {
    if (m.rows() != m.cols()) throw NonSquare{};
    if (m.rows() == 0) return 0.0;
    if (m.rows() <= 64) {
        Eigen::JacobiSVD<Matrix> svd(m);
        return svd.singularValues()(0);
    }
    return power_iteration_norm(m);
}

double sigma_min(const Matrix& m) {
    if (m.rows() != m.cols()) throw NonSquare{};
    if (m.rows() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(m.rows() - 1);
}

std::vector<double> banded_hermitian_eigenvalues(int n, int kd,
                                                 std::vector<cplx> ab) {
    std::vector<double> eig(static_cast<std::size_t>(n));
    int info = LAPACKE_zhbev(
        LAPACK_COL_MAJOR, 'N', 'L', n, kd,
        reinterpret_cast<lapack_complex_double*>(ab.data()), kd + 1,
        eig.data(), nullptr, 1);
    if (info != 0)
        throw std::runtime_error("zhbev failed with info " +
                                 std::to_string(info));
    return eig;
}

std::vector<double> banded_gram_eigenvalues(
    int ncols, int halfwidth,
    const std::function<cplx(int col, int d)>& column) {
    const int w = halfwidth;
    const int kd = std::min(2 * w, ncols - 1);
    // Gram matrix G = A*A of the rectangular band, lower band storage.
    std::vector<cplx> ab(static_cast<std::size_t>(kd + 1) * ncols, cplx(0));
    for (int j = 0; j < ncols; ++j) {
        for (int t = 0; t <= kd && j + t < ncols; ++t) {
            const int k = j + t;
            cplx g(0);
            for (int d = t - w; d <= w; ++d)
                g += std::conj(column(j, d)) * column(k, j + d - k);
            ab[static_cast<std::size_t>(j) * (kd + 1) + t] = g;
        }
    }
    return banded_hermitian_eigenvalues(ncols, kd, std::move(ab));
}

int banded_small_singular_count(
    int ncols, int halfwidth,
    const std::function<cplx(int col, int d)>& column, double rank_tol) {
    auto eig = banded_gram_eigenvalues(ncols, halfwidth, column);
    const double top = std::max(eig.back(), 0.0);
    // Squaring into the Gram matrix halves the usable digits: zero
    // eigenvalues come back as O(eps * top) noise, so the cut cannot sit
    // below that floor.
    constexpr double kGramFloor = 64.0 * 2.220446049250313e-16;
    const double cut = std::max(rank_tol * rank_tol, kGramFloor) * top;
    int count = 0;
    for (double e : eig)
        if (e < cut || e <= 0.0) ++count;
    return count;
}

double banded_sigma_min(int ncols, int halfwidth,
                        const std::function<cplx(int col, int d)>& column) {
    auto eig = banded_gram_eigenvalues(ncols, halfwidth, column);
    return std::sqrt(std::max(eig.front(), 0.0));
}

}  // namespace limitop
