// Independent brute-force oracles used by the test suites only. These must
// stay decoupled from the implementation paths they check.
#pragma once

#include "bhsim/matrix_core.hpp"

namespace bhsim::oracles {

/// Entrywise quadruple-loop Kronecker product.
inline Matrix kron_brute_force(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            for (Eigen::Index k = 0; k < b.rows(); ++k) {
                for (Eigen::Index l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Truncated power series sum_{k<=terms} M^k / k!.
inline Matrix exp_power_series(const Matrix& m, int terms = 40) {
    Matrix acc = Matrix::Identity(m.rows(), m.cols());
    Matrix term = Matrix::Identity(m.rows(), m.cols());
    for (int k = 1; k <= terms; ++k) {
        term = term * m / static_cast<double>(k);
        acc += term;
    }
    return acc;
}

inline Matrix random_matrix(int rows, int cols, RandomStream& rng) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
    }
    return m;
}

inline Matrix random_hermitian(int d, RandomStream& rng) {
    const Matrix g = random_matrix(d, d, rng);
    return 0.5 * (g + g.adjoint());
}

}  // namespace bhsim::oracles
