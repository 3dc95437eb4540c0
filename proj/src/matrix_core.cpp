#include "bhsim/matrix_core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bhsim {

int RandomStream::uniform_int(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
}

double RandomStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

double max_abs(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

UnitaryMatrix UnitaryMatrix::validated(Matrix m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("unitary matrix must be square");
    }
    const Matrix residual =
        m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    const double dev = max_abs(residual);
    if (dev > kHermitianTol) {
        std::ostringstream msg;
        msg << "unitarity violation " << dev;
        throw std::invalid_argument(msg.str());
    }
    return UnitaryMatrix(std::move(m));
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

namespace {

std::vector<Eigen::Index> strides_of(const std::vector<int>& dims) {
    std::vector<Eigen::Index> strides(dims.size());
    Eigen::Index acc = 1;
    for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
        strides[static_cast<std::size_t>(f)] = acc;
        acc *= dims[static_cast<std::size_t>(f)];
    }
    return strides;
}

// Decodes a flat index over the listed factors into a full-space offset.
Eigen::Index offset_of(Eigen::Index flat, const std::vector<int>& factor_dims,
                       const std::vector<Eigen::Index>& factor_strides) {
    Eigen::Index offset = 0;
    for (int f = static_cast<int>(factor_dims.size()) - 1; f >= 0; --f) {
        const auto uf = static_cast<std::size_t>(f);
        offset += (flat % factor_dims[uf]) * factor_strides[uf];
        flat /= factor_dims[uf];
    }
    return offset;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
    Eigen::Index total = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("partial_trace: factor dim < 1");
        total *= d;
    }
    if (m.rows() != m.cols() || m.rows() != total) {
        throw std::invalid_argument(
            "partial_trace: product of dims does not match matrix dimension");
    }
    std::vector<bool> kept(dims.size(), false);
    for (int f : keep) {
        if (f < 0 || f >= static_cast<int>(dims.size())) {
            throw std::invalid_argument("partial_trace: keep index out of range");
        }
        kept[static_cast<std::size_t>(f)] = true;
    }

    const auto strides = strides_of(dims);
    std::vector<int> keep_dims, trace_dims;
    std::vector<Eigen::Index> keep_strides, trace_strides;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        if (kept[f]) {
            keep_dims.push_back(dims[f]);
            keep_strides.push_back(strides[f]);
        } else {
            trace_dims.push_back(dims[f]);
            trace_strides.push_back(strides[f]);
        }
    }
    Eigen::Index dk = 1, dt = 1;
    for (int d : keep_dims) dk *= d;
    for (int d : trace_dims) dt *= d;

    std::vector<Eigen::Index> keep_offsets(static_cast<std::size_t>(dk));
    for (Eigen::Index i = 0; i < dk; ++i) {
        keep_offsets[static_cast<std::size_t>(i)] =
            offset_of(i, keep_dims, keep_strides);
    }
    std::vector<Eigen::Index> trace_offsets(static_cast<std::size_t>(dt));
    for (Eigen::Index t = 0; t < dt; ++t) {
        trace_offsets[static_cast<std::size_t>(t)] =
            offset_of(t, trace_dims, trace_strides);
    }

    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i) {
        for (Eigen::Index j = 0; j < dk; ++j) {
            Complex acc = 0.0;
            for (Eigen::Index t = 0; t < dt; ++t) {
                const Eigen::Index to = trace_offsets[static_cast<std::size_t>(t)];
                acc += m(keep_offsets[static_cast<std::size_t>(i)] + to,
                         keep_offsets[static_cast<std::size_t>(j)] + to);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

Matrix hermitian_fn(const Matrix& m, const std::function<double(double)>& f,
                    bool require_nonneg) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("hermitian_fn: matrix must be square");
    }
    const double herm_dev = max_abs(Matrix(m - m.adjoint()));
    if (herm_dev > kHermitianTol) {
        std::ostringstream msg;
        msg << "hermitian_fn: hermiticity violation " << herm_dev;
        throw std::invalid_argument(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
    RealVector evals = solver.eigenvalues();
    if (require_nonneg) {
        for (Eigen::Index i = 0; i < evals.size(); ++i) {
            if (evals(i) < -kPositivityTol) {
                std::ostringstream msg;
                msg << "hermitian_fn: negative eigenvalue " << evals(i);
                throw std::invalid_argument(msg.str());
            }
            if (evals(i) < 0.0) evals(i) = 0.0;
        }
    }
    RealVector mapped(evals.size());
    for (Eigen::Index i = 0; i < evals.size(); ++i) mapped(i) = f(evals(i));
    return solver.eigenvectors() * mapped.asDiagonal() *
           solver.eigenvectors().adjoint();
}

UnitaryMatrix haar_unitary(int d, RandomStream& rng) {
    if (d < 1) throw std::invalid_argument("haar_unitary: d must be >= 1");
    Matrix z(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) z(i, j) = rng.complex_gaussian();
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the column phases so the distribution is exactly Haar.
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
    }
    return UnitaryMatrix::validated(std::move(q));
}

DensityOperator random_density(int d, RandomStream& rng) {
    Matrix g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return validate_density(rho);
}

DensityOperator validate_density(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("density operator must be square");
    }
    const double herm_dev = max_abs(Matrix(m - m.adjoint()));
    if (herm_dev > kHermitianTol) {
        std::ostringstream msg;
        msg << "density operator hermiticity violation " << herm_dev;
        throw std::invalid_argument(msg.str());
    }
    const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
    if (trace_dev > kTraceTol) {
        std::ostringstream msg;
        msg << "density operator trace violation " << trace_dev;
        throw std::invalid_argument(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
    const double min_eval = solver.eigenvalues().minCoeff();
    if (min_eval < -kPositivityTol) {
        std::ostringstream msg;
        msg << "density operator positivity violation " << -min_eval;
        throw std::invalid_argument(msg.str());
    }
    return DensityOperator{m};
}

}  // namespace bhsim
