#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace bhsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Shared numerical tolerances for state validation.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kNullBranchTol = 1e-14;

/// Deterministic random stream. Gaussian variates are produced by an
/// explicit Box-Muller transform on top of mt19937_64 so that sequences are
/// reproducible across standard-library implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi);

    /// Standard normal variate.
    double gaussian();

    /// Complex variate with independent N(0,1) real and imaginary parts.
    Complex complex_gaussian() { return {gaussian(), gaussian()}; }

    /// Derives a seed for a child stream.
    std::uint64_t next_seed() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Largest absolute entry of a matrix; the max-norm used by all tolerance
/// checks.
double max_abs(const Matrix& m);

/// Unitary matrix with ||U'U - 1||_max <= kHermitianTol, checked at
/// construction via the validated() factory.
class UnitaryMatrix {
public:
    static UnitaryMatrix validated(Matrix m);

    const Matrix& matrix() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

private:
    explicit UnitaryMatrix(Matrix m) : mat_(std::move(m)) {}
    Matrix mat_;
};

/// Hermitian, positive semidefinite, unit-trace operator. Construct through
/// validate_density().
struct DensityOperator {
    Matrix mat;

    int dim() const { return static_cast<int>(mat.rows()); }
};

/// Kronecker product; the left factor carries the slower-varying index:
/// result(i*rb + k, j*cb + l) = a(i,j) * b(k,l).
Matrix tensor(const Matrix& a, const Matrix& b);

/// Partial trace over the factors not listed in `keep`. `dims` lists the
/// factor dimensions in tensor order (first factor slowest); the kept
/// factors retain their relative order. Throws on dimension mismatch.
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);

/// Applies a scalar function to a Hermitian matrix through its spectral
/// decomposition. With `require_nonneg`, eigenvalues in [-kPositivityTol, 0)
/// are clamped to zero and anything below that is a hard error.
Matrix hermitian_fn(const Matrix& m, const std::function<double(double)>& f,
                    bool require_nonneg = false);

/// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phase correction.
UnitaryMatrix haar_unitary(int d, RandomStream& rng);

/// Random full-rank density operator (normalized Ginibre Gram matrix).
DensityOperator random_density(int d, RandomStream& rng);

/// Validates Hermiticity, unit trace and positivity; throws
/// std::invalid_argument naming the violated invariant and its magnitude.
DensityOperator validate_density(const Matrix& m);

}  // namespace bhsim
