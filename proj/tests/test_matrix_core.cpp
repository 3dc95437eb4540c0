#include "bhsim/matrix_core.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace bhsim;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("tensor: identity and projector cases") {
    const Matrix i2 = Matrix::Identity(2, 2);
    CHECK(max_abs(Matrix(tensor(i2, i2) - Matrix::Identity(4, 4))) == 0.0);

    const Matrix p = tensor(diag2(1, 0), diag2(0, 1));
    Matrix expected = Matrix::Zero(4, 4);
    expected(1, 1) = 1.0;
    CHECK(max_abs(Matrix(p - expected)) == 0.0);
}

TEST_CASE("tensor: matches quadruple-loop oracle on random factors") {
    RandomStream rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix x = oracles::random_matrix(2, 2, rng);
        const Matrix y = oracles::random_matrix(2, 2, rng);
        CHECK(max_abs(Matrix(tensor(x, y) - oracles::kron_brute_force(x, y))) == 0.0);
    }
}

TEST_CASE("tensor: associativity up to multiplication rounding") {
    RandomStream rng(12);
    const Matrix a = oracles::random_matrix(2, 3, rng);
    const Matrix b = oracles::random_matrix(3, 2, rng);
    const Matrix c = oracles::random_matrix(2, 2, rng);
    CHECK(max_abs(Matrix(tensor(tensor(a, b), c) - tensor(a, tensor(b, c)))) < 1e-14);
}

TEST_CASE("partial_trace: product state factorization") {
    RandomStream rng(13);
    const auto rho = random_density(3, rng);
    const auto sigma = random_density(2, rng);
    const Matrix joint = tensor(rho.mat, sigma.mat);
    CHECK(max_abs(Matrix(partial_trace(joint, {3, 2}, {0}) - rho.mat)) < 1e-14);
    CHECK(max_abs(Matrix(partial_trace(joint, {3, 2}, {1}) - sigma.mat)) < 1e-14);
}

TEST_CASE("partial_trace: Bell state reduces to maximally mixed") {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const Matrix proj = bell * bell.adjoint();
    const Matrix reduced = partial_trace(proj, {2, 2}, {0});
    CHECK(max_abs(Matrix(reduced - 0.5 * Matrix::Identity(2, 2))) < 1e-15);
}

TEST_CASE("partial_trace: composes and preserves trace") {
    RandomStream rng(14);
    const Matrix m = oracles::random_matrix(12, 12, rng);
    const Matrix two_step =
        partial_trace(partial_trace(m, {2, 3, 2}, {0, 2}), {2, 2}, {0});
    const Matrix one_step = partial_trace(m, {2, 3, 2}, {0});
    CHECK(max_abs(Matrix(two_step - one_step)) < 1e-12);
    CHECK(std::abs(partial_trace(m, {2, 3, 2}, {1}).trace() - m.trace()) < 1e-12);
}

TEST_CASE("partial_trace: dimension mismatch rejected") {
    const Matrix m = Matrix::Identity(4, 4);
    CHECK_THROWS_AS(partial_trace(m, {2, 3}, {0}), std::invalid_argument);
}

TEST_CASE("hermitian_fn: diagonal and identity-spectrum cases") {
    const Matrix e = hermitian_fn(Matrix::Identity(2, 2),
                                  [](double x) { return std::exp(x); });
    CHECK(max_abs(Matrix(e - std::exp(1.0) * Matrix::Identity(2, 2))) < 1e-14);

    const Matrix root = hermitian_fn(diag2(1, 4), [](double x) { return std::sqrt(x); },
                                     true);
    CHECK(max_abs(Matrix(root - diag2(1, 2))) < 1e-14);
}

TEST_CASE("hermitian_fn: exp matches power-series oracle") {
    RandomStream rng(15);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix h = oracles::random_hermitian(3, rng);
        const Matrix via_spectrum = hermitian_fn(h, [](double x) { return std::exp(x); });
        CHECK(max_abs(Matrix(via_spectrum - oracles::exp_power_series(h))) < 1e-10);
    }
}

TEST_CASE("hermitian_fn: identity function is the identity map") {
    RandomStream rng(16);
    const Matrix h = oracles::random_hermitian(4, rng);
    CHECK(max_abs(Matrix(hermitian_fn(h, [](double x) { return x; }) - h)) < 1e-10);
}

TEST_CASE("hermitian_fn: rejects non-Hermitian input and negative spectra") {
    RandomStream rng(17);
    const Matrix g = oracles::random_matrix(3, 3, rng);
    CHECK_THROWS_AS(hermitian_fn(g, [](double x) { return x; }), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_fn(diag2(1, -1), [](double x) { return std::sqrt(x); }, true),
                    std::invalid_argument);
}

TEST_CASE("haar_unitary: unitarity, d=1 phase, determinism") {
    RandomStream rng(18);
    const auto u1 = haar_unitary(1, rng);
    CHECK(std::abs(std::abs(u1.matrix()(0, 0)) - 1.0) < 1e-12);

    for (int d : {2, 5}) {
        const auto u = haar_unitary(d, rng);
        CHECK(max_abs(Matrix(u.matrix().adjoint() * u.matrix() -
                             Matrix::Identity(d, d))) < 1e-12);
    }

    RandomStream a(99), b(99);
    CHECK(max_abs(Matrix(haar_unitary(4, a).matrix() - haar_unitary(4, b).matrix())) == 0.0);
}

TEST_CASE("haar_unitary: first-moment |U_00|^2 is 1/d") {
    RandomStream rng(19);
    const int d = 4;
    const int samples = 100000;
    double mean = 0.0;
    double mean_sq = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double v = std::norm(haar_unitary(d, rng).matrix()(0, 0));
        mean += v;
        mean_sq += v * v;
    }
    mean /= samples;
    mean_sq /= samples;
    const double stderr_mean = std::sqrt((mean_sq - mean * mean) / samples);
    CHECK(std::abs(mean - 1.0 / d) < 3.0 * stderr_mean);
}

TEST_CASE("validate_density: accepts valid states, names violations") {
    CHECK_NOTHROW(validate_density(diag2(0.5, 0.5)));
    CHECK_NOTHROW(validate_density(diag2(1.0 + 1e-13, -1e-13)));
    CHECK_THROWS_WITH_AS(validate_density(diag2(0.6, 0.6)),
                         doctest::Contains("trace violation"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(validate_density(diag2(1.5, -0.5)),
                         doctest::Contains("positivity violation"), std::invalid_argument);
    Matrix skew = diag2(0.5, 0.5);
    skew(0, 1) = Complex(0.0, 1e-3);
    CHECK_THROWS_WITH_AS(validate_density(skew), doctest::Contains("hermiticity"),
                         std::invalid_argument);
}
