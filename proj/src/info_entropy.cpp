#include "bhsim/info_entropy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bhsim {

Matrix Ensemble::average() const {
    Matrix avg = Matrix::Zero(dim(), dim());
    for (int a = 0; a < size(); ++a) {
        avg += weights(a) * states[static_cast<std::size_t>(a)].mat;
    }
    return avg;
}

void Ensemble::validate() const {
    if (states.empty() || weights.size() != size()) {
        throw std::invalid_argument("ensemble: weights and states must align");
    }
    double sum = 0.0;
    for (int a = 0; a < size(); ++a) {
        if (weights(a) < 0.0) throw std::invalid_argument("ensemble: negative weight");
        if (states[static_cast<std::size_t>(a)].dim() != dim()) {
            throw std::invalid_argument("ensemble: state dimension mismatch");
        }
        sum += weights(a);
    }
    if (std::abs(sum - 1.0) > kTraceTol) {
        throw std::invalid_argument("ensemble: weights do not sum to 1");
    }
}

void OptimizerSettings::validate() const {
    if (restarts < 1 || max_iters < 1 || step_tol <= 0.0) {
        throw std::invalid_argument("optimizer settings: all fields must be positive");
    }
}

double entropy_unnormalized(const Matrix& x) {
    if (x.rows() != x.cols()) {
        throw std::invalid_argument("entropy: matrix must be square");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (x + x.adjoint()),
                                                 Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lam = solver.eigenvalues()(i);
        if (lam < -kPositivityTol) {
            std::ostringstream msg;
            msg << "entropy: negative eigenvalue " << lam;
            throw std::invalid_argument(msg.str());
        }
        if (lam > 0.0) s -= lam * std::log(lam);
    }
    return s;
}

double von_neumann(const DensityOperator& rho) {
    return entropy_unnormalized(rho.mat);
}

double shannon(const RealVector& p) {
    double sum = 0.0;
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) < -kTraceTol) {
            throw std::invalid_argument("shannon: negative probability");
        }
        sum += p(i);
        if (p(i) > 0.0) s -= p(i) * std::log(p(i));
    }
    if (std::abs(sum - 1.0) > kTraceTol) {
        throw std::invalid_argument("shannon: probabilities do not sum to 1");
    }
    return s;
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("relative_entropy: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> sig(0.5 * (sigma.mat + sigma.mat.adjoint()));
    const Matrix r = sig.eigenvectors().adjoint() * rho.mat * sig.eigenvectors();
    double tr_rho_log_sigma = 0.0;
    for (Eigen::Index i = 0; i < sig.eigenvalues().size(); ++i) {
        const double lam = sig.eigenvalues()(i);
        const double weight = r(i, i).real();
        if (lam < 1e-12) {
            if (weight > 1e-12) return std::numeric_limits<double>::infinity();
            continue;
        }
        tr_rho_log_sigma += weight * std::log(lam);
    }
    return -von_neumann(rho) - tr_rho_log_sigma;
}

double holevo(const Ensemble& e) {
    e.validate();
    double s = entropy_unnormalized(e.average());
    for (int a = 0; a < e.size(); ++a) {
        if (e.weights(a) > 0.0) {
            s -= e.weights(a) * von_neumann(e.states[static_cast<std::size_t>(a)]);
        }
    }
    return s;
}

void validate_measurement(const ProjectiveMeasurement& m) {
    if (m.projectors.empty()) {
        throw std::invalid_argument("measurement: no projectors");
    }
    const int d = m.dim();
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < m.projectors.size(); ++j) {
        const Matrix& e = m.projectors[j];
        if (e.rows() != d || e.cols() != d) {
            throw std::invalid_argument("measurement: projector dimension mismatch");
        }
        if (max_abs(Matrix(e - e.adjoint())) > kHermitianTol) {
            throw std::invalid_argument("measurement: projector not Hermitian");
        }
        if (max_abs(Matrix(e * e - e)) > kHermitianTol) {
            throw std::invalid_argument("measurement: projector not idempotent");
        }
        for (std::size_t kk = 0; kk < j; ++kk) {
            if (max_abs(Matrix(e * m.projectors[kk])) > kHermitianTol) {
                throw std::invalid_argument("measurement: projectors not orthogonal");
            }
        }
        sum += e;
    }
    if (max_abs(Matrix(sum - Matrix::Identity(d, d))) > kHermitianTol) {
        throw std::invalid_argument("measurement: projectors do not sum to identity");
    }
}

namespace {

// Mutual information from a conditional probability table p(j|alpha),
// columns indexed by alpha.
double mutual_info_from_table(const RealVector& weights,
                              const Eigen::MatrixXd& cond) {
    const Eigen::Index nj = cond.rows();
    const Eigen::Index na = cond.cols();
    RealVector pj = RealVector::Zero(nj);
    for (Eigen::Index a = 0; a < na; ++a) pj += weights(a) * cond.col(a);
    double info = 0.0;
    for (Eigen::Index j = 0; j < nj; ++j) {
        for (Eigen::Index a = 0; a < na; ++a) {
            const double pja = cond(j, a);
            if (pja <= 0.0 || weights(a) <= 0.0) continue;
            info += weights(a) * pja * std::log(pja / pj(j));
        }
    }
    return info;
}

double mutual_info_from_basis(const Ensemble& e, const Matrix& basis) {
    const int d = e.dim();
    const int na = e.size();
    Eigen::MatrixXd cond(d, na);
    for (int a = 0; a < na; ++a) {
        for (int j = 0; j < d; ++j) {
            const double p =
                (basis.col(j).adjoint() * e.states[static_cast<std::size_t>(a)].mat *
                 basis.col(j))(0, 0)
                    .real();
            cond(j, a) = p > 0.0 ? p : 0.0;
        }
    }
    return mutual_info_from_table(e.weights, cond);
}

// Antihermitian generator from d^2 real parameters: imaginary diagonal plus
// real/imaginary off-diagonal pairs.
Matrix generator_from_params(const RealVector& theta, int d) {
    Matrix a = Matrix::Zero(d, d);
    int idx = 0;
    for (int i = 0; i < d; ++i) a(i, i) = Complex(0.0, theta(idx++));
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double re = theta(idx++);
            const double im = theta(idx++);
            a(i, j) = Complex(re, im);
            a(j, i) = Complex(-re, im);
        }
    }
    return a;
}

Matrix basis_from_params(const RealVector& theta, int d) {
    const Matrix a = generator_from_params(theta, d);
    // exp(A) = V exp(i lambda) V' with H = -iA Hermitian.
    const Matrix h = Complex(0.0, -1.0) * a;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
    Vector phases(d);
    for (int i = 0; i < d; ++i) {
        phases(i) = std::exp(Complex(0.0, solver.eigenvalues()(i)));
    }
    return solver.eigenvectors() * phases.asDiagonal() *
           solver.eigenvectors().adjoint();
}

}  // namespace

double mutual_info(const Ensemble& e, const ProjectiveMeasurement& m) {
    e.validate();
    validate_measurement(m);
    if (m.dim() != e.dim()) {
        throw std::invalid_argument("mutual_info: dimension mismatch");
    }
    const int nj = static_cast<int>(m.projectors.size());
    const int na = e.size();
    Eigen::MatrixXd cond(nj, na);
    for (int a = 0; a < na; ++a) {
        for (int j = 0; j < nj; ++j) {
            const double p = (m.projectors[static_cast<std::size_t>(j)] *
                              e.states[static_cast<std::size_t>(a)].mat)
                                 .trace()
                                 .real();
            cond(j, a) = p > 0.0 ? p : 0.0;
        }
    }
    return mutual_info_from_table(e.weights, cond);
}

ProjectiveMeasurement basis_measurement(const Matrix& unitary) {
    ProjectiveMeasurement m;
    for (Eigen::Index j = 0; j < unitary.cols(); ++j) {
        m.projectors.push_back(unitary.col(j) * unitary.col(j).adjoint());
    }
    return m;
}

ProjectiveMeasurement random_basis_measurement(int d, RandomStream& rng) {
    return basis_measurement(haar_unitary(d, rng).matrix());
}

ProjectiveMeasurement common_eigenbasis_measurement(const Ensemble& e) {
    e.validate();
    const int d = e.dim();
    // Generic irrational weights break degeneracies of the combination so
    // its eigenbasis diagonalizes every member of a commuting family.
    Matrix combo = Matrix::Zero(d, d);
    for (int a = 0; a < e.size(); ++a) {
        const double w = 1.0 + std::fmod(std::numbers::phi * (a + 1), 1.0);
        combo += w * e.states[static_cast<std::size_t>(a)].mat;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (combo + combo.adjoint()));
    return basis_measurement(solver.eigenvectors());
}

AccessibleInfoResult optimize_accessible_info(const Ensemble& e,
                                              const OptimizerSettings& s) {
    e.validate();
    s.validate();
    const int d = e.dim();
    const int n_params = d * d;

    AccessibleInfoResult result;
    result.best = -1.0;
    RealVector best_theta = RealVector::Zero(n_params);

    for (int r = 0; r < s.restarts; ++r) {
        // Restart seeds derived by index so results do not depend on
        // scheduling.
        RandomStream rng(s.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(r) + 1);
        RealVector theta = RealVector::Zero(n_params);
        if (r > 0) {
            for (int i = 0; i < n_params; ++i) {
                theta(i) = rng.uniform(-std::numbers::pi, std::numbers::pi);
            }
        }
        double value = mutual_info_from_basis(e, basis_from_params(theta, d));
        double step = 0.5;
        int iters = 0;
        while (step > s.step_tol && iters < s.max_iters) {
            bool improved = false;
            for (int i = 0; i < n_params; ++i) {
                for (double sign : {1.0, -1.0}) {
                    RealVector trial = theta;
                    trial(i) += sign * step;
                    const double v = mutual_info_from_basis(e, basis_from_params(trial, d));
                    if (v > value + 1e-15) {
                        value = v;
                        theta = trial;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
            ++iters;
        }
        result.iterations += iters;
        if (value > result.best) {
            result.best = value;
            best_theta = theta;
        }
    }
    result.measurement = basis_measurement(basis_from_params(best_theta, d));
    return result;
}

double qubit_oracle_accessible_info(const Ensemble& e) {
    e.validate();
    if (e.dim() != 2) {
        throw std::invalid_argument("qubit oracle: ensemble dimension must be 2");
    }
    const auto eval = [&](double th, double ph) {
        const Complex eip = std::exp(Complex(0.0, ph));
        Matrix basis(2, 2);
        basis(0, 0) = std::cos(th / 2);
        basis(1, 0) = eip * std::sin(th / 2);
        basis(0, 1) = -std::sin(th / 2);
        basis(1, 1) = eip * std::cos(th / 2);
        return mutual_info_from_basis(e, basis);
    };

    const int n_theta = 400;
    const int n_phi = 800;
    const double d_theta = std::numbers::pi / (n_theta - 1);
    const double d_phi = 2.0 * std::numbers::pi / n_phi;
    double best = -1.0;
    double best_th = 0.0;
    double best_ph = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        for (int j = 0; j < n_phi; ++j) {
            const double v = eval(i * d_theta, j * d_phi);
            if (v > best) {
                best = v;
                best_th = i * d_theta;
                best_ph = j * d_phi;
            }
        }
    }
    // One refinement pass at 10x resolution around the best cell.
    for (int i = -10; i <= 10; ++i) {
        for (int j = -10; j <= 10; ++j) {
            const double v = eval(best_th + i * d_theta / 10.0,
                                  best_ph + j * d_phi / 10.0);
            if (v > best) best = v;
        }
    }
    return best;
}

}  // namespace bhsim
