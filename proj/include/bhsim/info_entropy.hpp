#pragma once

#include "bhsim/matrix_core.hpp"

#include <cstdint>
#include <vector>

namespace bhsim {

struct Ensemble {
    RealVector weights;
    std::vector<DensityOperator> states;

    int size() const { return static_cast<int>(states.size()); }
    int dim() const { return states.empty() ? 0 : states.front().dim(); }

    /// Weighted average state.
    Matrix average() const;

    void validate() const;
};

struct ProjectiveMeasurement {
    std::vector<Matrix> projectors;

    int dim() const {
        return projectors.empty() ? 0 : static_cast<int>(projectors.front().rows());
    }
};

struct OptimizerSettings {
    int restarts = 20;
    int max_iters = 500;
    double step_tol = 1e-8;
    std::uint64_t seed = 0;

    void validate() const;
};

struct AccessibleInfoResult {
    double best = 0.0;
    ProjectiveMeasurement measurement;
    int iterations = 0;
};

/// -Tr(X log X) for an unnormalized positive operator; eigenvalues in
/// [-kPositivityTol, 0) are clamped to zero.
double entropy_unnormalized(const Matrix& x);

/// Von Neumann entropy in nats.
double von_neumann(const DensityOperator& rho);

/// Shannon entropy in nats with the 0 log 0 = 0 convention.
double shannon(const RealVector& p);

/// Quantum relative entropy S(rho || sigma); returns +infinity when the
/// support of rho is not contained in the support of sigma.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

/// Holevo quantity S(sum p rho) - sum p S(rho).
double holevo(const Ensemble& e);

/// Throws if the projectors are not idempotent, mutually orthogonal and
/// complete within kHermitianTol.
void validate_measurement(const ProjectiveMeasurement& m);

/// Mutual information of the ensemble under the measurement,
/// I = sum_{j,alpha} p_alpha p(j|alpha) log[p(j|alpha)/p(j)].
double mutual_info(const Ensemble& e, const ProjectiveMeasurement& m);

/// Rank-1 measurement whose projectors are built from the columns of a
/// unitary.
ProjectiveMeasurement basis_measurement(const Matrix& unitary);

/// Haar-random rank-1 orthonormal-basis measurement.
ProjectiveMeasurement random_basis_measurement(int d, RandomStream& rng);

/// Eigenbasis of a generic weighted combination of the ensemble members;
/// for mutually commuting ensembles this measurement saturates the Holevo
/// bound.
ProjectiveMeasurement common_eigenbasis_measurement(const Ensemble& e);

/// Maximizes mutual_info over rank-1 orthonormal-basis measurements by
/// derivative-free pattern search with random restarts. The basis unitary
/// is exp of an antihermitian matrix built from d^2 real parameters; the
/// first restart starts from the canonical basis. Deterministic given the
/// settings seed.
AccessibleInfoResult optimize_accessible_info(const Ensemble& e,
                                              const OptimizerSettings& s);

/// Exhaustive Bloch-angle grid maximum of the mutual information for qubit
/// ensembles (400 x 800 grid plus one 10x local refinement pass).
double qubit_oracle_accessible_info(const Ensemble& e);

}  // namespace bhsim
