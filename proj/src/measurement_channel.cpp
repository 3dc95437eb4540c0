#include "bhsim/measurement_channel.hpp"

#include "bhsim/info_entropy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bhsim {

KrausSet validate_kraus(std::vector<Matrix> ops) {
    if (ops.empty()) throw std::invalid_argument("kraus set: no operators");
    const Eigen::Index d = ops.front().rows();
    for (const auto& a : ops) {
        if (a.rows() != d || a.cols() != d) {
            throw std::invalid_argument("kraus set: operators must be square with equal dimension");
        }
    }
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& a : ops) sum += a.adjoint() * a;
    const double residual = max_abs(Matrix(sum - Matrix::Identity(d, d)));
    if (residual > kHermitianTol) {
        std::ostringstream msg;
        msg << "kraus set: completeness violation, residual norm " << residual;
        throw std::invalid_argument(msg.str());
    }
    return {static_cast<int>(d), std::move(ops)};
}

MeasurementOutcome apply_povm(const DensityOperator& rho, const KrausSet& k) {
    if (rho.dim() != k.dim) {
        throw std::invalid_argument("apply_povm: dimension mismatch");
    }
    const int K = k.outcome_count();
    MeasurementOutcome out;
    out.probs = RealVector::Zero(K);
    out.states.reserve(static_cast<std::size_t>(K));
    out.null_branch.resize(static_cast<std::size_t>(K), false);
    Matrix avg = Matrix::Zero(k.dim, k.dim);
    for (int a = 0; a < K; ++a) {
        const Matrix unnorm = k.operators[static_cast<std::size_t>(a)] * rho.mat *
                              k.operators[static_cast<std::size_t>(a)].adjoint();
        const double p = unnorm.trace().real();
        avg += unnorm;
        out.probs(a) = p;
        if (p <= kNullBranchTol) {
            out.null_branch[static_cast<std::size_t>(a)] = true;
            out.states.push_back(DensityOperator{Matrix::Zero(k.dim, k.dim)});
        } else {
            out.states.push_back(validate_density(unnorm / p));
        }
    }
    out.average = validate_density(avg);
    return out;
}

Dilation dilate(const KrausSet& k) {
    const int d = k.dim;
    const int K = k.outcome_count();
    const int n = d * K;
    Matrix u = Matrix::Zero(n, n);

    // Columns for detector state |Phi_0>: stacked Kraus blocks.
    for (int col = 0; col < d; ++col) {
        for (int a = 0; a < K; ++a) {
            for (int m = 0; m < d; ++m) {
                u(m * K + a, col * K) = k.operators[static_cast<std::size_t>(a)](m, col);
            }
        }
    }

    std::vector<int> fixed;
    for (int col = 0; col < d; ++col) fixed.push_back(col * K);

    // Complete the remaining columns by sequential orthogonalization of
    // canonical basis vectors, lowest index first.
    std::vector<int> done = fixed;
    int candidate = 0;
    for (int col = 0; col < n; ++col) {
        if (col % K == 0) continue;  // fixed column
        bool placed = false;
        while (candidate < n && !placed) {
            Vector v = Vector::Zero(n);
            v(candidate) = 1.0;
            ++candidate;
            for (int pass = 0; pass < 2; ++pass) {
                for (int c : done) v -= u.col(c).dot(v) * u.col(c);
            }
            const double norm = v.norm();
            if (norm > 1e-6) {
                u.col(col) = v / norm;
                done.push_back(col);
                placed = true;
            }
        }
        if (!placed) {
            std::ostringstream msg;
            msg << "dilate: completion failure at column " << col;
            throw std::runtime_error(msg.str());
        }
    }
    return {UnitaryMatrix::validated(std::move(u)), d, K, 0};
}

Matrix extract_kraus(const Dilation& dil, int alpha) {
    const int d = dil.system_dim;
    const int K = dil.detector_dim;
    Matrix a(d, d);
    for (int m = 0; m < d; ++m) {
        for (int nn = 0; nn < d; ++nn) {
            a(m, nn) = dil.unitary.matrix()(m * K + alpha, nn * K + dil.ready_index);
        }
    }
    return a;
}

JointPostState joint_post_state(const HartleHawkingState& state, const KrausSet& k) {
    const int d = state.level_count();
    if (k.dim != d) throw std::invalid_argument("joint_post_state: dimension mismatch");
    const int K = k.outcome_count();
    const auto dil = dilate(k);

    // |Psi> = sum_n sqrt(c_n) |n>_B |n>_A |Phi_0>, then 1_B x U.
    Vector psi = Vector::Zero(d * d * K);
    for (int n = 0; n < d; ++n) {
        psi((n * d + n) * K + dil.ready_index) = std::sqrt(state.weights(n));
    }
    Vector evolved = Vector::Zero(d * d * K);
    for (int b = 0; b < d; ++b) {
        evolved.segment(b * d * K, d * K) =
            dil.unitary.matrix() * psi.segment(b * d * K, d * K);
    }
    Matrix full = evolved * evolved.adjoint();

    // Decohere: remove detector off-diagonal blocks.
    for (Eigen::Index i = 0; i < full.rows(); ++i) {
        for (Eigen::Index j = 0; j < full.cols(); ++j) {
            if (i % K != j % K) full(i, j) = 0.0;
        }
    }
    const Matrix reduced = partial_trace(full, {d, d, K}, {1, 2});
    return {validate_density(full), validate_density(reduced)};
}

DropOutcome drop_state(const HartleHawkingState& state, const KrausSet& k,
                       const DropPlan& plan) {
    const int d = state.level_count();
    if (k.dim != d) throw std::invalid_argument("drop_state: dimension mismatch");
    const int K = k.outcome_count();

    std::vector<bool> dropped(static_cast<std::size_t>(K), false);
    for (int a : plan.drop_set) {
        if (a < 0 || a >= K) {
            throw std::invalid_argument("drop_state: drop set references unknown outcome label");
        }
        dropped[static_cast<std::size_t>(a)] = true;
    }
    if (!plan.inside_unitaries.empty() &&
        plan.inside_unitaries.size() != plan.drop_set.size()) {
        throw std::invalid_argument(
            "drop_state: inside_unitaries must align with drop_set");
    }
    for (const auto& v : plan.inside_unitaries) {
        if (v.dim() != d) {
            throw std::invalid_argument("drop_state: inside unitary dimension mismatch");
        }
    }

    Vector sqrt_c(d);
    for (int n = 0; n < d; ++n) sqrt_c(n) = std::sqrt(state.weights(n));

    // Per-branch state on A after tracing B, computed from the sigma'
    // branch amplitudes W = V diag(sqrt c) A^T so the V wash-out is a
    // numerical fact rather than an assumption.
    DropOutcome out;
    out.drop_set = plan.drop_set;
    out.branches.probs = RealVector::Zero(K);
    out.branches.null_branch.resize(static_cast<std::size_t>(K), false);
    Matrix avg = Matrix::Zero(d, d);
    std::vector<Matrix> unnorm(static_cast<std::size_t>(K));
    for (int a = 0; a < K; ++a) {
        Matrix v = Matrix::Identity(d, d);
        if (dropped[static_cast<std::size_t>(a)] && !plan.inside_unitaries.empty()) {
            for (std::size_t i = 0; i < plan.drop_set.size(); ++i) {
                if (plan.drop_set[i] == a) v = plan.inside_unitaries[i].matrix();
            }
        }
        const Matrix w = v * sqrt_c.asDiagonal() *
                         k.operators[static_cast<std::size_t>(a)].transpose();
        // Tr_B |w><w| with b the row index of W.
        const Matrix x = (w.adjoint() * w).conjugate();
        unnorm[static_cast<std::size_t>(a)] = x;
        const double p = x.trace().real();
        out.branches.probs(a) = p;
        avg += x;
        if (p <= kNullBranchTol) {
            out.branches.null_branch[static_cast<std::size_t>(a)] = true;
            out.branches.states.push_back(DensityOperator{Matrix::Zero(d, d)});
        } else {
            out.branches.states.push_back(validate_density(x / p));
        }
    }
    out.branches.average = validate_density(avg);

    double p_drop = 0.0;
    Matrix dropped_block = Matrix::Zero(d, d);
    for (int a = 0; a < K; ++a) {
        if (dropped[static_cast<std::size_t>(a)]) {
            p_drop += out.branches.probs(a);
            dropped_block += unnorm[static_cast<std::size_t>(a)];
        }
    }
    out.p_drop = p_drop;
    for (int a : plan.drop_set) {
        out.normalized_probs.push_back(p_drop > 0.0 ? out.branches.probs(a) / p_drop : 0.0);
    }

    Matrix joint = Matrix::Zero(d * K, d * K);
    if (p_drop > 0.0) {
        Matrix rho_d = Matrix::Zero(K, K);
        for (int a : plan.drop_set) rho_d(a, a) = out.branches.probs(a) / p_drop;
        out.detector_state = validate_density(rho_d);
        joint += tensor(dropped_block, rho_d);
    }
    for (int a = 0; a < K; ++a) {
        if (dropped[static_cast<std::size_t>(a)]) continue;
        Matrix e = Matrix::Zero(K, K);
        e(a, a) = 1.0;
        joint += tensor(unnorm[static_cast<std::size_t>(a)], e);
    }
    out.joint = validate_density(joint);
    return out;
}

double matter_entropy_closed_form(const DropOutcome& outcome) {
    const int K = static_cast<int>(outcome.branches.probs.size());
    std::vector<bool> dropped(static_cast<std::size_t>(K), false);
    for (int a : outcome.drop_set) dropped[static_cast<std::size_t>(a)] = true;

    double s = 0.0;
    if (outcome.p_drop > 0.0) {
        const int d = outcome.branches.average.dim();
        Matrix dropped_block = Matrix::Zero(d, d);
        for (int a : outcome.drop_set) {
            if (outcome.branches.null_branch[static_cast<std::size_t>(a)]) continue;
            dropped_block += outcome.branches.probs(a) *
                             outcome.branches.states[static_cast<std::size_t>(a)].mat;
            const double p_hat = outcome.branches.probs(a) / outcome.p_drop;
            s -= outcome.p_drop * p_hat * std::log(p_hat);
        }
        s += entropy_unnormalized(dropped_block);
    }
    for (int a = 0; a < K; ++a) {
        if (dropped[static_cast<std::size_t>(a)]) continue;
        if (outcome.branches.null_branch[static_cast<std::size_t>(a)]) continue;
        const double p = outcome.branches.probs(a);
        s += p * von_neumann(outcome.branches.states[static_cast<std::size_t>(a)]);
        s -= p * std::log(p);
    }
    return s;
}

KrausSet random_kraus(int d, int K, RandomStream& rng) {
    if (d < 1 || K < 1) throw std::invalid_argument("random_kraus: d, K must be >= 1");
    const auto u = haar_unitary(d * K, rng);
    Dilation dil{u, d, K, 0};
    std::vector<Matrix> ops;
    ops.reserve(static_cast<std::size_t>(K));
    for (int a = 0; a < K; ++a) ops.push_back(extract_kraus(dil, a));
    return validate_kraus(std::move(ops));
}

KrausSet diagonal_random_kraus(int d, int K, RandomStream& rng) {
    if (d < 1 || K < 1) {
        throw std::invalid_argument("diagonal_random_kraus: d, K must be >= 1");
    }
    // For each level n, a random unit vector in C^K distributes the level
    // over the outcomes.
    std::vector<Matrix> ops(static_cast<std::size_t>(K), Matrix::Zero(d, d));
    for (int n = 0; n < d; ++n) {
        Vector v(K);
        for (int a = 0; a < K; ++a) v(a) = rng.complex_gaussian();
        v /= v.norm();
        for (int a = 0; a < K; ++a) ops[static_cast<std::size_t>(a)](n, n) = v(a);
    }
    return validate_kraus(std::move(ops));
}

KrausSet eigenbasis_projective_kraus(int d) {
    std::vector<Matrix> ops;
    for (int a = 0; a < d; ++a) {
        Matrix p = Matrix::Zero(d, d);
        p(a, a) = 1.0;
        ops.push_back(p);
    }
    return validate_kraus(std::move(ops));
}

}  // namespace bhsim
