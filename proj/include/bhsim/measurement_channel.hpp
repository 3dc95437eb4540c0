#pragma once

#include "bhsim/matrix_core.hpp"
#include "bhsim/thermal_field.hpp"

#include <optional>
#include <vector>

namespace bhsim {

/// Kraus family {A_alpha} with sum_alpha A'A = 1; construct through
/// validate_kraus().
struct KrausSet {
    int dim = 0;
    std::vector<Matrix> operators;

    int outcome_count() const { return static_cast<int>(operators.size()); }
};

struct MeasurementOutcome {
    RealVector probs;                       // p_alpha
    std::vector<DensityOperator> states;    // rho'_alpha (zero matrix on null branches)
    std::vector<bool> null_branch;          // p_alpha <= kNullBranchTol
    DensityOperator average;                // sum_alpha p_alpha rho'_alpha
};

/// Unitary on system x detector realizing the Kraus family as
/// A_alpha = <Phi_alpha| U |Phi_0>. Index order: system slower, detector
/// faster, matching the global B x A x detector convention.
struct Dilation {
    UnitaryMatrix unitary;
    int system_dim;
    int detector_dim;
    int ready_index;  // detector basis index of |Phi_0>
};

struct JointPostState {
    DensityOperator full;     // decohered state on B x A x detector
    DensityOperator reduced;  // trace over B: rho'_{A Phi}
};

struct DropPlan {
    std::vector<int> drop_set;
    // Optional inside unitaries V_alpha on the B factor, aligned with
    // drop_set. Empty means V_alpha = 1.
    std::vector<UnitaryMatrix> inside_unitaries;
    std::optional<double> detector_radius;
};

struct DropOutcome {
    DensityOperator joint;                  // sigma'_{A Phi} on A x detector
    double p_drop = 0.0;
    std::vector<int> drop_set;
    std::vector<double> normalized_probs;   // p_hat, aligned with drop_set
    std::optional<DensityOperator> detector_state;  // rho_D when p_drop > 0
    MeasurementOutcome branches;            // p_alpha, rho'_alpha for all alpha
};

/// Checks completeness sum A'A = 1 within kHermitianTol; throws with the
/// residual norm otherwise.
KrausSet validate_kraus(std::vector<Matrix> ops);

/// Measurement update: p_alpha = Tr(A rho A'), rho'_alpha = A rho A'/p.
MeasurementOutcome apply_povm(const DensityOperator& rho, const KrausSet& k);

/// Builds the dilation unitary. The d columns belonging to the ready
/// detector state are fixed by stacking the Kraus blocks; the remaining
/// columns are completed deterministically by Gram-Schmidt against
/// canonical basis vectors in index order.
Dilation dilate(const KrausSet& k);

/// Recovers A_alpha = <Phi_alpha| U |Phi_0> from a dilation.
Matrix extract_kraus(const Dilation& dil, int alpha);

/// Applies 1_B x U to the extended Hartle-Hawking state, decoheres to the
/// detector-diagonal form, and traces out B.
JointPostState joint_post_state(const HartleHawkingState& state, const KrausSet& k);

/// Conditional detector-drop protocol. Dropped branches contribute
/// (sum_D p rho') x rho_D, kept branches p rho' x |Phi><Phi|; the result
/// does not depend on the inside unitaries.
DropOutcome drop_state(const HartleHawkingState& state, const KrausSet& k,
                       const DropPlan& plan);

/// Closed-form matter entropy S'_M of the dropped/kept mixture, in nats.
double matter_entropy_closed_form(const DropOutcome& outcome);

/// Random Kraus set extracted from a Haar unitary on d*K; always complete.
KrausSet random_kraus(int d, int K, RandomStream& rng);

/// Random Kraus set of diagonal operators; commutes with the mode
/// Hamiltonian, so internal-energy conservation holds exactly.
KrausSet diagonal_random_kraus(int d, int K, RandomStream& rng);

/// Projective measurement in the computational (thermal) eigenbasis:
/// A_alpha = |alpha><alpha|, K = d.
KrausSet eigenbasis_projective_kraus(int d);

}  // namespace bhsim
