#pragma once

#include "bhsim/matrix_core.hpp"

namespace bhsim {

enum class TailMode { faithful, relaxed };

/// Single field mode at frequency omega in equilibrium with a horizon at
/// temperature t_bh, truncated to the lowest n_trunc levels. Geometrized
/// units throughout (hbar = c = G = k_B = 1).
struct ThermalSpec {
    double omega;
    double t_bh;
    int n_trunc;
    TailMode tail_mode = TailMode::faithful;

    double ratio() const { return omega / t_bh; }

    /// Boltzmann weight discarded by the truncation,
    /// exp(-x * n_trunc) / (1 - exp(-x)).
    double tail_weight() const;

    /// Throws std::invalid_argument on bad parameters; in faithful mode the
    /// truncation tail must not exceed 1e-12.
    void validate() const;
};

struct GibbsWeights {
    RealVector weights;     // c_n, renormalized over the retained levels
    double partition_sum;   // truncated Z
};

struct HartleHawkingState {
    ThermalSpec spec;
    Vector amplitudes;      // sqrt(c_n) at index n * n_trunc + n (B slower)
    RealVector weights;
    double partition_sum;

    int level_count() const { return spec.n_trunc; }
};

/// Boltzmann weights c_n = exp(-omega n / t_bh) / Z over the retained
/// levels, with Z the truncated partition sum.
GibbsWeights gibbs_weights(const ThermalSpec& spec);

/// Two-mode entangled pure state sum_n sqrt(c_n) |n>_B |n>_A.
HartleHawkingState hh_state(const ThermalSpec& spec);

/// Thermal reduction over the inside mode: rho_A = sum_n c_n |n><n|.
DensityOperator reduce_to_A(const HartleHawkingState& state);

/// Outside-mode Hamiltonian omega * diag(0, 1, ..., n_trunc - 1).
Matrix mode_hamiltonian(const ThermalSpec& spec);

/// Projector |psi><psi| on the doubled B x A space.
Matrix hh_projector(const HartleHawkingState& state);

}  // namespace bhsim
