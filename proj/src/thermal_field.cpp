#include "bhsim/thermal_field.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bhsim {

double ThermalSpec::tail_weight() const {
    const double x = ratio();
    return std::exp(-x * n_trunc) / (1.0 - std::exp(-x));
}

void ThermalSpec::validate() const {
    if (omega <= 0.0) throw std::invalid_argument("thermal spec: omega must be > 0");
    if (t_bh <= 0.0) throw std::invalid_argument("thermal spec: t_bh must be > 0");
    if (n_trunc < 2) throw std::invalid_argument("thermal spec: n_trunc must be >= 2");
    if (ratio() < 1e-12) {
        throw std::invalid_argument(
            "thermal spec: omega/t_bh below 1e-12, near-degenerate spectrum");
    }
    if (tail_mode == TailMode::faithful && tail_weight() > 1e-12) {
        std::ostringstream msg;
        msg << "thermal spec: truncation tail " << tail_weight()
            << " exceeds 1e-12 in faithful mode";
        throw std::invalid_argument(msg.str());
    }
}

GibbsWeights gibbs_weights(const ThermalSpec& spec) {
    spec.validate();
    const double x = spec.ratio();
    RealVector w(spec.n_trunc);
    double z = 0.0;
    for (int n = 0; n < spec.n_trunc; ++n) {
        w(n) = std::exp(-x * n);
        z += w(n);
    }
    w /= z;
    return {w, z};
}

HartleHawkingState hh_state(const ThermalSpec& spec) {
    const auto gibbs = gibbs_weights(spec);
    const int d = spec.n_trunc;
    Vector amplitudes = Vector::Zero(d * d);
    for (int n = 0; n < d; ++n) {
        amplitudes(n * d + n) = std::sqrt(gibbs.weights(n));
    }
    return {spec, amplitudes, gibbs.weights, gibbs.partition_sum};
}

DensityOperator reduce_to_A(const HartleHawkingState& state) {
    Matrix rho = Matrix::Zero(state.spec.n_trunc, state.spec.n_trunc);
    for (int n = 0; n < state.spec.n_trunc; ++n) rho(n, n) = state.weights(n);
    return validate_density(rho);
}

Matrix mode_hamiltonian(const ThermalSpec& spec) {
    Matrix h = Matrix::Zero(spec.n_trunc, spec.n_trunc);
    for (int n = 0; n < spec.n_trunc; ++n) h(n, n) = spec.omega * n;
    return h;
}

Matrix hh_projector(const HartleHawkingState& state) {
    return state.amplitudes * state.amplitudes.adjoint();
}

}  // namespace bhsim
