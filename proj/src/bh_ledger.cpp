#include "bhsim/bh_ledger.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bhsim {

BlackHoleParams BlackHoleParams::from_mass(double m) {
    if (m <= 0.0) throw std::invalid_argument("black hole mass must be > 0");
    return {m, hawking_temperature(m), bh_entropy(m)};
}

double hawking_temperature(double mass) {
    if (mass <= 0.0) throw std::invalid_argument("hawking_temperature: mass must be > 0");
    return 1.0 / (8.0 * std::numbers::pi * mass);
}

double bh_entropy(double mass) {
    if (mass <= 0.0) throw std::invalid_argument("bh_entropy: mass must be > 0");
    return 4.0 * std::numbers::pi * mass * mass;
}

double blueshift_factor(double r, double mass) {
    if (mass <= 0.0) throw std::invalid_argument("blueshift_factor: mass must be > 0");
    if (r <= 2.0 * mass) {
        throw std::invalid_argument("blueshift_factor: radius at or inside horizon");
    }
    return std::sqrt(1.0 - 2.0 * mass / r);
}

double local_temperature(double r, double mass) {
    return hawking_temperature(mass) / blueshift_factor(r, mass);
}

namespace {

FreeEnergyResult free_energy_from_branches(const MeasurementOutcome& branches,
                                           const HartleHawkingState& state,
                                           const BlackHoleParams& bh) {
    const auto rho_a = reduce_to_A(state);
    const double s_m = von_neumann(rho_a);
    double branch_term = 0.0;  // sum p S'_alpha - sum p log p
    const Matrix h = mode_hamiltonian(state.spec);
    const double e0 = (h * rho_a.mat).trace().real();
    double e_after = 0.0;
    for (int a = 0; a < branches.probs.size(); ++a) {
        const double p = branches.probs(a);
        if (branches.null_branch[static_cast<std::size_t>(a)]) continue;
        branch_term += p * von_neumann(branches.states[static_cast<std::size_t>(a)]);
        branch_term -= p * std::log(p);
        e_after += p * (h * branches.states[static_cast<std::size_t>(a)].mat).trace().real();
    }
    return {(s_m - branch_term) * bh.t_bh, std::abs(e0 - e_after)};
}

}  // namespace

FreeEnergyResult free_energy_change(const MeasurementOutcome& outcome,
                                    const HartleHawkingState& state,
                                    const BlackHoleParams& bh) {
    return free_energy_from_branches(outcome, state, bh);
}

FreeEnergyResult free_energy_change(const DropOutcome& outcome,
                                    const HartleHawkingState& state,
                                    const BlackHoleParams& bh) {
    return free_energy_from_branches(outcome.branches, state, bh);
}

Ensemble dropped_ensemble(const DropOutcome& outcome) {
    Ensemble e;
    if (outcome.p_drop <= 0.0) return e;
    std::vector<double> weights;
    for (int a : outcome.drop_set) {
        if (outcome.branches.null_branch[static_cast<std::size_t>(a)]) continue;
        weights.push_back(outcome.branches.probs(a) / outcome.p_drop);
        e.states.push_back(outcome.branches.states[static_cast<std::size_t>(a)]);
    }
    e.weights = Eigen::Map<RealVector>(weights.data(),
                                       static_cast<Eigen::Index>(weights.size()));
    return e;
}

ExperimentLedger ledger(const HartleHawkingState& state, const KrausSet& kraus,
                        const DropPlan& plan, const BlackHoleParams& bh,
                        const LedgerOptions& opts) {
    if (opts.slack < 0.0) throw std::invalid_argument("ledger: slack must be >= 0");
    if (plan.detector_radius && *plan.detector_radius <= 2.0 * bh.mass) {
        throw std::invalid_argument("ledger: detector radius inside horizon");
    }

    ExperimentLedger led;
    led.slack = opts.slack;

    const auto drop = drop_state(state, kraus, plan);
    const auto fe = free_energy_change(drop, state, bh);
    led.delta_f = fe.delta_f;
    led.energy_residual = fe.energy_residual;
    led.delta_w = fe.delta_f + opts.slack;
    led.delta_s_bh = led.delta_w / bh.t_bh;

    led.s_m = von_neumann(reduce_to_A(state));
    led.s_m_prime = matter_entropy_closed_form(drop);
    led.delta_s_t = led.delta_s_bh + led.s_m_prime - led.s_m;
    led.p_drop = drop.p_drop;

    const auto ensemble = dropped_ensemble(drop);
    if (ensemble.size() > 0) {
        led.holevo_hd = holevo(ensemble);
        if (opts.run_optimizer) {
            led.acc_info = optimize_accessible_info(ensemble, opts.optimizer).best;
        }
    }

    led.margin_gsl = led.delta_s_t;
    led.margin_holevo = led.delta_s_t - led.p_drop * led.holevo_hd;
    led.margin_info = led.delta_s_t - led.p_drop * led.acc_info;
    return led;
}

void WorkIntegralSpec::validate() const {
    if (path.size() < 2) throw std::invalid_argument("work integral: need at least two path samples");
    if (beta <= 0.0) throw std::invalid_argument("work integral: beta must be > 0");
    if (steps < 2) throw std::invalid_argument("work integral: steps must be >= 2");
    const Eigen::Index d = path.front().rows();
    for (const auto& h : path) {
        if (h.rows() != d || h.cols() != d) {
            throw std::invalid_argument("work integral: path dimensions differ");
        }
        if (max_abs(Matrix(h - h.adjoint())) > kHermitianTol) {
            throw std::invalid_argument("work integral: path sample not Hermitian");
        }
    }
}

namespace {

double log_partition(const Matrix& h, double beta) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()),
                                                 Eigen::EigenvaluesOnly);
    // log-sum-exp over -beta * eigenvalues.
    const RealVector& ev = solver.eigenvalues();
    const double shift = -beta * ev.minCoeff();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        sum += std::exp(-beta * ev(i) - shift);
    }
    return shift + std::log(sum);
}

// Tr[D exp(-beta H)] / Z.
double thermal_expectation(const Matrix& h, const Matrix& d, double beta) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
    const RealVector& ev = solver.eigenvalues();
    const Matrix dd = solver.eigenvectors().adjoint() * d * solver.eigenvectors();
    const double shift = -beta * ev.minCoeff();
    double z = 0.0;
    double num = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double w = std::exp(-beta * ev(i) - shift);
        z += w;
        num += dd(i, i).real() * w;
    }
    return num / z;
}

}  // namespace

WorkIntegralResult work_integral(const WorkIntegralSpec& spec) {
    spec.validate();
    const int segments = static_cast<int>(spec.path.size()) - 1;
    const int steps_per_segment = (spec.steps + segments - 1) / segments;

    double work = 0.0;
    for (int s = 0; s < segments; ++s) {
        const Matrix& h0 = spec.path[static_cast<std::size_t>(s)];
        const Matrix& h1 = spec.path[static_cast<std::size_t>(s) + 1];
        const Matrix slope = h1 - h0;
        const double dt = 1.0 / steps_per_segment;
        double acc = 0.0;
        for (int i = 0; i <= steps_per_segment; ++i) {
            const double t = i * dt;
            const Matrix h = h0 + t * slope;
            const double g = thermal_expectation(h, slope, spec.beta);
            if (!std::isfinite(g)) {
                throw std::runtime_error("work integral: non-finite integrand");
            }
            acc += (i == 0 || i == steps_per_segment) ? 0.5 * g : g;
        }
        work += acc * dt;
    }

    const double f0 = -log_partition(spec.path.front(), spec.beta) / spec.beta;
    const double f1 = -log_partition(spec.path.back(), spec.beta) / spec.beta;
    const double delta_f = f1 - f0;
    const double rel_error =
        std::abs(work - delta_f) / std::max(std::abs(delta_f), 1e-12);
    return {work, delta_f, rel_error};
}

}  // namespace bhsim
