#pragma once

#include "bhsim/info_entropy.hpp"
#include "bhsim/measurement_channel.hpp"
#include "bhsim/thermal_field.hpp"

#include <vector>

namespace bhsim {

struct BlackHoleParams {
    double mass;
    double t_bh;   // 1 / (8 pi M)
    double s_bh;   // 4 pi M^2

    static BlackHoleParams from_mass(double m);
};

/// T_BH = (8 pi M)^-1.
double hawking_temperature(double mass);

/// S_BH = 4 pi M^2 (= A/4).
double bh_entropy(double mass);

/// Schwarzschild lapse chi(r) = sqrt(1 - 2M/r); throws for r <= 2M.
double blueshift_factor(double r, double mass);

/// Blueshifted local temperature T_BH / chi(r).
double local_temperature(double r, double mass);

struct FreeEnergyResult {
    double delta_f;
    double energy_residual;  // |E_0 - sum p_alpha E_alpha|
};

/// Isothermal free-energy change
/// dF = [S_M - (sum p S'_alpha - sum p log p)] * T_BH.
FreeEnergyResult free_energy_change(const MeasurementOutcome& outcome,
                                    const HartleHawkingState& state,
                                    const BlackHoleParams& bh);
FreeEnergyResult free_energy_change(const DropOutcome& outcome,
                                    const HartleHawkingState& state,
                                    const BlackHoleParams& bh);

struct ExperimentLedger {
    double delta_w = 0.0;
    double delta_f = 0.0;
    double delta_s_bh = 0.0;
    double s_m = 0.0;
    double s_m_prime = 0.0;
    double delta_s_t = 0.0;
    double holevo_hd = 0.0;
    double acc_info = 0.0;
    double p_drop = 0.0;
    double energy_residual = 0.0;
    double slack = 0.0;
    double margin_gsl = 0.0;     // delta_s_t
    double margin_holevo = 0.0;  // delta_s_t - p_drop * holevo_hd
    double margin_info = 0.0;    // delta_s_t - p_drop * acc_info
};

/// Sub-ensemble {p_hat_alpha, rho'_alpha} over the dropped, non-null
/// branches; empty when nothing was dropped.
Ensemble dropped_ensemble(const DropOutcome& outcome);

struct LedgerOptions {
    double slack = 0.0;  // dissipation, dW = dF + slack
    OptimizerSettings optimizer;
    bool run_optimizer = true;
};

/// Full thermodynamic bookkeeping for one experiment.
ExperimentLedger ledger(const HartleHawkingState& state, const KrausSet& kraus,
                        const DropPlan& plan, const BlackHoleParams& bh,
                        const LedgerOptions& opts);

struct WorkIntegralSpec {
    // Hermitian samples along the path, linearly interpolated; at least two.
    std::vector<Matrix> path;
    double beta;
    int steps;

    void validate() const;
};

struct WorkIntegralResult {
    double work;
    double free_energy_delta;
    double rel_error;
};

/// Composite-trapezoid evaluation of the quasi-static work integral
/// Tr[H'(t) exp(-beta H(t))] / Z(t) against the endpoint free-energy
/// change F = -log(Z)/beta.
WorkIntegralResult work_integral(const WorkIntegralSpec& spec);

}  // namespace bhsim
