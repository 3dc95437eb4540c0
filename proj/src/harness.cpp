#include "bhsim/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bhsim {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& context) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw std::invalid_argument("config: unknown field '" + key + "' in " + context);
        }
    }
}

Matrix matrix_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("config: " + context + " must be a non-empty array of rows");
    }
    const auto rows = j.size();
    const auto cols = j.front().size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = j.at(r);
        if (!row.is_array() || row.size() != cols) {
            throw std::invalid_argument("config: ragged rows in " + context);
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& entry = row.at(c);
            if (!entry.is_array() || entry.size() != 2) {
                throw std::invalid_argument("config: entries of " + context +
                                            " must be [re, im] pairs");
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
    }
    return m;
}

OptimizerSettings optimizer_from_json(const json& j) {
    reject_unknown(j, {"restarts", "max_iters", "step_tol", "seed"}, "optimizer");
    OptimizerSettings s;
    if (j.contains("restarts")) s.restarts = j.at("restarts").get<int>();
    if (j.contains("max_iters")) s.max_iters = j.at("max_iters").get<int>();
    if (j.contains("step_tol")) s.step_tol = j.at("step_tol").get<double>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    s.validate();
    return s;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: root must be a JSON object");
    reject_unknown(j,
                   {"mass", "omega", "truncation", "kraus", "drop_set",
                    "inside_unitaries", "radius", "slack", "optimizer", "tail_mode"},
                   "root");
    for (const char* required : {"mass", "omega", "truncation", "kraus"}) {
        if (!j.contains(required)) {
            throw std::invalid_argument(std::string("config: missing field '") + required + "'");
        }
    }

    ExperimentConfig cfg;
    cfg.mass = j.at("mass").get<double>();
    cfg.omega = j.at("omega").get<double>();
    cfg.truncation = j.at("truncation").get<int>();
    if (cfg.mass <= 0.0) throw std::invalid_argument("config: mass must be > 0");
    if (cfg.omega <= 0.0) throw std::invalid_argument("config: omega must be > 0");
    if (cfg.truncation < 2) throw std::invalid_argument("config: truncation must be >= 2");

    const json& jk = j.at("kraus");
    if (jk.contains("random") == jk.contains("explicit")) {
        throw std::invalid_argument("config: kraus must have exactly one of 'random'/'explicit'");
    }
    reject_unknown(jk, {"random", "explicit"}, "kraus");
    if (jk.contains("random")) {
        const json& jr = jk.at("random");
        reject_unknown(jr, {"dim", "outcomes", "seed"}, "kraus.random");
        cfg.kraus.random = true;
        cfg.kraus.dim = jr.at("dim").get<int>();
        cfg.kraus.outcomes = jr.at("outcomes").get<int>();
        cfg.kraus.seed = jr.at("seed").get<std::uint64_t>();
        if (cfg.kraus.dim < 1 || cfg.kraus.outcomes < 1) {
            throw std::invalid_argument("config: kraus dim and outcomes must be >= 1");
        }
    } else {
        cfg.kraus.random = false;
        const json& je = jk.at("explicit");
        if (!je.is_array() || je.empty()) {
            throw std::invalid_argument("config: kraus.explicit must list operators");
        }
        for (std::size_t i = 0; i < je.size(); ++i) {
            cfg.kraus.explicit_ops.push_back(matrix_from_json(je.at(i), "kraus.explicit"));
        }
        cfg.kraus.dim = static_cast<int>(cfg.kraus.explicit_ops.front().rows());
        cfg.kraus.outcomes = static_cast<int>(cfg.kraus.explicit_ops.size());
    }
    if (cfg.kraus.dim != cfg.truncation) {
        std::ostringstream msg;
        msg << "config: kraus dim " << cfg.kraus.dim << " must equal truncation "
            << cfg.truncation;
        throw std::invalid_argument(msg.str());
    }

    if (j.contains("drop_set")) {
        for (const auto& idx : j.at("drop_set")) {
            const int a = idx.get<int>();
            if (a < 0 || a >= cfg.kraus.outcomes) {
                throw std::invalid_argument("config: drop_set index out of range");
            }
            cfg.drop_set.push_back(a);
        }
    }
    if (j.contains("inside_unitaries")) {
        const json& ju = j.at("inside_unitaries");
        if (ju.size() != cfg.drop_set.size()) {
            throw std::invalid_argument("config: inside_unitaries must align with drop_set");
        }
        for (std::size_t i = 0; i < ju.size(); ++i) {
            cfg.inside_unitaries.push_back(matrix_from_json(ju.at(i), "inside_unitaries"));
        }
    }
    if (j.contains("radius")) {
        cfg.radius = j.at("radius").get<double>();
        if (*cfg.radius <= 2.0 * cfg.mass) {
            throw std::invalid_argument("config: radius inside horizon");
        }
    }
    if (j.contains("slack")) {
        cfg.slack = j.at("slack").get<double>();
        if (cfg.slack < 0.0) throw std::invalid_argument("config: slack must be >= 0");
    }
    if (j.contains("optimizer")) cfg.optimizer = optimizer_from_json(j.at("optimizer"));
    if (j.contains("tail_mode")) {
        const auto mode = j.at("tail_mode").get<std::string>();
        if (mode == "faithful") {
            cfg.tail_mode = TailMode::faithful;
        } else if (mode == "relaxed") {
            cfg.tail_mode = TailMode::relaxed;
        } else {
            throw std::invalid_argument("config: tail_mode must be 'faithful' or 'relaxed'");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: parse error: ") + e.what());
    }
    return parse_config(j);
}

WorkIntegralSpec load_work_integral_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: parse error: ") + e.what());
    }
    reject_unknown(j, {"beta", "steps", "path"}, "work-integral root");
    WorkIntegralSpec spec;
    spec.beta = j.at("beta").get<double>();
    spec.steps = j.at("steps").get<int>();
    for (std::size_t i = 0; i < j.at("path").size(); ++i) {
        spec.path.push_back(matrix_from_json(j.at("path").at(i), "path"));
    }
    spec.validate();
    return spec;
}

ReportRow run_experiment(const ExperimentConfig& cfg, long instance_id) {
    const auto start = std::chrono::steady_clock::now();

    const auto bh = BlackHoleParams::from_mass(cfg.mass);
    const ThermalSpec spec{cfg.omega, bh.t_bh, cfg.truncation, cfg.tail_mode};
    const auto state = hh_state(spec);

    KrausSet kraus;
    if (cfg.kraus.random) {
        RandomStream rng(cfg.kraus.seed);
        kraus = random_kraus(cfg.kraus.dim, cfg.kraus.outcomes, rng);
    } else {
        kraus = validate_kraus(cfg.kraus.explicit_ops);
    }

    DropPlan plan;
    plan.drop_set = cfg.drop_set;
    plan.detector_radius = cfg.radius;
    for (const auto& u : cfg.inside_unitaries) {
        plan.inside_unitaries.push_back(UnitaryMatrix::validated(u));
    }

    LedgerOptions opts;
    opts.slack = cfg.slack;
    opts.optimizer = cfg.optimizer;
    const auto led = ledger(state, kraus, plan, bh, opts);

    ReportRow row;
    row.instance_id = instance_id;
    row.seed = cfg.kraus.random ? cfg.kraus.seed : 0;
    row.dim = cfg.truncation;
    row.n_kraus = cfg.kraus.outcomes;
    row.p_drop = led.p_drop;
    row.delta_w = led.delta_w;
    row.delta_f = led.delta_f;
    row.delta_s_bh = led.delta_s_bh;
    row.s_m = led.s_m;
    row.s_m_prime = led.s_m_prime;
    row.delta_s_t = led.delta_s_t;
    row.holevo_hd = led.holevo_hd;
    row.acc_info = led.acc_info;
    row.margin_gsl = led.margin_gsl;
    row.margin_holevo = led.margin_holevo;
    row.margin_info = led.margin_info;
    row.energy_residual = led.energy_residual;
    row.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return row;
}

ExperimentConfig sweep_instance_config(std::uint64_t master_seed, long instance_id,
                                       const SweepRanges& ranges) {
    RandomStream rng(master_seed + static_cast<std::uint64_t>(instance_id));
    ExperimentConfig cfg;
    cfg.mass = 1.0;
    const double t_bh = hawking_temperature(cfg.mass);
    cfg.omega = rng.uniform(0.5, 3.0) * t_bh;
    cfg.truncation = rng.uniform_int(2, ranges.dim_max);
    cfg.tail_mode = TailMode::relaxed;
    cfg.kraus.random = true;
    cfg.kraus.dim = cfg.truncation;
    cfg.kraus.outcomes = rng.uniform_int(1, ranges.kraus_max);
    cfg.kraus.seed = rng.next_seed();
    for (int a = 0; a < cfg.kraus.outcomes; ++a) {
        if (rng.uniform() < 0.5) cfg.drop_set.push_back(a);
    }
    cfg.slack = ranges.slack;
    cfg.optimizer = OptimizerSettings{4, 120, 1e-6, rng.next_seed()};
    return cfg;
}

std::vector<ReportRow> sweep(int n, const SweepRanges& ranges,
                             std::uint64_t master_seed) {
    if (n < 1) throw std::invalid_argument("sweep: instance count must be >= 1");
    if (ranges.dim_max < 2 || ranges.dim_max > 8) {
        throw std::invalid_argument("sweep: dim_max must be in [2, 8]");
    }
    if (ranges.kraus_max < 1 || ranges.kraus_max > 6) {
        throw std::invalid_argument("sweep: kraus_max must be in [1, 6]");
    }
    std::vector<ReportRow> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        rows.push_back(run_experiment(sweep_instance_config(master_seed, i, ranges), i));
    }
    return rows;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string to_csv(const std::vector<ReportRow>& rows, bool include_timings) {
    std::ostringstream out;
    out << "instance_id,seed,dim,n_kraus,p_drop,delta_w,delta_f,delta_s_bh,"
           "s_m,s_m_prime,delta_s_t,holevo_hd,acc_info,margin_gsl,"
           "margin_holevo,margin_info,energy_residual,wall_time_ms\n";
    for (const auto& r : rows) {
        out << r.instance_id << ',' << r.seed << ',' << r.dim << ',' << r.n_kraus
            << ',' << fmt(r.p_drop) << ',' << fmt(r.delta_w) << ',' << fmt(r.delta_f)
            << ',' << fmt(r.delta_s_bh) << ',' << fmt(r.s_m) << ',' << fmt(r.s_m_prime)
            << ',' << fmt(r.delta_s_t) << ',' << fmt(r.holevo_hd) << ','
            << fmt(r.acc_info) << ',' << fmt(r.margin_gsl) << ','
            << fmt(r.margin_holevo) << ',' << fmt(r.margin_info) << ','
            << fmt(r.energy_residual) << ','
            << fmt(include_timings ? r.wall_time_ms : 0.0) << '\n';
    }
    return out.str();
}

std::string sweep_summary(const std::vector<ReportRow>& rows) {
    double min_gsl = std::numeric_limits<double>::infinity();
    double min_holevo = min_gsl;
    double min_info = min_gsl;
    double max_residual = 0.0;
    double total_ms = 0.0;
    for (const auto& r : rows) {
        min_gsl = std::min(min_gsl, r.margin_gsl);
        min_holevo = std::min(min_holevo, r.margin_holevo);
        min_info = std::min(min_info, r.margin_info);
        max_residual = std::max(max_residual, r.energy_residual);
        total_ms += r.wall_time_ms;
    }
    std::ostringstream out;
    out << "instances=" << rows.size() << " min(margin_gsl)=" << min_gsl
        << " min(margin_holevo)=" << min_holevo << " min(margin_info)=" << min_info
        << " max(energy_residual)=" << max_residual << " total_ms=" << total_ms;
    return out.str();
}

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.pass; });
}

namespace {

struct Instance {
    HartleHawkingState state;
    KrausSet kraus;
    DropPlan plan;
    BlackHoleParams bh;
};

enum class DropMode { none, nonempty, any };

Instance random_instance(RandomStream& rng, int dim_max, int kraus_max,
                         DropMode mode) {
    const auto bh = BlackHoleParams::from_mass(1.0);
    const int dim = rng.uniform_int(2, dim_max);
    const int outcomes = rng.uniform_int(1, kraus_max);
    const ThermalSpec spec{rng.uniform(0.5, 3.0) * bh.t_bh, bh.t_bh, dim,
                           TailMode::relaxed};
    DropPlan plan;
    if (mode != DropMode::none) {
        for (int a = 0; a < outcomes; ++a) {
            if (rng.uniform() < 0.5) plan.drop_set.push_back(a);
        }
        if (mode == DropMode::nonempty && plan.drop_set.empty()) {
            plan.drop_set.push_back(rng.uniform_int(0, outcomes - 1));
        }
    }
    return {hh_state(spec), random_kraus(dim, outcomes, rng), std::move(plan), bh};
}

VerifyCheck check_bound(const std::string& name, double worst, double bound,
                        bool larger_is_better, const std::string& detail) {
    VerifyCheck c;
    c.name = name;
    c.margin = worst;
    c.pass = larger_is_better ? worst >= bound : worst <= bound;
    c.detail = detail;
    return c;
}

VerifyCheck suite_gsl(int n) {
    double worst = std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i) {
        RandomStream rng(0x6510ULL + static_cast<std::uint64_t>(i));
        auto inst = random_instance(rng, 6, 4, DropMode::none);
        LedgerOptions opts;
        opts.slack = (i % 2 == 0) ? 0.0 : 0.1 * inst.bh.t_bh;
        opts.run_optimizer = false;
        const auto led = ledger(inst.state, inst.kraus, inst.plan, inst.bh, opts);
        worst = std::min(worst, led.margin_gsl);
    }
    return check_bound("gsl", worst, -1e-9, true, "min delta_s_t with empty drop set");
}

VerifyCheck suite_holevo(int n) {
    double worst = std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i) {
        RandomStream rng(0x401e0ULL + static_cast<std::uint64_t>(i));
        auto inst = random_instance(rng, 6, 4, DropMode::nonempty);
        LedgerOptions opts;
        opts.slack = (i % 2 == 0) ? 0.0 : 0.1 * inst.bh.t_bh;
        opts.optimizer = OptimizerSettings{2, 60, 1e-6, rng.next_seed()};
        const auto led = ledger(inst.state, inst.kraus, inst.plan, inst.bh, opts);
        worst = std::min(worst, led.margin_holevo);

        const auto drop = drop_state(inst.state, inst.kraus, inst.plan);
        const auto ens = dropped_ensemble(drop);
        if (ens.size() == 0) continue;
        worst = std::min(worst, led.holevo_hd - led.acc_info);
        for (int m = 0; m < 100; ++m) {
            const auto meas = random_basis_measurement(ens.dim(), rng);
            const double info = mutual_info(ens, meas);
            worst = std::min(worst, led.holevo_hd - info);
            worst = std::min(worst, led.delta_s_t - led.p_drop * info);
        }
    }
    return check_bound("holevo", worst, -1e-9, true,
                       "min over margin_holevo, H'_D - I'_D and delta_s_t - p_D I'_D");
}

VerifyCheck suite_washout(int n) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        RandomStream rng(0x3a50ULL + static_cast<std::uint64_t>(i));
        auto inst = random_instance(rng, 6, 4, DropMode::nonempty);
        const auto plain = drop_state(inst.state, inst.kraus, inst.plan);
        DropPlan twisted = inst.plan;
        for (std::size_t k = 0; k < twisted.drop_set.size(); ++k) {
            twisted.inside_unitaries.push_back(haar_unitary(inst.state.level_count(), rng));
        }
        const auto stirred = drop_state(inst.state, inst.kraus, twisted);
        worst = std::max(worst, max_abs(Matrix(plain.joint.mat - stirred.joint.mat)));
    }
    return check_bound("washout", worst, 1e-12, false,
                       "max |sigma'(V)-sigma'(1)| entrywise");
}

VerifyCheck suite_matter_entropy_identity(int n) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        RandomStream rng(0xe013ULL + static_cast<std::uint64_t>(i));
        auto inst = random_instance(rng, 6, 4, DropMode::any);
        const auto drop = drop_state(inst.state, inst.kraus, inst.plan);
        const double closed = matter_entropy_closed_form(drop);
        const double direct = von_neumann(drop.joint);
        worst = std::max(worst, std::abs(closed - direct));
    }
    return check_bound("matter-entropy", worst, 1e-9, false,
                       "max |closed-form S'_M - S(sigma'_{A Phi})|");
}

VerifyCheck suite_dilation(int n) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        RandomStream rng(0xd17aULL + static_cast<std::uint64_t>(i));
        const int d = rng.uniform_int(2, 6);
        const int K = rng.uniform_int(1, 4);
        const auto kraus = random_kraus(d, K, rng);
        const auto dil = dilate(kraus);
        const Matrix& u = dil.unitary.matrix();
        worst = std::max(worst, max_abs(Matrix(u.adjoint() * u -
                                               Matrix::Identity(u.rows(), u.cols()))));
        for (int a = 0; a < K; ++a) {
            worst = std::max(worst, max_abs(Matrix(extract_kraus(dil, a) -
                                                   kraus.operators[static_cast<std::size_t>(a)])));
        }
    }
    return check_bound("dilation", worst, 1e-12, false,
                       "max of unitarity and extraction residuals");
}

std::vector<VerifyCheck> suite_saturation(int n) {
    std::vector<VerifyCheck> checks;
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        RandomStream rng(0x5a70ULL + static_cast<std::uint64_t>(i));
        auto inst = random_instance(rng, 6, 4, DropMode::any);
        LedgerOptions opts;
        opts.run_optimizer = false;
        const auto led = ledger(inst.state, inst.kraus, inst.plan, inst.bh, opts);
        worst = std::max(worst, std::abs(led.margin_holevo));
    }
    checks.push_back(check_bound("saturation-quasistatic", worst, 1e-9, false,
                                 "max |delta_s_t - p_D H'_D| at slack 0"));

    // Doubly saturated case: eigenbasis projective measurement.
    double worst_opt = 0.0;
    double worst_eig = 0.0;
    const int commuting_n = std::max(5, n / 10);
    for (long i = 0; i < commuting_n; ++i) {
        RandomStream rng(0x2e19ULL + static_cast<std::uint64_t>(i));
        const auto bh = BlackHoleParams::from_mass(1.0);
        const int dim = rng.uniform_int(2, 6);
        const ThermalSpec spec{rng.uniform(0.5, 3.0) * bh.t_bh, bh.t_bh, dim,
                               TailMode::relaxed};
        const auto state = hh_state(spec);
        const auto kraus = eigenbasis_projective_kraus(dim);
        DropPlan plan;
        for (int a = 0; a < dim; ++a) {
            if (rng.uniform() < 0.5) plan.drop_set.push_back(a);
        }
        if (plan.drop_set.empty()) plan.drop_set.push_back(rng.uniform_int(0, dim - 1));

        const auto drop = drop_state(state, kraus, plan);
        const auto ens = dropped_ensemble(drop);
        if (ens.size() == 0) continue;
        const double hd = holevo(ens);
        const double stored = shannon(ens.weights);
        worst_eig = std::max(worst_eig, std::abs(hd - stored));
        const double via_basis = mutual_info(ens, common_eigenbasis_measurement(ens));
        worst_eig = std::max(worst_eig, std::abs(via_basis - hd));
        const auto opt = optimize_accessible_info(
            ens, OptimizerSettings{4, 200, 1e-8, rng.next_seed()});
        worst_opt = std::max(worst_opt, std::abs(opt.best - hd));
    }
    checks.push_back(check_bound("saturation-commuting-eigenbasis", worst_eig, 1e-6,
                                 false,
                                 "max |I'_D(common basis) - H'_D| and |H'_D - shannon|"));
    checks.push_back(check_bound("saturation-commuting-optimizer", worst_opt, 1e-4,
                                 false, "max |optimizer - H'_D| on commuting instances"));
    return checks;
}

VerifyCheck suite_dataproc(int n) {
    double worst = std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i) {
        RandomStream rng(0xda7aULL + static_cast<std::uint64_t>(i));
        const int d = rng.uniform_int(2, 4);
        const int members = rng.uniform_int(2, 4);
        Ensemble e;
        RealVector w(members);
        for (int a = 0; a < members; ++a) {
            w(a) = rng.uniform(0.1, 1.0);
            e.states.push_back(random_density(d, rng));
        }
        e.weights = w / w.sum();

        const auto channel = random_kraus(d, rng.uniform_int(1, 3), rng);
        Ensemble mapped;
        mapped.weights = e.weights;
        for (const auto& rho : e.states) {
            Matrix out = Matrix::Zero(d, d);
            for (const auto& a : channel.operators) out += a * rho.mat * a.adjoint();
            mapped.states.push_back(validate_density(out));
        }
        worst = std::min(worst, holevo(e) - holevo(mapped));
    }
    return check_bound("dataproc", worst, -1e-9, true,
                       "min holevo(e) - holevo(channel(e))");
}

std::vector<VerifyCheck> suite_workintegral() {
    std::vector<VerifyCheck> checks;

    // Qubit path diag(0, 1+t) at beta = 1: closed-form free energy.
    WorkIntegralSpec qubit;
    qubit.beta = 1.0;
    qubit.steps = 10000;
    Matrix h0 = Matrix::Zero(2, 2);
    h0(1, 1) = 1.0;
    Matrix h1 = Matrix::Zero(2, 2);
    h1(1, 1) = 2.0;
    qubit.path = {h0, h1};
    const auto res = work_integral(qubit);
    const double exact = std::log(1.0 + std::exp(-1.0)) - std::log(1.0 + std::exp(-2.0));
    const double dev = std::max(std::abs(res.work - exact),
                                std::abs(res.free_energy_delta - exact));
    checks.push_back(check_bound("workintegral-qubit", dev, 1e-6, false,
                                 "qubit closed-form deviation at 1e4 steps"));

    // Second-order convergence under step halving on smooth random paths.
    double worst_order = std::numeric_limits<double>::infinity();
    for (long i = 0; i < 5; ++i) {
        RandomStream rng(0x304dULL + static_cast<std::uint64_t>(i));
        const int d = 4;
        Matrix g0(d, d), g1(d, d);
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                g0(r, c) = rng.complex_gaussian();
                g1(r, c) = rng.complex_gaussian();
            }
        }
        WorkIntegralSpec spec;
        spec.beta = 1.0;
        spec.path = {0.5 * (g0 + g0.adjoint()), 0.5 * (g1 + g1.adjoint())};
        spec.steps = 100;
        const auto coarse = work_integral(spec);
        spec.steps = 200;
        const auto fine = work_integral(spec);
        const double e1 = std::abs(coarse.work - coarse.free_energy_delta);
        const double e2 = std::abs(fine.work - fine.free_energy_delta);
        if (e2 > 0.0) worst_order = std::min(worst_order, std::log2(e1 / e2));
    }
    checks.push_back(check_bound("workintegral-order", worst_order, 1.9, true,
                                 "min observed trapezoid convergence order"));
    return checks;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "gsl",        "holevo",   "washout", "matter-entropy",
        "dilation",   "saturation", "dataproc", "workintegral"};
    return names;
}

VerifyReport verify(const std::string& suite, int instances) {
    const bool all = suite == "all";
    if (!all && std::find(verify_suite_names().begin(), verify_suite_names().end(),
                          suite) == verify_suite_names().end()) {
        throw std::invalid_argument("verify: unknown suite '" + suite + "'");
    }
    VerifyReport report;
    const auto want = [&](const char* name) { return all || suite == name; };
    if (want("gsl")) report.checks.push_back(suite_gsl(instances > 0 ? instances : 500));
    if (want("holevo")) report.checks.push_back(suite_holevo(instances > 0 ? instances : 500));
    if (want("washout")) report.checks.push_back(suite_washout(instances > 0 ? instances : 100));
    if (want("matter-entropy")) {
        report.checks.push_back(suite_matter_entropy_identity(instances > 0 ? instances : 500));
    }
    if (want("dilation")) report.checks.push_back(suite_dilation(instances > 0 ? instances : 100));
    if (want("saturation")) {
        for (auto& c : suite_saturation(instances > 0 ? instances : 200)) {
            report.checks.push_back(std::move(c));
        }
    }
    if (want("dataproc")) report.checks.push_back(suite_dataproc(instances > 0 ? instances : 200));
    if (want("workintegral")) {
        for (auto& c : suite_workintegral()) report.checks.push_back(std::move(c));
    }
    return report;
}

}  // namespace bhsim
